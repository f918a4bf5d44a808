#include "cox/coxmatrix.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace cox {

GeneratorSet::GeneratorSet(std::vector<int> members)
    : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()),
                 members_.end());
}

GeneratorSet GeneratorSet::full(int rank) {
  std::vector<int> all(rank);
  std::iota(all.begin(), all.end(), 0);
  return GeneratorSet(std::move(all));
}

bool GeneratorSet::contains(int s) const {
  return std::binary_search(members_.begin(), members_.end(), s);
}

bool GeneratorSet::subset_of(const GeneratorSet& o) const {
  return std::includes(o.members_.begin(), o.members_.end(), members_.begin(),
                       members_.end());
}

GeneratorSet GeneratorSet::unite(const GeneratorSet& o) const {
  std::vector<int> out;
  std::set_union(members_.begin(), members_.end(), o.members_.begin(),
                 o.members_.end(), std::back_inserter(out));
  return GeneratorSet(std::move(out));
}

GeneratorSet GeneratorSet::intersect(const GeneratorSet& o) const {
  std::vector<int> out;
  std::set_intersection(members_.begin(), members_.end(), o.members_.begin(),
                        o.members_.end(), std::back_inserter(out));
  return GeneratorSet(std::move(out));
}

CoxeterMatrix::CoxeterMatrix(std::vector<std::string> labels,
                             std::vector<std::vector<int>> m)
    : labels_(std::move(labels)), m_(std::move(m)) {
  const int n = rank();
  if (n == 0) throw std::invalid_argument("empty Coxeter matrix");
  if (static_cast<int>(m_.size()) != n)
    throw std::invalid_argument("matrix size does not match label count");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(m_[i].size()) != n)
      throw std::invalid_argument("matrix is not square");
    if (m_[i][i] != 1) throw std::invalid_argument("m(s,s) must be 1");
    for (int j = 0; j < n; ++j) {
      if (m_[i][j] != m_[j][i])
        throw std::invalid_argument("matrix is not symmetric");
      if (i != j && m_[i][j] != kInfinity && m_[i][j] < 2)
        throw std::invalid_argument("off-diagonal entries must be >= 2");
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (labels_[i] == labels_[j])
        throw std::invalid_argument("duplicate generator label");
}

CoxeterMatrix CoxeterMatrix::uniform(int rank, int off) {
  std::vector<std::string> labels(rank);
  for (int i = 0; i < rank; ++i) labels[i] = std::string(1, char('a' + i));
  std::vector<std::vector<int>> m(rank, std::vector<int>(rank, off));
  for (int i = 0; i < rank; ++i) m[i][i] = 1;
  return CoxeterMatrix(std::move(labels), std::move(m));
}

CoxeterMatrix CoxeterMatrix::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.contains("rank") || !j.contains("m"))
    throw std::invalid_argument("system JSON needs \"rank\" and \"m\"");
  int n = j["rank"].get<int>();
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    labels = j["labels"].get<std::vector<std::string>>();
  } else {
    for (int i = 0; i < n; ++i) labels.push_back(std::string(1, 'a' + i));
  }
  if (static_cast<int>(labels.size()) != n)
    throw std::invalid_argument("label count does not match rank");
  auto m = j["m"].get<std::vector<std::vector<int>>>();
  return CoxeterMatrix(std::move(labels), std::move(m));
}

CoxeterMatrix CoxeterMatrix::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open system file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json(ss.str());
}

std::string CoxeterMatrix::to_json() const {
  nlohmann::ordered_json j;
  j["rank"] = rank();
  j["labels"] = labels_;
  j["m"] = m_;
  return j.dump();
}

std::optional<int> CoxeterMatrix::index_of(const std::string& label) const {
  for (int i = 0; i < rank(); ++i)
    if (labels_[i] == label) return i;
  return std::nullopt;
}

int CoxeterMatrix::field_level() const {
  long l = 1;
  for (int i = 0; i < rank(); ++i)
    for (int j = i + 1; j < rank(); ++j)
      if (m_[i][j] != kInfinity) l = std::lcm(l, static_cast<long>(m_[i][j]));
  if (l > 1000000)
    throw BudgetError("coefficient field level too large: " +
                      std::to_string(l));
  return static_cast<int>(l);
}

std::vector<int> parse_word(const CoxeterMatrix& M, const std::string& text) {
  std::vector<int> out;
  std::string tok;
  auto flush = [&] {
    if (tok.empty()) return;
    auto idx = M.index_of(tok);
    if (!idx) throw std::invalid_argument("unknown generator: " + tok);
    out.push_back(*idx);
    tok.clear();
  };
  for (char c : text) {
    if (c == ' ' || c == ',' || c == '\t' || c == '.')
      flush();
    else
      tok.push_back(c);
  }
  flush();
  return out;
}

std::string format_word(const CoxeterMatrix& M, const std::vector<int>& word) {
  std::string out;
  for (size_t i = 0; i < word.size(); ++i) {
    if (i) out += ' ';
    out += M.label(word[i]);
  }
  return out;
}

GeneratorSet parse_subset(const CoxeterMatrix& M, const std::string& text) {
  return GeneratorSet(parse_word(M, text));
}

}  // namespace cox

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cox/field.hpp"

namespace cox {

/// Matrix entry for m(s,t) = infinity. On the JSON wire format infinity is
/// encoded as 0 (0 is otherwise invalid).
inline constexpr int kInfinity = 0;

/// A subset of the generator set, kept sorted and duplicate-free.
class GeneratorSet {
 public:
  GeneratorSet() = default;
  explicit GeneratorSet(std::vector<int> members);

  static GeneratorSet full(int rank);

  bool contains(int s) const;
  bool subset_of(const GeneratorSet& o) const;
  GeneratorSet unite(const GeneratorSet& o) const;
  GeneratorSet intersect(const GeneratorSet& o) const;
  bool empty() const { return members_.empty(); }
  int size() const { return static_cast<int>(members_.size()); }
  const std::vector<int>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool operator==(const GeneratorSet& o) const = default;
  bool operator<(const GeneratorSet& o) const { return members_ < o.members_; }

 private:
  std::vector<int> members_;
};

/// The presentation data m(s,t) of a Coxeter system (W,S), together with
/// generator labels. Symmetric, m(s,s) = 1, off-diagonal entries >= 2 or
/// infinite.
class CoxeterMatrix {
 public:
  CoxeterMatrix(std::vector<std::string> labels,
                std::vector<std::vector<int>> m);

  /// Convenience: rank-r matrix with all off-diagonal entries `off`.
  static CoxeterMatrix uniform(int rank, int off);
  /// Parse {"rank": n, "labels": [...], "m": [[...]]}; 0 encodes infinity.
  static CoxeterMatrix from_json(const std::string& text);
  static CoxeterMatrix load(const std::string& path);
  std::string to_json() const;

  int rank() const { return static_cast<int>(labels_.size()); }
  int m(int s, int t) const { return m_[s][t]; }
  bool finite_bond(int s, int t) const { return m_[s][t] != kInfinity; }
  const std::string& label(int s) const { return labels_[s]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<int> index_of(const std::string& label) const;

  /// lcm of the finite off-diagonal entries (1 when there are none): the
  /// level of the coefficient field Q(2cos(pi/L)).
  int field_level() const;

  bool operator==(const CoxeterMatrix& o) const {
    return labels_ == o.labels_ && m_ == o.m_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<int>> m_;
};

/// Parse "s t u" or "s,t,u" into generator indices.
std::vector<int> parse_word(const CoxeterMatrix& M, const std::string& text);
std::string format_word(const CoxeterMatrix& M, const std::vector<int>& word);
GeneratorSet parse_subset(const CoxeterMatrix& M, const std::string& text);

}  // namespace cox

#include <algorithm>
#include <set>
#include <vector>

#include "cox/system.hpp"

namespace cox {

namespace {

// One round of braid-move closure. Returns the full closure of `start`, or,
// as soon as a word with an adjacent equal pair shows up, the word obtained
// by deleting that pair (signalled through `shortened`).
bool braid_closure(const CoxeterMatrix& M, const std::vector<int>& start,
                   std::set<std::vector<int>>& closure,
                   std::vector<int>& shortened, size_t cap) {
  closure.clear();
  std::vector<std::vector<int>> queue{start};
  closure.insert(start);
  while (!queue.empty()) {
    std::vector<int> w = std::move(queue.back());
    queue.pop_back();
    const int k = static_cast<int>(w.size());
    for (int i = 0; i + 1 < k; ++i) {
      if (w[i] == w[i + 1]) {
        shortened.assign(w.begin(), w.begin() + i);
        shortened.insert(shortened.end(), w.begin() + i + 2, w.end());
        return true;
      }
    }
    for (int i = 0; i + 1 < k; ++i) {
      int s = w[i], t = w[i + 1];
      if (s == t) continue;
      int m = M.m(s, t);
      if (m == kInfinity || i + m > k) continue;
      bool alternating = true;
      for (int j = 0; j < m; ++j)
        if (w[i + j] != (j % 2 == 0 ? s : t)) {
          alternating = false;
          break;
        }
      if (!alternating) continue;
      std::vector<int> v = w;
      for (int j = 0; j < m; ++j) v[i + j] = (j % 2 == 0 ? t : s);
      if (closure.insert(v).second) {
        if (closure.size() > cap)
          throw BudgetError("tits_normal_form: braid closure exceeds cap");
        queue.push_back(std::move(v));
      }
    }
  }
  return false;
}

}  // namespace

std::vector<int> tits_normal_form(const CoxeterMatrix& M, std::vector<int> word,
                                  size_t closure_cap) {
  for (int s : word)
    if (s < 0 || s >= M.rank())
      throw std::invalid_argument("generator index out of range");
  std::set<std::vector<int>> closure;
  std::vector<int> shortened;
  while (braid_closure(M, word, closure, shortened, closure_cap))
    word = shortened;
  // word is reduced: its braid closure is the set of all its reduced
  // expressions, so the ShortLex normal form is the smallest of them
  return *closure.begin();
}

}  // namespace cox

#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "cox/coxmatrix.hpp"
#include "cox/field.hpp"

namespace cox {

/// A group element, held as its ShortLex normal form. Immutable value type;
/// all arithmetic goes through the owning System.
class Element {
 public:
  Element() = default;

  const std::vector<int>& word() const { return w_; }
  int length() const { return static_cast<int>(w_.size()); }
  bool is_identity() const { return w_.empty(); }

  bool operator==(const Element& o) const = default;
  /// ShortLex order: by length, then lexicographically.
  bool operator<(const Element& o) const {
    if (w_.size() != o.w_.size()) return w_.size() < o.w_.size();
    return w_ < o.w_;
  }

  std::string str(const CoxeterMatrix& M) const { return format_word(M, w_); }

 private:
  friend class System;
  explicit Element(std::vector<int> w) : w_(std::move(w)) {}
  std::vector<int> w_;
};

struct ElementHash {
  size_t operator()(const Element& e) const {
    size_t h = 1469598103934665603ull;
    for (int s : e.word()) h = (h ^ static_cast<size_t>(s + 1)) * 1099511628211ull;
    return h;
  }
};

using ElementSet = std::unordered_set<Element, ElementHash>;

/// Exact coordinate vector of a root in the geometric representation.
using RootVec = std::vector<KNum>;

/// A Coxeter system with its geometric representation, minimal-root
/// reflection table and the word acceptor built on it. Immutable after
/// construction; all operations are const and safe to call concurrently.
class System {
 public:
  explicit System(CoxeterMatrix M, size_t minroot_cap = 20000);

  const CoxeterMatrix& matrix() const { return M_; }
  const Field& field() const { return *F_; }
  FieldPtr field_ptr() const { return F_; }
  int rank() const { return M_.rank(); }

  const KNum& gram(int s, int t) const { return gram_[s][t]; }

  // --- roots -------------------------------------------------------------
  RootVec simple_root(int s) const;
  RootVec zero_vec() const;
  /// Action of generator s: v - 2B(e_s, v) e_s.
  RootVec reflect(int s, RootVec v) const;
  RootVec act_letters(const std::vector<int>& w, RootVec v) const;
  RootVec act(const Element& w, RootVec v) const { return act_letters(w.word(), std::move(v)); }
  KNum bilinear(const RootVec& a, const RootVec& b) const;
  /// +1 if all coordinates >= 0 (a positive root), -1 if negative; a mixed
  /// sign pattern means the vector is not a root and raises ConsistencyError.
  int root_sign(const RootVec& v) const;
  std::string root_key(const RootVec& v) const;
  bool roots_equal(const RootVec& a, const RootVec& b) const;

  // --- word problem (automaton path) --------------------------------------
  bool reduced(const std::vector<int>& letters) const;
  Element normal_form(const std::vector<int>& letters) const;
  Element from_string(const std::string& text) const;
  Element multiply(const Element& a, const Element& b) const;
  Element multiply(const Element& a, int s) const;
  Element invert(const Element& a) const;
  /// u w u^{-1}
  Element conjugate(const Element& u, const Element& w) const;
  Element power(const Element& a, long n) const;

  std::vector<int> left_descents(const Element& a) const;
  std::vector<int> right_descents(const Element& a) const;
  GeneratorSet support(const Element& a) const;

  /// The reflections t with l(t w) < l(w); exactly l(w) of them.
  std::vector<Element> inversion_reflections(const Element& w) const;
  /// The positive roots sent negative by w^{-1} (same walls as above).
  std::vector<RootVec> inversion_roots(const Element& w) const;

  /// Reduced word of the reflection with the given positive root.
  Element reflection_of_root(const RootVec& alpha) const;

  // --- enumeration ---------------------------------------------------------
  /// All elements of length <= radius, ShortLex sorted. Cached.
  const std::vector<Element>& ball(int radius) const;
  /// Elements of the standard parabolic W_J of length <= radius (the whole
  /// of W_J if it is smaller). Throws BudgetError past `cap` elements.
  std::vector<Element> subgroup_ball(const GeneratorSet& J, int radius,
                                     size_t cap = 2000000) const;

  int minimal_root_count() const { return static_cast<int>(minroots_.size()); }
  const RootVec& minimal_root(int i) const { return minroots_[i]; }

 private:
  static constexpr int kNotMinimal = -2;
  static constexpr int kDescent = -1;

  // automaton state: bitset over minimal roots
  using State = std::vector<uint64_t>;
  State empty_state() const;
  bool state_test(const State& st, int bit) const;
  void state_set(State& st, int bit) const;
  /// One acceptor step; returns false when the word stops being reduced.
  bool step(State& st, int s) const;

  // exchange-condition root tracking (table fast path, exact fallback)
  struct Tracked {
    int idx;      // minimal-root index, or -1 when in exact mode
    RootVec vec;  // valid in exact mode
  };
  Tracked tracked_simple(int s) const;
  /// Applies letter t; returns true if the root just crossed (was e_t).
  bool tracked_apply(Tracked& tr, int t) const;

  std::vector<int> reduce_letters(const std::vector<int>& letters) const;
  std::vector<int> shortlex_letters(std::vector<int> red) const;

  void build_minimal_roots(size_t cap);

  CoxeterMatrix M_;
  FieldPtr F_;
  std::vector<std::vector<KNum>> gram_;      // B(e_s, e_t)
  std::vector<std::vector<KNum>> two_gram_;  // 2 B(e_s, e_t)

  std::vector<RootVec> minroots_;            // index < rank: simple root s
  std::vector<std::vector<int>> mrt_;        // mrt_[s][i]
  std::unordered_map<std::string, int> minroot_index_;
  int state_words_ = 0;

  mutable std::mutex ball_mutex_;
  // deque for reference stability: ball(r) references stay valid as the
  // cache grows
  mutable std::deque<std::vector<Element>> balls_;
};

using SystemPtr = std::shared_ptr<const System>;

/// Naive Tits rewriting: braid-move closure with ss-deletion, returning the
/// ShortLex-least reduced word. Independent correctness oracle for the
/// automaton path.
std::vector<int> tits_normal_form(const CoxeterMatrix& M, std::vector<int> word,
                                  size_t closure_cap = 4000000);

}  // namespace cox

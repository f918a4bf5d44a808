#include "cox/system.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace cox {

System::System(CoxeterMatrix M, size_t minroot_cap)
    : M_(std::move(M)), F_(std::make_shared<Field>(M_.field_level())) {
  const int n = rank();
  gram_.assign(n, std::vector<KNum>(n, F_->zero()));
  two_gram_.assign(n, std::vector<KNum>(n, F_->zero()));
  const mpq_class minus_half(-1, 2);
  for (int s = 0; s < n; ++s) {
    for (int t = 0; t < n; ++t) {
      if (s == t) {
        gram_[s][t] = F_->one();
        two_gram_[s][t] = F_->integer(2);
      } else if (M_.m(s, t) == kInfinity) {
        gram_[s][t] = F_->integer(-1);
        two_gram_[s][t] = F_->integer(-2);
      } else if (M_.m(s, t) == 2) {
        // zero entries already in place
      } else {
        KNum tc = F_->two_cos_pi_over(M_.m(s, t));
        gram_[s][t] = tc.scaled(minus_half);
        two_gram_[s][t] = -tc;
      }
    }
  }
  build_minimal_roots(minroot_cap);
}

// ---------------------------------------------------------------------------
// Roots

RootVec System::zero_vec() const { return RootVec(rank(), F_->zero()); }

RootVec System::simple_root(int s) const {
  RootVec v = zero_vec();
  v[s] = F_->one();
  return v;
}

RootVec System::reflect(int s, RootVec v) const {
  // v - 2B(e_s, v) e_s
  KNum c = F_->zero();
  for (int t = 0; t < rank(); ++t) {
    if (v[t].is_zero()) continue;
    c += two_gram_[s][t] * v[t];
  }
  v[s] -= c;
  return v;
}

RootVec System::act_letters(const std::vector<int>& w, RootVec v) const {
  for (auto it = w.rbegin(); it != w.rend(); ++it) v = reflect(*it, std::move(v));
  return v;
}

KNum System::bilinear(const RootVec& a, const RootVec& b) const {
  KNum r = F_->zero();
  for (int s = 0; s < rank(); ++s) {
    if (a[s].is_zero()) continue;
    for (int t = 0; t < rank(); ++t) {
      if (b[t].is_zero()) continue;
      r += a[s] * gram_[s][t] * b[t];
    }
  }
  return r;
}

int System::root_sign(const RootVec& v) const {
  int seen = 0;
  for (const auto& c : v) {
    int s = c.sign();
    if (s == 0) continue;
    if (seen == 0)
      seen = s;
    else if (seen != s)
      throw ConsistencyError("root vector with mixed coordinate signs");
  }
  if (seen == 0) throw ConsistencyError("zero vector is not a root");
  return seen;
}

std::string System::root_key(const RootVec& v) const {
  std::ostringstream os;
  for (const auto& c : v) os << c.str() << ";";
  return os.str();
}

bool System::roots_equal(const RootVec& a, const RootVec& b) const {
  for (int s = 0; s < rank(); ++s)
    if (a[s] != b[s]) return false;
  return true;
}

Element System::reflection_of_root(const RootVec& alpha) const {
  // peel descents: r_alpha = s r_{s(alpha)} s with B(e_s, alpha) > 0
  std::vector<int> left;
  RootVec v = alpha;
  while (true) {
    int simple = -1;
    for (int s = 0; s < rank(); ++s) {
      bool is_simple = true;
      for (int t = 0; t < rank(); ++t) {
        if (t == s ? v[t] != F_->one() : !v[t].is_zero()) {
          is_simple = false;
          break;
        }
      }
      if (is_simple) {
        simple = s;
        break;
      }
    }
    if (simple >= 0) {
      std::vector<int> word = left;
      word.push_back(simple);
      for (auto it = left.rbegin(); it != left.rend(); ++it) word.push_back(*it);
      return normal_form(word);
    }
    int s = -1;
    for (int t = 0; t < rank() && s < 0; ++t) {
      KNum x = F_->zero();
      for (int u = 0; u < rank(); ++u)
        if (!v[u].is_zero()) x += gram_[t][u] * v[u];
      if (x.sign() > 0) s = t;
    }
    if (s < 0) throw ConsistencyError("positive root without a descent");
    left.push_back(s);
    v = reflect(s, std::move(v));
    if (static_cast<int>(left.size()) > 4 * rank() * 4096)
      throw BudgetError("reflection_of_root: depth runaway");
  }
}

// ---------------------------------------------------------------------------
// Minimal roots

void System::build_minimal_roots(size_t cap) {
  const int n = rank();
  for (int s = 0; s < n; ++s) {
    minroots_.push_back(simple_root(s));
    minroot_index_[root_key(minroots_.back())] = s;
  }
  mrt_.assign(n, {});
  size_t next = 0;
  while (next < minroots_.size()) {
    if (minroots_.size() > cap)
      throw BudgetError("minimal root table exceeds cap");
    const RootVec alpha = minroots_[next];  // copy: the table may grow below
    for (int s = 0; s < n; ++s) {
      int entry = kNotMinimal;
      if (next == static_cast<size_t>(s)) {
        entry = kDescent;
      } else {
        KNum x = F_->zero();
        for (int t = 0; t < n; ++t)
          if (!alpha[t].is_zero()) x += gram_[s][t] * alpha[t];
        int sx = x.sign();
        if (sx == 0) {
          entry = static_cast<int>(next);
        } else if (sx < 0 && (x + F_->one()).sign() <= 0) {
          entry = kNotMinimal;
        } else {
          RootVec img = reflect(s, alpha);
          std::string key = root_key(img);
          auto it = minroot_index_.find(key);
          if (it != minroot_index_.end()) {
            entry = it->second;
          } else if (sx > 0) {
            throw ConsistencyError(
                "depth-decreasing image of a minimal root missing");
          } else {
            entry = static_cast<int>(minroots_.size());
            minroots_.push_back(img);
            minroot_index_[key] = entry;
          }
        }
      }
      mrt_[s].push_back(entry);
    }
    ++next;
  }
  state_words_ = static_cast<int>((minroots_.size() + 63) / 64);
}

// ---------------------------------------------------------------------------
// Acceptor

System::State System::empty_state() const { return State(state_words_, 0); }

bool System::state_test(const State& st, int bit) const {
  return (st[bit >> 6] >> (bit & 63)) & 1;
}

void System::state_set(State& st, int bit) const {
  st[bit >> 6] |= uint64_t(1) << (bit & 63);
}

bool System::step(State& st, int s) const {
  if (state_test(st, s)) return false;
  State out(state_words_, 0);
  state_set(out, s);
  const auto& row = mrt_[s];
  for (int w = 0; w < state_words_; ++w) {
    uint64_t bits = st[w];
    while (bits) {
      int b = (w << 6) + __builtin_ctzll(bits);
      bits &= bits - 1;
      int img = row[b];
      if (img >= 0) state_set(out, img);
    }
  }
  st = std::move(out);
  return true;
}

bool System::reduced(const std::vector<int>& letters) const {
  State st = empty_state();
  for (int s : letters)
    if (!step(st, s)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Exchange-condition tracking

System::Tracked System::tracked_simple(int s) const { return {s, {}}; }

bool System::tracked_apply(Tracked& tr, int t) const {
  if (tr.idx >= 0) {
    if (tr.idx == t) return true;  // root is e_t: crossing
    int img = mrt_[t][tr.idx];
    if (img == kNotMinimal) {
      tr.vec = reflect(t, minroots_[tr.idx]);
      tr.idx = -1;
    } else {
      tr.idx = img;
    }
    return false;
  }
  // exact mode: check the root equals e_t, else reflect
  bool is_et = true;
  for (int u = 0; u < rank(); ++u) {
    if (u == t ? tr.vec[u] != F_->one() : !tr.vec[u].is_zero()) {
      is_et = false;
      break;
    }
  }
  if (is_et) return true;
  tr.vec = reflect(t, std::move(tr.vec));
  return false;
}

// ---------------------------------------------------------------------------
// Normal forms

std::vector<int> System::reduce_letters(const std::vector<int>& letters) const {
  std::vector<int> red;
  red.reserve(letters.size());
  State st = empty_state();
  for (int s : letters) {
    if (s < 0 || s >= rank())
      throw std::invalid_argument("generator index out of range");
    State trial = st;
    if (step(trial, s)) {
      red.push_back(s);
      st = std::move(trial);
      continue;
    }
    // exchange: red s = red with one letter deleted; track alpha_s from the
    // right end of red
    Tracked tr = tracked_simple(s);
    int del = -1;
    for (int i = static_cast<int>(red.size()) - 1; i >= 0; --i) {
      if (tracked_apply(tr, red[i])) {
        del = i;
        break;
      }
    }
    if (del < 0) throw ConsistencyError("exchange condition found no crossing");
    red.erase(red.begin() + del);
    st = empty_state();
    for (int t : red) step(st, t);
  }
  return red;
}

std::vector<int> System::shortlex_letters(std::vector<int> red) const {
  std::vector<int> out;
  out.reserve(red.size());
  while (!red.empty()) {
    // left descents of the remaining element: acceptor state of the reversed
    // word; its simple-root bits are the descents
    State st = empty_state();
    for (auto it = red.rbegin(); it != red.rend(); ++it) step(st, *it);
    int s = -1;
    for (int t = 0; t < rank(); ++t)
      if (state_test(st, t)) {
        s = t;
        break;
    }
    if (s < 0) throw ConsistencyError("nonempty reduced word without descent");
    if (s == red.front()) {
      out.push_back(s);
      red.erase(red.begin());
      continue;
    }
    // left exchange: s red = red with position i deleted, where the tracked
    // root gamma = (red_1 ... red_i)^{-1} alpha_s first turns negative
    Tracked tr = tracked_simple(s);
    int del = -1;
    for (size_t i = 0; i < red.size(); ++i) {
      if (tracked_apply(tr, red[i])) {
        del = static_cast<int>(i);
        break;
      }
    }
    if (del < 0) throw ConsistencyError("left exchange found no crossing");
    out.push_back(s);
    red.erase(red.begin() + del);
  }
  return out;
}

Element System::normal_form(const std::vector<int>& letters) const {
  return Element(shortlex_letters(reduce_letters(letters)));
}

Element System::from_string(const std::string& text) const {
  return normal_form(parse_word(M_, text));
}

Element System::multiply(const Element& a, const Element& b) const {
  std::vector<int> cat = a.word();
  cat.insert(cat.end(), b.word().begin(), b.word().end());
  return normal_form(cat);
}

Element System::multiply(const Element& a, int s) const {
  std::vector<int> cat = a.word();
  cat.push_back(s);
  return normal_form(cat);
}

Element System::invert(const Element& a) const {
  std::vector<int> rev(a.word().rbegin(), a.word().rend());
  return Element(shortlex_letters(std::move(rev)));
}

Element System::conjugate(const Element& u, const Element& w) const {
  std::vector<int> cat = u.word();
  cat.insert(cat.end(), w.word().begin(), w.word().end());
  std::vector<int> ui(u.word().rbegin(), u.word().rend());
  cat.insert(cat.end(), ui.begin(), ui.end());
  return normal_form(cat);
}

Element System::power(const Element& a, long n) const {
  Element base = n < 0 ? invert(a) : a;
  long k = n < 0 ? -n : n;
  Element acc;
  // square-and-multiply keeps the intermediate words short enough
  while (k > 0) {
    if (k & 1) acc = multiply(acc, base);
    k >>= 1;
    if (k) base = multiply(base, base);
  }
  return acc;
}

std::vector<int> System::left_descents(const Element& a) const {
  State st = empty_state();
  for (auto it = a.word().rbegin(); it != a.word().rend(); ++it) step(st, *it);
  std::vector<int> out;
  for (int t = 0; t < rank(); ++t)
    if (state_test(st, t)) out.push_back(t);
  return out;
}

std::vector<int> System::right_descents(const Element& a) const {
  State st = empty_state();
  for (int s : a.word()) step(st, s);
  std::vector<int> out;
  for (int t = 0; t < rank(); ++t)
    if (state_test(st, t)) out.push_back(t);
  return out;
}

GeneratorSet System::support(const Element& a) const {
  return GeneratorSet(a.word());
}

std::vector<Element> System::inversion_reflections(const Element& w) const {
  std::vector<Element> out;
  out.reserve(w.length());
  for (int i = 0; i < w.length(); ++i) {
    std::vector<int> word(w.word().begin(), w.word().begin() + i);
    word.push_back(w.word()[i]);
    for (int j = i - 1; j >= 0; --j) word.push_back(w.word()[j]);
    out.push_back(normal_form(word));
  }
  return out;
}

std::vector<RootVec> System::inversion_roots(const Element& w) const {
  std::vector<RootVec> out;
  out.reserve(w.length());
  for (int i = 0; i < w.length(); ++i) {
    RootVec v = simple_root(w.word()[i]);
    for (int j = i - 1; j >= 0; --j) v = reflect(w.word()[j], std::move(v));
    out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

const std::vector<Element>& System::ball(int radius) const {
  std::lock_guard<std::mutex> lock(ball_mutex_);
  if (static_cast<int>(balls_.size()) > radius && !balls_[radius].empty())
    return balls_[radius];
  if (balls_.empty()) balls_.push_back({Element()});
  while (static_cast<int>(balls_.size()) <= radius) {
    const auto& prev = balls_.back();
    int len = static_cast<int>(balls_.size()) - 1;
    ElementSet seen(prev.begin(), prev.end());
    std::vector<Element> next = prev;
    for (const auto& x : prev) {
      if (x.length() != len) continue;
      for (int s = 0; s < rank(); ++s) {
        std::vector<int> word = x.word();
        word.push_back(s);
        if (!reduced(word)) continue;
        Element y(shortlex_letters(std::move(word)));
        if (seen.insert(y).second) next.push_back(y);
      }
    }
    std::sort(next.begin(), next.end());
    balls_.push_back(std::move(next));
  }
  return balls_[radius];
}

std::vector<Element> System::subgroup_ball(const GeneratorSet& J, int radius,
                                           size_t cap) const {
  std::vector<Element> out{Element()};
  ElementSet seen(out.begin(), out.end());
  size_t frontier_begin = 0;
  for (int len = 0; len < radius; ++len) {
    size_t frontier_end = out.size();
    bool grew = false;
    for (size_t i = frontier_begin; i < frontier_end; ++i) {
      for (int s : J) {
        std::vector<int> word = out[i].word();
        word.push_back(s);
        if (!reduced(word)) continue;
        Element y(shortlex_letters(std::move(word)));
        if (seen.insert(y).second) {
          out.push_back(y);
          grew = true;
          if (out.size() > cap) throw BudgetError("subgroup_ball exceeds cap");
        }
      }
    }
    frontier_begin = frontier_end;
    if (!grew) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace cox

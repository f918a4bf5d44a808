#include "cox/field.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

namespace cox {

namespace {

void trim(ZPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree_of(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

// Exact division of integer polynomials; divisor monic. Remainder must vanish.
ZPoly exact_div(ZPoly num, const ZPoly& den) {
  if (den.empty() || den.back() != 1)
    throw std::invalid_argument("exact_div: divisor must be monic");
  ZPoly quot(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, 0);
  for (int k = degree_of(num) - degree_of(den); k >= 0; --k) {
    mpz_class c = num[k + degree_of(den)];
    quot[k] = c;
    if (c == 0) continue;
    for (size_t i = 0; i < den.size(); ++i) num[k + i] -= c * den[i];
  }
  trim(num);
  if (!num.empty()) throw ConsistencyError("exact_div: nonzero remainder");
  return quot;
}

}  // namespace

ZPoly cyclotomic_poly(int n) {
  static std::mutex mu;
  static std::map<int, ZPoly> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  // x^n - 1 divided by the product of Phi_d over proper divisors d of n,
  // computed recursively (the recursion bottoms out at Phi_1 = x - 1).
  std::function<ZPoly(int)> compute = [&](int m) -> ZPoly {
    auto found = cache.find(m);
    if (found != cache.end()) return found->second;
    ZPoly p(m + 1, 0);
    p[0] = -1;
    p[m] = 1;
    for (int d = 1; d < m; ++d) {
      if (m % d != 0) continue;
      p = exact_div(std::move(p), compute(d));
    }
    cache[m] = p;
    return p;
  };
  return compute(n);
}

ZPoly dickson_poly(int k) {
  ZPoly prev = {2};     // D_0
  if (k == 0) return prev;
  ZPoly cur = {0, 1};   // D_1 = x
  for (int i = 2; i <= k; ++i) {
    ZPoly next(i + 1, 0);
    for (size_t j = 0; j < cur.size(); ++j) next[j + 1] += cur[j];
    for (size_t j = 0; j < prev.size(); ++j) next[j] -= prev[j];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

ZPoly real_cyclotomic_minpoly(int n) {
  if (n == 1) return {-2, 1};  // 2cos(2pi) = 2
  if (n == 2) return {2, 1};   // 2cos(pi) = -2
  ZPoly phi = cyclotomic_poly(n);
  int m = degree_of(phi) / 2;
  // Phi_n is palindromic for n >= 3; fold z^j + z^-j onto D_j(z + 1/z).
  ZPoly out(m + 1, 0);
  out[0] = phi[m];
  for (int j = 1; j <= m; ++j) {
    ZPoly dj = dickson_poly(j);
    for (size_t i = 0; i < dj.size(); ++i) out[i] += phi[m + j] * dj[i];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Field

struct Field::Enclosures {
  // precision (bits) -> enclosure of c as two mpfr values
  struct Interval {
    mpfr_t lo, hi;
  };
  std::map<int, Interval> by_prec;
  ~Enclosures() {
    for (auto& [p, iv] : by_prec) {
      mpfr_clear(iv.lo);
      mpfr_clear(iv.hi);
    }
  }
};

Field::Field(int L) : L_(L), enc_(new Enclosures) {
  if (L < 1) throw std::invalid_argument("field level must be positive");
  minpoly_ = real_cyclotomic_minpoly(2 * L);
  deg_ = degree_of(minpoly_);
}

Field::~Field() = default;

std::vector<mpq_class> Field::reduce(std::vector<mpq_class> raw) const {
  // polynomial remainder mod the monic minimal polynomial, any input degree
  for (int k = static_cast<int>(raw.size()) - 1; k >= deg_; --k) {
    mpq_class c = raw[k];
    if (c == 0) continue;
    for (int i = 0; i < deg_; ++i)
      raw[k - deg_ + i] -= c * mpq_class(minpoly_[i]);
    raw[k] = 0;
  }
  raw.resize(std::max<size_t>(raw.size(), deg_));
  raw.resize(deg_);
  for (auto& q : raw) q.canonicalize();
  return raw;
}

KNum Field::zero() const { return KNum(this, std::vector<mpq_class>(deg_, 0)); }

KNum Field::one() const { return integer(1); }

KNum Field::integer(long v) const {
  std::vector<mpq_class> a(deg_, 0);
  a[0] = v;
  return KNum(this, std::move(a));
}

KNum Field::rational(const mpq_class& q) const {
  std::vector<mpq_class> a(deg_, 0);
  a[0] = q;
  return KNum(this, std::move(a));
}

KNum Field::generator() const {
  if (deg_ == 1) {
    // c itself is rational: c = 2cos(pi/L) with L in {1,2,3}
    return rational(L_ == 1 ? -2 : (L_ == 2 ? 0 : 1));
  }
  std::vector<mpq_class> a(deg_, 0);
  a[1] = 1;
  return KNum(this, std::move(a));
}

KNum Field::from_coeffs(std::vector<mpq_class> a) const {
  a.resize(std::max<size_t>(a.size(), deg_), 0);
  return KNum(this, reduce(std::move(a)));
}

KNum Field::two_cos_pi_over(int m) const {
  if (m < 1 || L_ % m != 0)
    throw std::invalid_argument("two_cos_pi_over: m must divide the level");
  ZPoly d = dickson_poly(L_ / m);
  std::vector<mpq_class> a(d.size());
  for (size_t i = 0; i < d.size(); ++i) a[i] = mpq_class(d[i]);
  return from_coeffs(std::move(a));
}

// ---------------------------------------------------------------------------
// KNum arithmetic

namespace {
const Field* common_field(const KNum& x, const KNum& y) {
  const Field* f = x.field() ? x.field() : y.field();
  if (x.field() && y.field() && x.field() != y.field())
    throw std::invalid_argument("mixing elements of different fields");
  if (!f) throw std::invalid_argument("untied field elements");
  return f;
}
}  // namespace

bool KNum::is_zero() const {
  for (const auto& q : a_)
    if (q != 0) return false;
  return true;
}

bool KNum::is_rational() const {
  for (size_t i = 1; i < a_.size(); ++i)
    if (a_[i] != 0) return false;
  return true;
}

mpq_class KNum::to_rational() const {
  if (!is_rational()) throw std::invalid_argument("value is irrational");
  return a_.empty() ? mpq_class(0) : a_[0];
}

KNum KNum::operator+(const KNum& o) const {
  const Field* f = common_field(*this, o);
  std::vector<mpq_class> r(f->degree(), 0);
  for (int i = 0; i < f->degree(); ++i) {
    if (i < static_cast<int>(a_.size())) r[i] += a_[i];
    if (i < static_cast<int>(o.a_.size())) r[i] += o.a_[i];
  }
  return KNum(f, std::move(r));
}

KNum KNum::operator-(const KNum& o) const { return *this + (-o); }

KNum KNum::operator-() const {
  KNum r = *this;
  for (auto& q : r.a_) q = -q;
  return r;
}

KNum KNum::operator*(const KNum& o) const {
  const Field* f = common_field(*this, o);
  int d = f->degree();
  std::vector<mpq_class> raw(2 * d - 1, 0);
  for (int i = 0; i < d; ++i) {
    if (i >= static_cast<int>(a_.size()) || a_[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (j >= static_cast<int>(o.a_.size()) || o.a_[j] == 0) continue;
      raw[i + j] += a_[i] * o.a_[j];
    }
  }
  return KNum(f, f->reduce(std::move(raw)));
}

KNum KNum::scaled(const mpq_class& q) const {
  KNum r = *this;
  for (auto& c : r.a_) c *= q;
  return r;
}

bool KNum::operator==(const KNum& o) const {
  if (!f_ || !o.f_) return is_zero() && o.is_zero();
  common_field(*this, o);
  return (*this - o).is_zero();
}

int KNum::sign() const {
  if (!f_) return 0;
  return f_->sign_of(a_);
}

double KNum::approx() const {
  if (!f_) return 0.0;
  double c = 2.0 * std::cos(M_PI / f_->level());
  double v = 0.0;
  for (int i = static_cast<int>(a_.size()) - 1; i >= 0; --i)
    v = v * c + a_[i].get_d();
  return v;
}

std::string KNum::str() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < a_.size(); ++i) {
    if (i) os << ",";
    os << a_[i].get_str();
  }
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------------------
// Certified sign via mpfr interval refinement

namespace {

struct Interval {
  mpfr_t lo, hi;
  explicit Interval(int prec) {
    mpfr_init2(lo, prec);
    mpfr_init2(hi, prec);
  }
  ~Interval() {
    mpfr_clear(lo);
    mpfr_clear(hi);
  }
  Interval(const Interval&) = delete;
};

// r = a * b with outward rounding
void imul(Interval& r, const Interval& a, const Interval& b, int prec) {
  mpfr_t p[4];
  for (auto& x : p) mpfr_init2(x, prec);
  mpfr_mul(p[0], a.lo, b.lo, MPFR_RNDD);
  mpfr_mul(p[1], a.lo, b.hi, MPFR_RNDD);
  mpfr_mul(p[2], a.hi, b.lo, MPFR_RNDD);
  mpfr_mul(p[3], a.hi, b.hi, MPFR_RNDD);
  mpfr_min(p[0], p[0], p[1], MPFR_RNDD);
  mpfr_min(p[2], p[2], p[3], MPFR_RNDD);
  mpfr_min(r.lo, p[0], p[2], MPFR_RNDD);
  mpfr_mul(p[0], a.lo, b.lo, MPFR_RNDU);
  mpfr_mul(p[1], a.lo, b.hi, MPFR_RNDU);
  mpfr_mul(p[2], a.hi, b.lo, MPFR_RNDU);
  mpfr_mul(p[3], a.hi, b.hi, MPFR_RNDU);
  mpfr_max(p[0], p[0], p[1], MPFR_RNDU);
  mpfr_max(p[2], p[2], p[3], MPFR_RNDU);
  mpfr_max(r.hi, p[0], p[2], MPFR_RNDU);
  for (auto& x : p) mpfr_clear(x);
}

}  // namespace

int Field::sign_of(const std::vector<mpq_class>& a) const {
  bool nonzero = false;
  for (const auto& q : a) nonzero = nonzero || (q != 0);
  if (!nonzero) return 0;
  bool rational = true;
  for (size_t i = 1; i < a.size(); ++i) rational = rational && (a[i] == 0);
  if (rational) return sgn(a[0]);

  for (int prec = 64; prec <= (1 << 16); prec *= 2) {
    // enclosure of c = 2cos(pi/L) at this precision
    Interval c(prec);
    {
      std::lock_guard<std::mutex> lock(enc_mutex_);
      auto it = enc_->by_prec.find(prec);
      if (it == enc_->by_prec.end()) {
        Enclosures::Interval iv;
        mpfr_init2(iv.lo, prec);
        mpfr_init2(iv.hi, prec);
        mpfr_t t;
        mpfr_init2(t, prec);
        // theta in [pi_down/L, pi_up/L]; cos decreasing on [0, pi]
        mpfr_const_pi(t, MPFR_RNDU);
        mpfr_div_ui(t, t, L_, MPFR_RNDU);
        mpfr_cos(iv.lo, t, MPFR_RNDD);
        mpfr_mul_2ui(iv.lo, iv.lo, 1, MPFR_RNDD);
        mpfr_const_pi(t, MPFR_RNDD);
        mpfr_div_ui(t, t, L_, MPFR_RNDD);
        mpfr_cos(iv.hi, t, MPFR_RNDU);
        mpfr_mul_2ui(iv.hi, iv.hi, 1, MPFR_RNDU);
        mpfr_clear(t);
        it = enc_->by_prec.emplace(prec, iv).first;
      }
      mpfr_set(c.lo, it->second.lo, MPFR_RNDD);
      mpfr_set(c.hi, it->second.hi, MPFR_RNDU);
    }

    Interval acc(prec), tmp(prec);
    mpfr_set_zero(acc.lo, 1);
    mpfr_set_zero(acc.hi, 1);
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i) {
      imul(tmp, acc, c, prec);
      mpfr_add_q(acc.lo, tmp.lo, a[i].get_mpq_t(), MPFR_RNDD);
      mpfr_add_q(acc.hi, tmp.hi, a[i].get_mpq_t(), MPFR_RNDU);
    }
    if (mpfr_sgn(acc.lo) > 0) return 1;
    if (mpfr_sgn(acc.hi) < 0) return -1;
  }
  throw ConsistencyError("sign_of: interval refinement failed to separate");
}

}  // namespace cox

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <vector>

namespace cox {

/// Thrown when two supposedly equivalent computations disagree. Never caught
/// and silently resolved; a ConsistencyError aborts the enclosing run.
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a configured budget (enumeration cap, search ceiling) runs out.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense integer polynomial, coeff[i] belongs to x^i. Trailing zeros trimmed.
using ZPoly = std::vector<mpz_class>;

ZPoly cyclotomic_poly(int n);
/// Minimal polynomial over Q of 2cos(2*pi/n), monic with integer coefficients.
ZPoly real_cyclotomic_minpoly(int n);
/// Dickson-style basis polynomial: D_k(2cos t) = 2cos(k t). D_0 = 2, D_1 = x.
ZPoly dickson_poly(int k);

class Field;

/// Element of the coefficient field Q(c) with c = 2cos(pi/L): a polynomial in
/// c of degree < [Q(c):Q], with rational coefficients. Value semantics.
class KNum {
 public:
  KNum() = default;

  bool is_zero() const;
  bool is_rational() const;
  /// Exact sign in {-1, 0, +1}, certified by interval refinement.
  int sign() const;

  KNum operator+(const KNum& o) const;
  KNum operator-(const KNum& o) const;
  KNum operator*(const KNum& o) const;
  KNum operator-() const;
  KNum& operator+=(const KNum& o) { return *this = *this + o; }
  KNum& operator-=(const KNum& o) { return *this = *this - o; }
  KNum& operator*=(const KNum& o) { return *this = *this * o; }
  bool operator==(const KNum& o) const;
  bool operator!=(const KNum& o) const { return !(*this == o); }

  KNum scaled(const mpq_class& q) const;

  const std::vector<mpq_class>& coeffs() const { return a_; }
  const Field* field() const { return f_; }
  /// As rational; throws if the element is not rational.
  mpq_class to_rational() const;
  double approx() const;
  std::string str() const;

 private:
  friend class Field;
  KNum(const Field* f, std::vector<mpq_class> a) : f_(f), a_(std::move(a)) {}

  const Field* f_ = nullptr;
  std::vector<mpq_class> a_;  // size = field degree; empty means untied zero
};

/// The real cyclotomic field Q(2cos(pi/L)). All Coxeter-matrix bilinear form
/// entries -cos(pi/m) with m | L live here. Immutable after construction;
/// sign determination caches interval enclosures of c under a mutex.
class Field : public std::enable_shared_from_this<Field> {
 public:
  explicit Field(int L);
  ~Field();
  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  int level() const { return L_; }
  int degree() const { return deg_; }
  const ZPoly& minpoly() const { return minpoly_; }

  KNum zero() const;
  KNum one() const;
  KNum integer(long v) const;
  KNum rational(const mpq_class& q) const;
  KNum generator() const;  // c itself
  /// 2cos(pi/m); m must divide L.
  KNum two_cos_pi_over(int m) const;
  KNum from_coeffs(std::vector<mpq_class> a) const;

  /// Certified sign of a value presented by its coefficient vector.
  int sign_of(const std::vector<mpq_class>& a) const;

 private:
  friend class KNum;
  std::vector<mpq_class> reduce(std::vector<mpq_class> raw) const;

  int L_;
  int deg_;
  ZPoly minpoly_;

  struct Enclosures;  // mpfr interval cache, per precision
  mutable std::unique_ptr<Enclosures> enc_;
  mutable std::mutex enc_mutex_;
};

using FieldPtr = std::shared_ptr<const Field>;

}  // namespace cox

#include <memory>

#include "cox/diagram.hpp"
#include "cox/field.hpp"

namespace cox {

namespace {

using KMat = std::vector<std::vector<KNum>>;

KMat mat_mul(const KMat& a, const KMat& b, const Field& F) {
  const int n = static_cast<int>(a.size());
  KMat r(n, std::vector<KNum>(n, F.zero()));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (int j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
    }
  return r;
}

KNum trace(const KMat& a, const Field& F) {
  KNum t = F.zero();
  for (size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

}  // namespace

GramSignature gram_signature(const CoxeterMatrix& M, const GeneratorSet& J) {
  const int n = J.size();
  if (n == 0) return {};
  auto F = std::make_shared<Field>(M.field_level());
  const mpq_class minus_half(-1, 2);

  KMat A(n, std::vector<KNum>(n, F->zero()));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      int s = J.members()[i], t = J.members()[j];
      if (i == j)
        A[i][j] = F->one();
      else if (M.m(s, t) == kInfinity)
        A[i][j] = F->integer(-1);
      else if (M.m(s, t) == 2)
        A[i][j] = F->zero();
      else
        A[i][j] = F->two_cos_pi_over(M.m(s, t)).scaled(minus_half);
    }
  }

  // Characteristic polynomial of the Gram form by Faddeev-LeVerrier.
  std::vector<KNum> coef(n + 1, F->zero());
  coef[n] = F->one();
  KMat aux = A;
  coef[n - 1] = -trace(A, *F);
  for (int k = 2; k <= n; ++k) {
    for (int i = 0; i < n; ++i) aux[i][i] += coef[n - k + 1];
    aux = mat_mul(A, aux, *F);
    coef[n - k] = trace(aux, *F).scaled(mpq_class(-1, k));
  }

  // The form is symmetric, so the characteristic polynomial is real-rooted
  // and Descartes' rule is exact: positive eigenvalue count = sign
  // variations, zero count = valuation at 0.
  GramSignature sig;
  int first_nonzero = 0;
  while (first_nonzero <= n && coef[first_nonzero].is_zero()) ++first_nonzero;
  if (first_nonzero > n) throw ConsistencyError("zero characteristic polynomial");
  sig.zero = first_nonzero;
  int prev = 0, variations = 0;
  for (int i = n; i >= first_nonzero; --i) {
    int s = coef[i].sign();
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++variations;
    prev = s;
  }
  sig.positive = variations;
  sig.negative = n - sig.zero - sig.positive;
  return sig;
}

}  // namespace cox

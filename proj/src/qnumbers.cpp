#include "qcrystal/qnumbers.hpp"

#include "qcrystal/error.hpp"

namespace qcrystal {

LaurentPoly qint_base(int n, int t) {
  if (n == 0) return {};
  if (n < 0) return -qint_base(-n, t);
  LaurentPoly r;
  for (int k = 0; k < n; ++k) r += LaurentPoly::q_power(t * (n - 1 - 2 * k));
  return r;
}

ScalarQ qint(int n, Index i, const CartanDatum& d) { return ScalarQ(qint_base(n, d.s(i))); }

ScalarQ qfactorial(int n, Index i, const CartanDatum& d) {
  ScalarQ r(1);
  for (int k = 2; k <= n; ++k) r *= qint(k, i, d);
  return r;
}

ScalarQ qbinomial(int n, int k, Index i, const CartanDatum& d) {
  if (k < 0 || k > n) return ScalarQ();
  return qfactorial(n, i, d) / (qfactorial(k, i, d) * qfactorial(n - k, i, d));
}

ScalarQ qbrace(int n, Index i, const CartanDatum& d) {
  if (d.is_real(i)) throw Error(ErrorKind::InvalidArgument, "qbrace needs an imaginary index");
  int c = d.c(i);
  if (c == 0) return ScalarQ(static_cast<long>(n));
  return ScalarQ(qint_base(n, c * d.s(i)));
}

ScalarQ qbrace_factorial(int n, Index i, const CartanDatum& d) {
  ScalarQ r(1);
  for (int k = 2; k <= n; ++k) r *= qbrace(k, i, d);
  return r;
}

ScalarQ qbrace_binomial(int n, int k, Index i, const CartanDatum& d) {
  if (k < 0 || k > n) return ScalarQ();
  return qbrace_factorial(n, i, d) / (qbrace_factorial(k, i, d) * qbrace_factorial(n - k, i, d));
}

ScalarQ divided_power_norm(int n, Index i, const CartanDatum& d) {
  return d.is_real(i) ? qfactorial(n, i, d) : ScalarQ(1);
}

}  // namespace qcrystal

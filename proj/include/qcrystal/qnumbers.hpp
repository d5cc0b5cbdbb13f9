#pragma once

#include "qcrystal/cartan.hpp"
#include "qcrystal/scalar.hpp"

namespace qcrystal {

// [n]_t = (q^{tn} - q^{-tn}) / (q^t - q^{-t}) as a Laurent polynomial; t > 0.
LaurentPoly qint_base(int n, int t);

// [n]_i with q_i = q^{s_i}.
ScalarQ qint(int n, Index i, const CartanDatum& d);
ScalarQ qfactorial(int n, Index i, const CartanDatum& d);
ScalarQ qbinomial(int n, int k, Index i, const CartanDatum& d);

// {n}_i for imaginary i; n itself when a_ii = 0. Throws InvalidArgument on real i.
ScalarQ qbrace(int n, Index i, const CartanDatum& d);
ScalarQ qbrace_factorial(int n, Index i, const CartanDatum& d);
ScalarQ qbrace_binomial(int n, int k, Index i, const CartanDatum& d);

// q_i^e = q^{s_i e}.
inline ScalarQ qi_pow(const CartanDatum& d, Index i, int e) { return ScalarQ::q_power(d.s(i) * e); }

// Normalizing factor of the divided power: [n]_i! for real i, 1 otherwise.
ScalarQ divided_power_norm(int n, Index i, const CartanDatum& d);

}  // namespace qcrystal

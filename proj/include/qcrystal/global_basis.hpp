#pragma once

#include <string>
#include <vector>

#include "qcrystal/crystal.hpp"

namespace qcrystal {

/// Bar-invariant lift G(b) of a crystal element.
struct GlobalElem {
  int node = -1;
  RootVec alpha;
  // Coefficient of each divided-power monomial f_{i_1}^{(k_1)} ... (runs of
  // equal letters grouped); all coefficients are bar-symmetric Laurent polynomials.
  FVector monomials;
  QVector coords;  // in the weight-space word basis
  int degree = 0;  // ansatz degree at which the solve succeeded
  bool laurent = false;
  bool bar_fixed = false;
  bool residue_ok = false;
  bool certified() const { return laurent && bar_fixed && residue_ok; }
};

// Coefficientwise q -> q^{-1}. Throws BarDomain on non-Laurent coefficients.
FVector bar_vec(const FVector& v);

// Coordinates of the divided-power monomial of a word (runs of equal letters
// become f_i^{(k)}) in the basis of V_a, a the weight of w.
QVector divided_monomial(WordModule& m, const Word& w);

// Unique x = Σ_w c_w m_w with bar-symmetric Laurent c_w, x ∈ L, x ≡ b mod qL,
// for the element k of B_a. The degree of the c_w escalates from min(|a|, budget)
// to `degree_budget`. Throws DegreeBudgetExceeded or NonUniqueSolution.
GlobalElem solve_global(WordModule& m, const Crystal& c, const RootVec& a, std::size_t k, int degree_budget);

// All G(b) up to the crystal depth, in node order.
std::vector<GlobalElem> global_basis(WordModule& m, const Crystal& c, int degree_budget);

struct CheckReport {
  std::string name;
  RootVec alpha;
  std::size_t instances = 0;
  std::vector<std::string> failures;
  bool pass() const { return failures.empty(); }
};

// At weight a: the G(b) form a basis of V_a, lie in L with residues exactly B,
// are bar-invariant, and there are dim V_a of them.
CheckReport balanced_check(WordModule& m, const Crystal& c, const std::vector<GlobalElem>& g, const RootVec& a);

// For b ∈ B_a with ε_i(b) >= n: G(b) has no string components below n and lies
// in Σ_{l>=n} f_i^{(l)} V^A (checked by an exact Laurent solve).
CheckReport integral_string_check(WordModule& m, const Crystal& c, const std::vector<GlobalElem>& g, Index i, int n,
                                  const RootVec& a);

// f~-word vectors of L_a expressed in {G(b)}: entries in A0 and residue the
// identity on matching elements.
CheckReport transition_check(WordModule& m, const Crystal& c, const std::vector<GlobalElem>& g, const RootVec& a);

// f~_{i_1} ... f~_{i_r} applied to the top vector along a path of e~-edges
// from the node up to the highest-weight node.
QVector ftilde_word_vector(GradedModule& m, const Crystal& c, int node);

// Whether x ∈ Σ_g A·g, with Laurent coefficients of degree at most e_max.
bool in_laurent_span(const std::vector<QVector>& gens, const QVector& x, int e_max);

}  // namespace qcrystal

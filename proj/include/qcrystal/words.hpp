#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qcrystal/cartan.hpp"
#include "qcrystal/scalar.hpp"

namespace qcrystal {

// Length first, then lexicographic on letters.
struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  }
};

/// Linear combination of f-words f_{w_1} ... f_{w_r}. Zero coefficients are never stored.
class FVector {
 public:
  using Terms = std::map<Word, ScalarQ, WordLess>;

  FVector() = default;
  static FVector word(const Word& w, const ScalarQ& c = ScalarQ(1));
  static FVector one() { return word({}); }

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  ScalarQ coeff(const Word& w) const;
  void add_term(const Word& w, const ScalarQ& c);

  FVector& operator+=(const FVector& o);
  FVector& operator-=(const FVector& o);
  FVector& operator*=(const ScalarQ& c);
  friend FVector operator+(FVector a, const FVector& b) { return a += b; }
  friend FVector operator-(FVector a, const FVector& b) { return a -= b; }
  friend FVector operator*(const ScalarQ& c, FVector v) { return v *= c; }
  friend bool operator==(const FVector& a, const FVector& b) { return a.t_ == b.t_; }

  std::string to_string(const CartanDatum* d = nullptr) const;

 private:
  Terms t_;
};

// All words of weight alpha in increasing order.
std::vector<Word> words_of_weight(const RootVec& alpha);

std::string word_to_string(const Word& w, const CartanDatum* d = nullptr);

// Left multiplication by f_i, or by an arbitrary element.
FVector mul_f(Index i, const FVector& v);
FVector mul(const FVector& a, const FVector& b);

// e_i' and e_i'' on the free algebra.
FVector eprime(const CartanDatum& d, Index i, const FVector& v);
FVector edprime(const CartanDatum& d, Index i, const FVector& v);
// (e_i')^{(n)}: plain power for real i, divided by {n}_i! for imaginary i.
FVector eprime_div(const CartanDatum& d, Index i, int n, const FVector& v);

// f_i^{(n)}: the word (i,...,i) divided by [n]_i! for real i; zero for n < 0.
FVector divided_power_word(const CartanDatum& d, Index i, int n);

// Reverses every word.
FVector star(const FVector& v);
FVector bar_coeffs(const FVector& v);

/// Kashiwara form on the free algebra, memoized on word pairs.
class KForm {
 public:
  explicit KForm(const CartanDatum& d) : d_(d) {}
  ScalarQ operator()(const FVector& p, const FVector& q);
  ScalarQ words(const Word& a, const Word& b);

 private:
  CartanDatum d_;
  std::map<std::pair<Word, Word>, ScalarQ> memo_;
};

// P_i = Σ_n (-1)^n q_i^{c n(n-1)/2} f_i^{(n)} e_i'^{(n)}, with c = -a_ii/2 for every i.
FVector proj_Pi(const CartanDatum& d, Index i, const FVector& v);

// u = Σ_l f_i^{(l)} u_l with e_i' u_l = 0; only nonzero components are returned.
std::vector<std::pair<int, FVector>> istring_um(const CartanDatum& d, Index i, const FVector& v);

// Kashiwara operators on U_q^- through the string decomposition.
std::pair<FVector, FVector> tilde_ops_um(const CartanDatum& d, Index i, const FVector& v);

// Σ_l f_i^{(l)} u_l.
FVector reconstruct_string(const CartanDatum& d, Index i,
                           const std::vector<std::pair<int, FVector>>& parts);

}  // namespace qcrystal

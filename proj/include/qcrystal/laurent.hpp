#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qcrystal {

using Rational = mpq_class;

// Dense polynomial in q with rational coefficients, coefficient k for q^k.
// Trailing zeros are never stored; the zero polynomial is empty.
using Poly = std::vector<Rational>;

namespace poly {
void trim(Poly& p);
Poly mul(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly exact_div(const Poly& a, const Poly& b);
// Monic greatest common divisor; gcd(0, 0) is 0.
Poly gcd(const Poly& a, const Poly& b);
int degree(const Poly& p);
}  // namespace poly

/// Laurent polynomial over Q in one variable q.
///
/// Stored densely from the lowest nonzero exponent; both end coefficients are
/// nonzero, so exponents and equality are canonical.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long c);  // NOLINT(google-explicit-constructor)
  LaurentPoly(const Rational& c);  // NOLINT(google-explicit-constructor)

  static LaurentPoly monomial(const Rational& c, int exponent);
  static LaurentPoly q_power(int exponent) { return monomial(1, exponent); }
  static LaurentPoly from_poly(const Poly& p, int shift = 0);
  static LaurentPoly parse(std::string_view text);

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && low_ == 0 && c_[0] == 1; }
  // Lowest / highest exponent with a nonzero coefficient. Undefined for zero.
  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(c_.size()) - 1; }
  Rational coeff(int exponent) const;
  const std::vector<Rational>& coeffs() const { return c_; }

  // Coefficients of q^{-low} * this as an ordinary polynomial.
  Poly to_poly() const { return c_; }

  LaurentPoly bar() const;
  LaurentPoly shifted(int k) const;
  Rational eval(const Rational& q) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Rational& c);
  LaurentPoly operator-() const;

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.low_ == b.low_ && a.c_ == b.c_;
  }

  // Terms in increasing exponent order, e.g. "-q^-1 + 2 + 3/2*q^2".
  std::string to_string() const;

 private:
  void trim();

  int low_ = 0;
  std::vector<Rational> c_;
};

}  // namespace qcrystal

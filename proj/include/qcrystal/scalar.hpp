#pragma once

#include <limits>
#include <string>
#include <string_view>

#include "qcrystal/laurent.hpp"

namespace qcrystal {

/// Element of Q(q), kept as a reduced fraction num/den.
///
/// Canonical form: den is an ordinary polynomial with den(0) = 1 and
/// gcd(num, den) = 1. All powers of q live in num, so val0 and eval0 read
/// directly off the numerator.
class ScalarQ {
 public:
  static constexpr int kValInfinity = std::numeric_limits<int>::max();

  ScalarQ() : den_(1) {}
  ScalarQ(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  ScalarQ(const Rational& c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  ScalarQ(LaurentPoly num) : num_(std::move(num)), den_(1) {}  // NOLINT(google-explicit-constructor)
  ScalarQ(const LaurentPoly& num, const LaurentPoly& den);

  static ScalarQ q_power(int e) { return ScalarQ(LaurentPoly::q_power(e)); }
  static ScalarQ parse(std::string_view text);

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_laurent() const { return den_.is_one(); }

  ScalarQ bar() const;
  ScalarQ inverse() const;
  // Order of vanishing at q = 0; kValInfinity for zero.
  int val0() const { return is_zero() ? kValInfinity : num_.low(); }
  // Degree at q = infinity (num.high - den.high), so val0(bar(x)) = -val_inf(x).
  int val_inf() const;
  // Constant term of the expansion at q = 0. Throws NotRegularAtZero.
  Rational eval0() const;
  Rational eval(const Rational& q) const;

  ScalarQ& operator+=(const ScalarQ& o);
  ScalarQ& operator-=(const ScalarQ& o);
  ScalarQ& operator*=(const ScalarQ& o);
  ScalarQ& operator/=(const ScalarQ& o);
  ScalarQ operator-() const;

  friend ScalarQ operator+(ScalarQ a, const ScalarQ& b) { return a += b; }
  friend ScalarQ operator-(ScalarQ a, const ScalarQ& b) { return a -= b; }
  friend ScalarQ operator*(ScalarQ a, const ScalarQ& b) { return a *= b; }
  friend ScalarQ operator/(ScalarQ a, const ScalarQ& b) { return a /= b; }
  friend bool operator==(const ScalarQ& a, const ScalarQ& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  // "(num)/(den)" with exponents increasing, or just the numerator when den = 1.
  std::string to_string() const;

 private:
  struct Raw {};
  ScalarQ(Raw, LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();

  LaurentPoly num_;
  LaurentPoly den_;
};

}  // namespace qcrystal

#include "qcrystal/scalar.hpp"

#include "qcrystal/error.hpp"

namespace qcrystal {

namespace {

// gcd of the polynomial parts; powers of q never divide a normalized
// denominator, so they can be ignored on the numerator side.
Poly poly_part_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return Poly{Rational(1)};
  if (a.coeffs().size() == 1 || b.coeffs().size() == 1) return Poly{Rational(1)};
  return poly::gcd(a.to_poly(), b.to_poly());
}

LaurentPoly divide_poly_part(const LaurentPoly& a, const Poly& g) {
  if (g.size() <= 1) return a;
  return LaurentPoly::from_poly(poly::exact_div(a.to_poly(), g), a.low());
}

}  // namespace

ScalarQ::ScalarQ(const LaurentPoly& num, const LaurentPoly& den) : num_(num), den_(den) {
  normalize();
}

void ScalarQ::normalize() {
  if (den_.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero in Q(q)");
  if (num_.is_zero()) {
    den_ = LaurentPoly(1);
    return;
  }
  if (den_.low() != 0) {
    num_ = num_.shifted(-den_.low());
    den_ = den_.shifted(-den_.low());
  }
  Poly g = poly_part_gcd(num_, den_);
  if (g.size() > 1) {
    num_ = divide_poly_part(num_, g);
    den_ = divide_poly_part(den_, g);
  }
  Rational c = den_.coeff(0);
  if (c != 1) {
    Rational inv = 1 / c;
    num_ *= inv;
    den_ *= inv;
  }
}

ScalarQ ScalarQ::bar() const {
  if (is_laurent()) return ScalarQ(num_.bar());
  // den(q^-1) = q^{-deg} * reversed(den); reversed(den) keeps a nonzero constant.
  return ScalarQ(num_.bar().shifted(den_.high()), den_.bar().shifted(den_.high()));
}

ScalarQ ScalarQ::inverse() const {
  if (is_zero()) throw Error(ErrorKind::InvalidArgument, "inverse of zero in Q(q)");
  return ScalarQ(den_, num_);
}

int ScalarQ::val_inf() const { return is_zero() ? -kValInfinity : num_.high() - den_.high(); }

Rational ScalarQ::eval0() const {
  if (is_zero()) return 0;
  if (num_.low() < 0) {
    throw Error(ErrorKind::NotRegularAtZero, "eval0 of " + to_string());
  }
  return num_.coeff(0);
}

Rational ScalarQ::eval(const Rational& q) const {
  Rational d = den_.eval(q);
  if (d == 0) throw Error(ErrorKind::InvalidArgument, "pole at specialization point");
  return num_.eval(q) / d;
}

ScalarQ& ScalarQ::operator+=(const ScalarQ& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) {
    LaurentPoly n = num_ + o.num_;
    if (den_.is_one()) {
      num_ = std::move(n);
      return *this;
    }
    *this = ScalarQ(n, den_);
    return *this;
  }
  // a/b + c/d with g = gcd(b, d): only g can share factors with the result.
  Poly g = poly_part_gcd(den_, o.den_);
  LaurentPoly b1 = divide_poly_part(den_, g);
  LaurentPoly d1 = divide_poly_part(o.den_, g);
  LaurentPoly n = num_ * d1 + o.num_ * b1;
  LaurentPoly d = den_ * d1;
  if (g.size() <= 1) {
    if (n.is_zero()) return *this = ScalarQ();
    Rational c = d.coeff(0);
    if (c != 1) {
      n *= 1 / c;
      d *= 1 / c;
    }
    *this = ScalarQ(Raw{}, std::move(n), std::move(d));
    return *this;
  }
  *this = ScalarQ(n, d);
  return *this;
}

ScalarQ& ScalarQ::operator-=(const ScalarQ& o) { return *this += -o; }

ScalarQ ScalarQ::operator-() const { return ScalarQ(Raw{}, -num_, den_); }

ScalarQ& ScalarQ::operator*=(const ScalarQ& o) {
  if (is_zero() || o.is_zero()) return *this = ScalarQ();
  if (is_laurent() && o.is_laurent()) {
    num_ *= o.num_;
    return *this;
  }
  Poly g1 = poly_part_gcd(num_, o.den_);
  Poly g2 = poly_part_gcd(o.num_, den_);
  LaurentPoly n = divide_poly_part(num_, g1) * divide_poly_part(o.num_, g2);
  LaurentPoly d = divide_poly_part(den_, g2) * divide_poly_part(o.den_, g1);
  Rational c = d.coeff(d.low());
  // d may have picked up a rescaled constant from the exact divisions.
  if (d.low() != 0) return *this = ScalarQ(n, d);
  if (c != 1) {
    n *= 1 / c;
    d *= 1 / c;
  }
  *this = ScalarQ(Raw{}, std::move(n), std::move(d));
  return *this;
}

ScalarQ& ScalarQ::operator/=(const ScalarQ& o) { return *this *= o.inverse(); }

std::string ScalarQ::to_string() const {
  if (is_laurent()) return num_.to_string();
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

ScalarQ ScalarQ::parse(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (!text.empty() && text.front() == '(') {
    auto close = text.find(')');
    auto slash = text.find('/', close);
    if (close == std::string_view::npos || slash == std::string_view::npos) {
      throw Error(ErrorKind::ParseError, "malformed fraction '" + std::string(text) + "'");
    }
    auto rest = trim(text.substr(slash + 1));
    if (rest.size() < 2 || rest.front() != '(' || rest.back() != ')') {
      throw Error(ErrorKind::ParseError, "malformed denominator '" + std::string(text) + "'");
    }
    return ScalarQ(LaurentPoly::parse(text.substr(1, close - 1)),
                   LaurentPoly::parse(rest.substr(1, rest.size() - 2)));
  }
  return ScalarQ(LaurentPoly::parse(text));
}

}  // namespace qcrystal

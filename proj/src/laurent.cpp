#include "qcrystal/laurent.hpp"

#include <cctype>

#include "qcrystal/error.hpp"

namespace qcrystal {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidDatum: return "InvalidDatum";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotRegularAtZero: return "NotRegularAtZero";
    case ErrorKind::SpanDeficient: return "SpanDeficient";
    case ErrorKind::NotInLattice: return "NotInLattice";
    case ErrorKind::NotDominant: return "NotDominant";
    case ErrorKind::BarDomain: return "BarDomain";
    case ErrorKind::DegreeBudgetExceeded: return "DegreeBudgetExceeded";
    case ErrorKind::NonUniqueSolution: return "NonUniqueSolution";
    case ErrorKind::ReconstructionFailed: return "ReconstructionFailed";
    case ErrorKind::DepthInsufficient: return "DepthInsufficient";
    case ErrorKind::WellDefinednessViolation: return "WellDefinednessViolation";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace poly {

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.empty()) throw Error(ErrorKind::InvalidArgument, "polynomial division by zero");
  Poly r = a;
  trim(r);
  if (r.size() < b.size()) return {Poly{}, r};
  Poly quo(r.size() - b.size() + 1);
  const Rational lead_inv = 1 / b.back();
  for (std::size_t k = r.size(); k-- >= b.size();) {
    if (r[k] == 0) continue;
    Rational f = r[k] * lead_inv;
    std::size_t shift = k - (b.size() - 1);
    quo[shift] = f;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] -= f * b[j];
  }
  trim(quo);
  trim(r);
  return {quo, r};
}

Poly exact_div(const Poly& a, const Poly& b) {
  auto [quo, rem] = divmod(a, b);
  if (!rem.empty()) throw Error(ErrorKind::InvalidArgument, "inexact polynomial division");
  return quo;
}

namespace {
void make_monic(Poly& p) {
  if (p.empty()) return;
  Rational inv = 1 / p.back();
  for (auto& c : p) c *= inv;
}

// Integer-coefficient primitive representative, used to keep remainder
// sequences from inflating rational coefficients.
void make_primitive(Poly& p) {
  if (p.empty()) return;
  mpz_class den = 1;
  for (const auto& c : p) den = lcm(den, mpz_class(c.get_den()));
  mpz_class g = 0;
  for (auto& c : p) {
    c *= den;
    c.canonicalize();
    g = gcd(g, mpz_class(c.get_num()));
  }
  if (g != 0 && g != 1) {
    for (auto& c : p) c /= g;
  }
}
}  // namespace

Poly gcd(const Poly& a0, const Poly& b0) {
  Poly a = a0, b = b0;
  trim(a);
  trim(b);
  if (a.empty()) { make_monic(b); return b; }
  if (b.empty()) { make_monic(a); return a; }
  if (a.size() == 1 || b.size() == 1) return Poly{Rational(1)};
  if (a.size() < b.size()) std::swap(a, b);
  make_primitive(a);
  make_primitive(b);
  while (!b.empty()) {
    if (b.size() == 1) return Poly{Rational(1)};
    // Pseudo-remainder keeps everything integral.
    Poly r = a;
    const Rational lead = b.back();
    while (r.size() >= b.size() && !r.empty()) {
      Rational f = r.back();
      std::size_t shift = r.size() - b.size();
      for (auto& c : r) c *= lead;
      for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] -= f * b[j];
      trim(r);
    }
    make_primitive(r);
    a = std::move(b);
    b = std::move(r);
  }
  make_monic(a);
  return a;
}

}  // namespace poly

LaurentPoly::LaurentPoly(long c) {
  if (c != 0) c_.emplace_back(c);
}

LaurentPoly::LaurentPoly(const Rational& c) {
  if (c != 0) c_.push_back(c);
}

LaurentPoly LaurentPoly::monomial(const Rational& c, int exponent) {
  LaurentPoly p(c);
  if (!p.is_zero()) p.low_ = exponent;
  return p;
}

LaurentPoly LaurentPoly::from_poly(const Poly& p, int shift) {
  LaurentPoly r;
  r.c_ = p;
  r.low_ = shift;
  r.trim();
  return r;
}

void LaurentPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead] == 0) ++lead;
  if (lead == c_.size()) {
    c_.clear();
    low_ = 0;
    return;
  }
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
    low_ += static_cast<int>(lead);
  }
}

Rational LaurentPoly::coeff(int exponent) const {
  if (is_zero() || exponent < low_ || exponent > high()) return 0;
  return c_[static_cast<std::size_t>(exponent - low_)];
}

LaurentPoly LaurentPoly::bar() const {
  if (is_zero()) return {};
  LaurentPoly r;
  r.c_.assign(c_.rbegin(), c_.rend());
  r.low_ = -high();
  return r;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly r = *this;
  if (!r.is_zero()) r.low_ += k;
  return r;
}

Rational LaurentPoly::eval(const Rational& q) const {
  if (is_zero()) return 0;
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * q + *it;
  Rational scale = 1;
  Rational base = low_ >= 0 ? q : Rational(1) / q;
  for (int k = 0; k < std::abs(low_); ++k) scale *= base;
  return acc * scale;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  int lo = std::min(low_, o.low_);
  int hi = std::max(high(), o.high());
  std::vector<Rational> c(static_cast<std::size_t>(hi - lo + 1));
  for (std::size_t k = 0; k < c_.size(); ++k) c[k + static_cast<std::size_t>(low_ - lo)] += c_[k];
  for (std::size_t k = 0; k < o.c_.size(); ++k) c[k + static_cast<std::size_t>(o.low_ - lo)] += o.c_[k];
  c_ = std::move(c);
  low_ = lo;
  trim();
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) { return *this += -o; }

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  LaurentPoly r;
  r.c_ = poly::mul(a.c_, b.c_);
  r.low_ = a.low_ + b.low_;
  r.trim();
  return r;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) { return *this = *this * o; }

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
  if (c == 0) {
    c_.clear();
    low_ = 0;
    return *this;
  }
  for (auto& x : c_) x *= c;
  return *this;
}

std::string LaurentPoly::to_string() const {
  if (is_zero()) return "0";
  std::string out;
  bool first = true;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const Rational& c = c_[k];
    if (c == 0) continue;
    const int e = low_ + static_cast<int>(k);
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    if (e == 1) mono = "q";
    else if (e != 0) mono = "q^" + std::to_string(e);
    if (mono.empty()) {
      out += mag.get_str();
    } else if (mag == 1) {
      out += mono;
    } else {
      out += mag.get_str() + "*" + mono;
    }
  }
  return out;
}

namespace {

struct Cursor {
  std::string_view s;
  std::size_t pos = 0;
  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  [[noreturn]] void fail(const char* why) const {
    throw Error(ErrorKind::ParseError, std::string(why) + " in '" + std::string(s) + "'");
  }
  long read_int() {
    skip_ws();
    bool neg = false;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) neg = s[pos++] == '-';
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail("expected integer");
    long v = std::stol(std::string(s.substr(start, pos - start)));
    return neg ? -v : v;
  }
  Rational read_unsigned_rational() {
    skip_ws();
    std::size_t start = pos;
    while (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '/')) ++pos;
    if (start == pos) fail("expected coefficient");
    Rational r(std::string(s.substr(start, pos - start)));
    r.canonicalize();
    return r;
  }
};

}  // namespace

LaurentPoly LaurentPoly::parse(std::string_view text) {
  Cursor cur{text};
  LaurentPoly acc;
  if (cur.done()) cur.fail("empty polynomial");
  bool first = true;
  while (!cur.done()) {
    int sign = 1;
    char c = cur.peek();
    if (c == '+' || c == '-') {
      sign = c == '-' ? -1 : 1;
      ++cur.pos;
    } else if (!first) {
      cur.fail("expected '+' or '-'");
    }
    first = false;
    Rational coef = 1;
    bool have_coef = false;
    if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
      coef = cur.read_unsigned_rational();
      have_coef = true;
      if (cur.peek() == '*') ++cur.pos;
    }
    int exponent = 0;
    if (cur.peek() == 'q') {
      ++cur.pos;
      exponent = 1;
      if (cur.pos < text.size() && text[cur.pos] == '^') {
        ++cur.pos;
        exponent = static_cast<int>(cur.read_int());
      }
    } else if (!have_coef) {
      cur.fail("expected term");
    }
    acc += monomial(coef * sign, exponent);
  }
  return acc;
}

}  // namespace qcrystal

#include "qcrystal/words.hpp"

#include <algorithm>

#include "qcrystal/error.hpp"
#include "qcrystal/qnumbers.hpp"

namespace qcrystal {

FVector FVector::word(const Word& w, const ScalarQ& c) {
  FVector v;
  v.add_term(w, c);
  return v;
}

ScalarQ FVector::coeff(const Word& w) const {
  auto it = t_.find(w);
  return it == t_.end() ? ScalarQ() : it->second;
}

void FVector::add_term(const Word& w, const ScalarQ& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = t_.try_emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) t_.erase(it);
}

FVector& FVector::operator+=(const FVector& o) {
  for (const auto& [w, c] : o.t_) add_term(w, c);
  return *this;
}

FVector& FVector::operator-=(const FVector& o) {
  for (const auto& [w, c] : o.t_) add_term(w, -c);
  return *this;
}

FVector& FVector::operator*=(const ScalarQ& c) {
  if (c.is_zero()) {
    t_.clear();
    return *this;
  }
  for (auto& [w, x] : t_) x *= c;
  return *this;
}

std::string word_to_string(const Word& w, const CartanDatum* d) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) s += " ";
    s += "f" + (d ? d->label(w[k]) : std::to_string(w[k] + 1));
  }
  return s;
}

std::string FVector::to_string(const CartanDatum* d) const {
  if (t_.empty()) return "0";
  std::string s;
  for (const auto& [w, c] : t_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.to_string() + ")*" + word_to_string(w, d);
  }
  return s;
}

std::vector<Word> words_of_weight(const RootVec& alpha) {
  Word w;
  for (std::size_t i = 0; i < alpha.size(); ++i)
    for (int k = 0; k < alpha[i]; ++k) w.push_back(static_cast<Index>(i));
  std::vector<Word> out;
  do {
    out.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

FVector mul_f(Index i, const FVector& v) {
  FVector r;
  for (const auto& [w, c] : v.terms()) {
    Word x;
    x.reserve(w.size() + 1);
    x.push_back(i);
    x.insert(x.end(), w.begin(), w.end());
    r.add_term(x, c);
  }
  return r;
}

FVector mul(const FVector& a, const FVector& b) {
  FVector r;
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) {
      Word x = wa;
      x.insert(x.end(), wb.begin(), wb.end());
      r.add_term(x, ca * cb);
    }
  return r;
}

namespace {

// Shared body of e_i' (sign = -1) and e_i'' (sign = +1).
FVector e_twisted(const CartanDatum& d, Index i, const FVector& v, int sign) {
  FVector r;
  for (const auto& [w, c] : v.terms()) {
    int acc = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k] == i) {
        Word x = w;
        x.erase(x.begin() + static_cast<long>(k));
        r.add_term(x, c * ScalarQ::q_power(sign * d.s(i) * acc));
      }
      acc += d.a(i, w[k]);
    }
  }
  return r;
}

}  // namespace

FVector eprime(const CartanDatum& d, Index i, const FVector& v) { return e_twisted(d, i, v, -1); }

FVector edprime(const CartanDatum& d, Index i, const FVector& v) { return e_twisted(d, i, v, 1); }

FVector eprime_div(const CartanDatum& d, Index i, int n, const FVector& v) {
  if (n < 0) return {};
  FVector r = v;
  for (int k = 0; k < n; ++k) r = eprime(d, i, r);
  if (!d.is_real(i)) r *= qbrace_factorial(n, i, d).inverse();
  return r;
}

FVector divided_power_word(const CartanDatum& d, Index i, int n) {
  if (n < 0) return {};
  return FVector::word(Word(static_cast<std::size_t>(n), i),
                       divided_power_norm(n, i, d).inverse());
}

FVector star(const FVector& v) {
  FVector r;
  for (const auto& [w, c] : v.terms()) r.add_term(Word(w.rbegin(), w.rend()), c);
  return r;
}

FVector bar_coeffs(const FVector& v) {
  FVector r;
  for (const auto& [w, c] : v.terms()) r.add_term(w, c.bar());
  return r;
}

ScalarQ KForm::words(const Word& a, const Word& b) {
  if (a.size() != b.size()) return ScalarQ();
  if (a.empty()) return ScalarQ(1);
  auto key = std::make_pair(a, b);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  ScalarQ total;
  Word rest(a.begin() + 1, a.end());
  FVector e = eprime(d_, a[0], FVector::word(b));
  for (const auto& [w, c] : e.terms()) {
    ScalarQ x = words(rest, w);
    if (!x.is_zero()) total += c * x;
  }
  memo_.emplace(std::move(key), total);
  return total;
}

ScalarQ KForm::operator()(const FVector& p, const FVector& q) {
  ScalarQ total;
  for (const auto& [wa, ca] : p.terms())
    for (const auto& [wb, cb] : q.terms()) {
      ScalarQ x = words(wa, wb);
      if (!x.is_zero()) total += ca * cb * x;
    }
  return total;
}

namespace {

// c used in the q-power of P_i; real indices take c = -1.
int proj_c(const CartanDatum& d, Index i) { return -d.a(i, i) / 2; }

int max_letter_count(const FVector& v, Index i) {
  int m = 0;
  for (const auto& [w, c] : v.terms())
    m = std::max(m, static_cast<int>(std::count(w.begin(), w.end(), i)));
  return m;
}

// q_i^{c n(n-1)/2}; n(n-1) is even so the exponent is an integer.
ScalarQ string_twist(const CartanDatum& d, Index i, int n) {
  return qi_pow(d, i, proj_c(d, i) * n * (n - 1) / 2);
}

}  // namespace

FVector proj_Pi(const CartanDatum& d, Index i, const FVector& v) {
  FVector r;
  const int top = max_letter_count(v, i);
  FVector e = v;  // (e_i')^n v, undivided
  for (int n = 0; n <= top && !e.is_zero(); ++n) {
    if (n > 0) e = eprime(d, i, e);
    if (e.is_zero()) break;
    FVector en = e;
    if (!d.is_real(i)) en *= qbrace_factorial(n, i, d).inverse();
    ScalarQ sign = (n % 2) ? ScalarQ(-1) : ScalarQ(1);
    r += (sign * string_twist(d, i, n)) * mul(divided_power_word(d, i, n), en);
  }
  return r;
}

std::vector<std::pair<int, FVector>> istring_um(const CartanDatum& d, Index i, const FVector& v) {
  std::vector<std::pair<int, FVector>> out;
  const int top = max_letter_count(v, i);
  for (int l = 0; l <= top; ++l) {
    FVector ul = proj_Pi(d, i, eprime_div(d, i, l, v));
    ul *= string_twist(d, i, l).inverse();
    if (!ul.is_zero()) out.emplace_back(l, std::move(ul));
  }
  if (!(reconstruct_string(d, i, out) == v))
    throw Error(ErrorKind::ReconstructionFailed, "i-string of " + v.to_string(&d));
  return out;
}

FVector reconstruct_string(const CartanDatum& d, Index i,
                           const std::vector<std::pair<int, FVector>>& parts) {
  FVector r;
  for (const auto& [l, u] : parts) r += mul(divided_power_word(d, i, l), u);
  return r;
}

std::pair<FVector, FVector> tilde_ops_um(const CartanDatum& d, Index i, const FVector& v) {
  FVector ev, fv;
  for (const auto& [l, u] : istring_um(d, i, v)) {
    if (l >= 1) ev += mul(divided_power_word(d, i, l - 1), u);
    fv += mul(divided_power_word(d, i, l + 1), u);
  }
  return {ev, fv};
}

}  // namespace qcrystal

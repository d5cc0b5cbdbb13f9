#include "qcrystal/error.hpp"
#include "qcrystal/module.hpp"
#include "qcrystal/qnumbers.hpp"

namespace qcrystal {

VModule::VModule(const CartanDatum& d, std::vector<int> lam) : WordModule(d), lam_(std::move(lam)) {
  if (static_cast<int>(lam_.size()) != d.n())
    throw Error(ErrorKind::InvalidArgument, "lambda has " + std::to_string(lam_.size()) +
                                                " entries, expected " + std::to_string(d.n()));
  for (int i = 0; i < d.n(); ++i)
    if (lam_[i] < 0)
      throw Error(ErrorKind::NotDominant, "lambda(h_" + d.label(i) + ") = " + std::to_string(lam_[i]));
}

std::vector<std::pair<ScalarQ, Word>> VModule::raise_word(Index i, const Word& w) const {
  // e_i f_{w_1} ... f_{w_r} v_λ: commuting past position k produces
  // [<h_i, weight of f_{w_{k+1}} ... v_λ>]_i.
  std::vector<std::pair<ScalarQ, Word>> out;
  RootVec tail(d_.n(), 0);
  for (std::size_t k = w.size(); k-- > 0;) {
    if (w[k] == i) {
      int p = pairing(d_, i, lam_, tail);
      if (p != 0) {
        Word x = w;
        x.erase(x.begin() + static_cast<long>(k));
        out.emplace_back(qint(p, i, d_), std::move(x));
      }
    }
    ++tail[w[k]];
  }
  return out;
}

ScalarQ VModule::form_factor(Index i, const RootVec& a) const {
  RootVec up = a;
  --up[i];
  return qi_pow(d_, i, pairing(d_, i, lam_, up) - 1);
}

void VModule::check_space(const RootVec& a, std::size_t dim) const {
  if (dim == 0) return;
  for (int i = 0; i < d_.n(); ++i)
    if (!d_.is_real(i) && pairing(d_, i, lam_, a) < 0)
      throw Error(ErrorKind::WellDefinednessViolation,
                  "weight " + root_to_string(a) + " has negative imaginary pairing at " + d_.label(i));
}

QVector VModule::apply_e(Index i, const RootVec& a, const QVector& x) { return e_matrix(i, a) * x; }

ScalarQ VModule::cform(const FVector& u, const FVector& v) {
  if (u.is_zero() || v.is_zero()) return ScalarQ();
  RootVec a = root_of_word(d_.n(), u.terms().begin()->first);
  RootVec b = root_of_word(d_.n(), v.terms().begin()->first);
  if (a != b) return ScalarQ();
  return form(a, coords(u, a), coords(v, a));
}

QMatrix pi_matrix(UmModule& um, VModule& v, const RootVec& a) {
  const auto& su = um.space(a);
  const auto& sv = v.space(a);
  QMatrix m(sv.basis.size(), su.basis.size());
  for (std::size_t k = 0; k < su.basis.size(); ++k) {
    const std::size_t idx = sv.index.at(su.words[su.basis[k]]);
    for (std::size_t r = 0; r < m.rows(); ++r) m.at(r, k) = sv.reduce.at(r, idx);
  }
  return m;
}

std::vector<WeightViolation> check_weight_constraints(VModule& v, int depth) {
  std::vector<WeightViolation> out;
  const auto& d = v.datum();
  for (int h = 0; h <= depth; ++h) {
    for (const auto& a : roots_of_height(d.n(), h)) {
      if (v.dim(a) == 0) continue;
      for (int i = 0; i < d.n(); ++i) {
        if (d.is_real(i)) continue;
        const int p = v.wt_pairing(i, a);
        if (p < 0) out.push_back({a, i, "imaginary pairing is negative"});
        if (p == 0 && h < depth) {
          if (!is_zero_matrix(v.f_matrix(i, a))) out.push_back({a, i, "f_i acts on a weight with pairing 0"});
        }
        if (p == 2 * d.c(i) && a[i] > 0) {
          if (!is_zero_matrix(v.e_matrix(i, a))) out.push_back({a, i, "e_i acts on a weight with pairing 2c_i"});
        }
      }
    }
  }
  return out;
}

}  // namespace qcrystal

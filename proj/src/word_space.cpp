#include "qcrystal/error.hpp"
#include "qcrystal/module.hpp"
#include "qcrystal/qnumbers.hpp"

namespace qcrystal {

const QMatrix& GradedModule::fpow(Index i, const RootVec& a, int n) {
  auto key = std::make_pair(std::make_pair(i, n), a);
  if (auto it = fpow_cache_.find(key); it != fpow_cache_.end()) return it->second;
  QMatrix m = QMatrix::identity(dim(a));
  RootVec cur = a;
  for (int k = 0; k < n; ++k) {
    m = f_matrix(i, cur) * m;
    ++cur[i];
  }
  if (n > 1 && d_.is_real(i)) {
    ScalarQ inv = qfactorial(n, i, d_).inverse();
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) *= inv;
  }
  return fpow_cache_.emplace(key, std::move(m)).first->second;
}

ScalarQ GradedModule::form(const RootVec& a, const QVector& x, const QVector& y) {
  const QMatrix& g = gram(a);
  ScalarQ s;
  for (std::size_t r = 0; r < x.size(); ++r) {
    if (x[r].is_zero()) continue;
    for (std::size_t c = 0; c < y.size(); ++c)
      if (!y[c].is_zero() && !g.at(r, c).is_zero()) s += x[r] * g.at(r, c) * y[c];
  }
  return s;
}

const WordModule::Space& WordModule::space(const RootVec& a) {
  if (auto it = spaces_.find(a); it != spaces_.end()) return *it->second;
  auto sp = std::make_unique<Space>();
  if (!is_nonneg(a)) {
    sp->reduce = QMatrix(0, 0);
    return *spaces_.emplace(a, std::move(sp)).first->second;
  }
  sp->words = words_of_weight(a);
  for (std::size_t k = 0; k < sp->words.size(); ++k) sp->index[sp->words[k]] = k;
  const std::size_t W = sp->words.size();
  sp->full_gram = QMatrix(W, W);
  if (height(a) == 0) {
    sp->full_gram.at(0, 0) = ScalarQ(1);
  } else {
    // (f_i u, v) = factor * (u, raise_i v), peeled on the first letter of the left word.
    for (std::size_t r = 0; r < W; ++r) {
      const Word& w = sp->words[r];
      const Index i = w[0];
      RootVec lower = a;
      --lower[i];
      const Space& low = space(lower);
      const Word rest(w.begin() + 1, w.end());
      const std::size_t rest_idx = low.index.at(rest);
      const ScalarQ factor = form_factor(i, a);
      for (std::size_t c = 0; c < W; ++c) {
        ScalarQ s;
        for (const auto& [coef, x] : raise_word(i, sp->words[c])) {
          const ScalarQ& g = low.full_gram.at(rest_idx, low.index.at(x));
          if (!g.is_zero()) s += coef * g;
        }
        if (!s.is_zero()) sp->full_gram.at(r, c) = factor * s;
      }
    }
  }
  sp->basis = independent_rows(sp->full_gram);
  const std::size_t n = sp->basis.size();
  sp->gram = QMatrix(n, n);
  QMatrix gsa(n, W);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) sp->gram.at(r, c) = sp->full_gram.at(sp->basis[r], sp->basis[c]);
    for (std::size_t c = 0; c < W; ++c) gsa.at(r, c) = sp->full_gram.at(sp->basis[r], c);
  }
  sp->reduce = n ? inverse(sp->gram) * gsa : QMatrix(0, W);
  check_space(a, n);
  return *spaces_.emplace(a, std::move(sp)).first->second;
}

const QMatrix& WordModule::f_matrix(Index i, const RootVec& a) {
  auto key = std::make_pair(i, a);
  if (auto it = f_cache_.find(key); it != f_cache_.end()) return it->second;
  RootVec up = a;
  ++up[i];
  const Space& src = space(a);
  const Space& dst = space(up);
  QMatrix m(dst.basis.size(), src.basis.size());
  for (std::size_t k = 0; k < src.basis.size(); ++k) {
    Word w = src.words[src.basis[k]];
    w.insert(w.begin(), i);
    const std::size_t idx = dst.index.at(w);
    for (std::size_t r = 0; r < m.rows(); ++r) m.at(r, k) = dst.reduce.at(r, idx);
  }
  return f_cache_.emplace(key, std::move(m)).first->second;
}

const QMatrix& WordModule::e_matrix(Index i, const RootVec& a) {
  auto key = std::make_pair(i, a);
  if (auto it = e_cache_.find(key); it != e_cache_.end()) return it->second;
  RootVec down = a;
  --down[i];
  const Space& src = space(a);
  const Space& dst = space(down);
  QMatrix m(dst.basis.size(), src.basis.size());
  if (a[i] > 0) {
    for (std::size_t k = 0; k < src.basis.size(); ++k) {
      for (const auto& [coef, x] : raise_word(i, src.words[src.basis[k]])) {
        const std::size_t idx = dst.index.at(x);
        for (std::size_t r = 0; r < m.rows(); ++r)
          if (!dst.reduce.at(r, idx).is_zero()) m.at(r, k) += coef * dst.reduce.at(r, idx);
      }
    }
  }
  return e_cache_.emplace(key, std::move(m)).first->second;
}

QVector WordModule::coords(const FVector& v, const RootVec& a) {
  const Space& sp = space(a);
  QVector x(sp.basis.size());
  for (const auto& [w, c] : v.terms()) {
    auto it = sp.index.find(w);
    if (it == sp.index.end())
      throw Error(ErrorKind::InvalidArgument, "word " + word_to_string(w) + " has the wrong weight");
    for (std::size_t r = 0; r < x.size(); ++r)
      if (!sp.reduce.at(r, it->second).is_zero()) x[r] += c * sp.reduce.at(r, it->second);
  }
  return x;
}

FVector WordModule::element(const QVector& x, const RootVec& a) {
  const Space& sp = space(a);
  FVector v;
  for (std::size_t k = 0; k < x.size(); ++k) v.add_term(sp.words[sp.basis[k]], x[k]);
  return v;
}

}  // namespace qcrystal

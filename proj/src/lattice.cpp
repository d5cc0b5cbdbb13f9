#include "qcrystal/lattice.hpp"

#include "qcrystal/error.hpp"

namespace qcrystal {

LatticeBasis dvr_lattice_basis(const std::vector<QVector>& spanning, std::size_t dim) {
  std::vector<QVector> work = spanning;
  for (const auto& v : work)
    if (v.size() != dim) throw Error(ErrorKind::InvalidArgument, "vector length mismatch");
  std::vector<bool> used(work.size(), false);
  std::vector<std::size_t> pivot_of_row;
  for (std::size_t r = 0; r < dim; ++r) {
    std::size_t best = work.size();
    int best_val = ScalarQ::kValInfinity;
    for (std::size_t c = 0; c < work.size(); ++c) {
      if (used[c] || work[c][r].is_zero()) continue;
      int v = work[c][r].val0();
      if (v < best_val) {
        best_val = v;
        best = c;
      }
    }
    if (best == work.size())
      throw Error(ErrorKind::SpanDeficient,
                  "spanning set has rank below " + std::to_string(dim));
    used[best] = true;
    pivot_of_row.push_back(best);
    const QVector& p = work[best];
    ScalarQ inv = p[r].inverse();
    for (std::size_t c = 0; c < work.size(); ++c) {
      if (used[c] || work[c][r].is_zero()) continue;
      ScalarQ f = work[c][r] * inv;
      for (std::size_t k = r; k < dim; ++k)
        if (!p[k].is_zero()) work[c][k] -= f * p[k];
    }
  }
  LatticeBasis out;
  for (auto c : pivot_of_row) out.basis.push_back(work[c]);
  QMatrix binv = inverse(QMatrix::from_columns(out.basis, dim));
  out.coords = QMatrix(spanning.size(), dim);
  for (std::size_t j = 0; j < spanning.size(); ++j) {
    QVector x = binv * spanning[j];
    for (std::size_t k = 0; k < dim; ++k) out.coords.at(j, k) = x[k];
  }
  return out;
}

Lattice::Lattice(std::vector<QVector> basis) : basis_(std::move(basis)) {
  b_ = QMatrix::from_columns(basis_, basis_.size());
  binv_ = inverse(b_);
}

bool Lattice::contains(const QVector& v) const {
  QVector x = coordinates(v);
  for (const auto& c : x)
    if (c.val0() < 0) return false;
  return true;
}

RatVector Lattice::residue(const QVector& v) const { return residue_mod_q(coordinates(v)); }

QVector Lattice::lift(const RatVector& r) const {
  QVector v(dim());
  for (std::size_t k = 0; k < r.size(); ++k) {
    if (r[k] == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!basis_[k][j].is_zero()) v[j] += ScalarQ(r[k]) * basis_[k][j];
  }
  return v;
}

RatVector residue_mod_q(const QVector& coords) {
  RatVector r(coords.size());
  for (std::size_t k = 0; k < coords.size(); ++k) {
    if (coords[k].val0() < 0)
      throw Error(ErrorKind::NotInLattice,
                  "coordinate " + std::to_string(k) + " is " + coords[k].to_string());
    r[k] = coords[k].eval0();
  }
  return r;
}

}  // namespace qcrystal

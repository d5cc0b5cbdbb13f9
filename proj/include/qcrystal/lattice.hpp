#pragma once

#include <vector>

#include "qcrystal/matrix.hpp"

namespace qcrystal {

struct LatticeBasis {
  std::vector<QVector> basis;
  // coords.at(j, k): coefficient of basis[k] in spanning[j]; every entry in A0.
  QMatrix coords;
};

/// A0-basis of the A0-module generated by `spanning`, all vectors of length `dim`.
///
/// Column elimination over A0: row by row, the pivot is the remaining vector
/// whose entry has minimal val0 (lowest index on ties), and the others are
/// cleared with A0-multiples of it. Throws SpanDeficient when the vectors do
/// not span Q(q)^dim.
LatticeBasis dvr_lattice_basis(const std::vector<QVector>& spanning, std::size_t dim);

/// Free A0-lattice of full rank in Q(q)^dim, given by a basis.
class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(std::vector<QVector> basis);

  std::size_t dim() const { return basis_.size(); }
  const std::vector<QVector>& basis() const { return basis_; }
  const QMatrix& basis_matrix() const { return b_; }
  const QMatrix& inverse_matrix() const { return binv_; }

  QVector coordinates(const QVector& v) const { return binv_ * v; }
  bool contains(const QVector& v) const;
  // Residue of v in L/qL, in basis coordinates. Throws NotInLattice.
  RatVector residue(const QVector& v) const;
  // Lifts a residue vector to L using the basis.
  QVector lift(const RatVector& r) const;

 private:
  std::vector<QVector> basis_;
  QMatrix b_;
  QMatrix binv_;
};

// eval0 of each coordinate; NotInLattice if some coordinate has val0 < 0.
RatVector residue_mod_q(const QVector& coords);

}  // namespace qcrystal

#include "qcrystal/matrix.hpp"

#include <algorithm>

#include "qcrystal/error.hpp"

namespace qcrystal {

bool is_zero(const QVector& v) {
  return std::all_of(v.begin(), v.end(), [](const ScalarQ& x) { return x.is_zero(); });
}

QVector add(const QVector& a, const QVector& b) {
  QVector r = a;
  for (std::size_t k = 0; k < b.size(); ++k) r[k] += b[k];
  return r;
}

QVector scale(const ScalarQ& c, const QVector& v) {
  QVector r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(c * x);
  return r;
}

QVector bar(const QVector& v) {
  QVector r;
  r.reserve(v.size());
  for (const auto& x : v) r.push_back(x.bar());
  return r;
}

int val0(const QVector& v) {
  int m = ScalarQ::kValInfinity;
  for (const auto& x : v) m = std::min(m, x.val0());
  return m;
}

bool is_zero_matrix(const QMatrix& m) {
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (!m.at(r, c).is_zero()) return false;
  return true;
}

QMatrix QMatrix::identity(std::size_t n) {
  QMatrix m(n, n);
  for (std::size_t k = 0; k < n; ++k) m.at(k, k) = ScalarQ(1);
  return m;
}

QMatrix QMatrix::from_columns(const std::vector<QVector>& cols, std::size_t rows) {
  QMatrix m(rows, cols.size());
  for (std::size_t c = 0; c < cols.size(); ++c) m.set_column(c, cols[c]);
  return m;
}

QVector QMatrix::row(std::size_t r) const {
  return QVector(a_.begin() + static_cast<long>(r * cols_),
                 a_.begin() + static_cast<long>((r + 1) * cols_));
}

QVector QMatrix::column(std::size_t c) const {
  QVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
  return v;
}

void QMatrix::set_column(std::size_t c, const QVector& v) {
  if (v.size() != rows_) throw Error(ErrorKind::InvalidArgument, "column length mismatch");
  for (std::size_t r = 0; r < rows_; ++r) at(r, c) = v[r];
}

QMatrix QMatrix::transpose() const {
  QMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
  return t;
}

QMatrix QMatrix::bar() const {
  QMatrix b = *this;
  for (auto& x : b.a_) x = x.bar();
  return b;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::InvalidArgument, "matrix shape mismatch");
  QMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const ScalarQ& x = a.at(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        if (!b.at(k, j).is_zero()) r.at(i, j) += x * b.at(k, j);
      }
    }
  }
  return r;
}

QVector operator*(const QMatrix& a, const QVector& v) {
  if (a.cols_ != v.size()) throw Error(ErrorKind::InvalidArgument, "matrix/vector shape mismatch");
  QVector r(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k)
      if (!v[k].is_zero() && !a.at(i, k).is_zero()) r[i] += a.at(i, k) * v[k];
  return r;
}

std::string QMatrix::to_string() const {
  std::string s = "[";
  for (std::size_t r = 0; r < rows_; ++r) {
    s += r ? ", [" : "[";
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) s += ", ";
      s += at(r, c).to_string();
    }
    s += "]";
  }
  return s + "]";
}

RowEchelon row_reduce(const QMatrix& m) {
  RowEchelon out{m, {}};
  QMatrix& a = out.rref;
  std::size_t prow = 0;
  for (std::size_t c = 0; c < a.cols() && prow < a.rows(); ++c) {
    std::size_t r = prow;
    while (r < a.rows() && a.at(r, c).is_zero()) ++r;
    if (r == a.rows()) continue;
    if (r != prow)
      for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a.at(r, k), a.at(prow, k));
    ScalarQ inv = a.at(prow, c).inverse();
    for (std::size_t k = c; k < a.cols(); ++k) a.at(prow, k) *= inv;
    for (std::size_t r2 = 0; r2 < a.rows(); ++r2) {
      if (r2 == prow || a.at(r2, c).is_zero()) continue;
      ScalarQ f = a.at(r2, c);
      for (std::size_t k = c; k < a.cols(); ++k)
        if (!a.at(prow, k).is_zero()) a.at(r2, k) -= f * a.at(prow, k);
    }
    out.pivot_cols.push_back(c);
    ++prow;
  }
  return out;
}

std::size_t rank(const QMatrix& m) { return row_reduce(m).pivot_cols.size(); }

std::vector<QVector> kernel_basis(const QMatrix& m) {
  RowEchelon e = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivot_cols) is_pivot[c] = true;
  std::vector<QVector> out;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    QVector v(m.cols());
    v[f] = ScalarQ(1);
    for (std::size_t r = 0; r < e.pivot_cols.size(); ++r) v[e.pivot_cols[r]] = -e.rref.at(r, f);
    out.push_back(std::move(v));
  }
  return out;
}

QMatrix inverse(const QMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw Error(ErrorKind::InvalidArgument, "inverse of a non-square matrix");
  QMatrix aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, n + r) = ScalarQ(1);
  }
  RowEchelon e = row_reduce(aug);
  if (e.pivot_cols.size() < n || (n > 0 && e.pivot_cols[n - 1] != n - 1))
    throw Error(ErrorKind::InvalidArgument, "singular matrix");
  QMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv.at(r, c) = e.rref.at(r, n + c);
  return inv;
}

QVector solve_unique(const QMatrix& m, const QVector& b) {
  QMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, m.cols()) = b[r];
  }
  RowEchelon e = row_reduce(aug);
  if (e.pivot_cols.size() != m.cols() ||
      (!e.pivot_cols.empty() && e.pivot_cols.back() == m.cols()))
    throw Error(ErrorKind::InvalidArgument, "system has no unique solution");
  QVector x(m.cols());
  for (std::size_t r = 0; r < m.cols(); ++r) x[r] = e.rref.at(r, m.cols());
  return x;
}

QVector SpanBuilder::reduce(QVector v) const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    const ScalarQ& x = v[pivots_[k]];
    if (x.is_zero()) continue;
    ScalarQ f = x;
    for (std::size_t c = 0; c < dim_; ++c)
      if (!rows_[k][c].is_zero()) v[c] -= f * rows_[k][c];
  }
  return v;
}

bool SpanBuilder::add(const QVector& v0) {
  QVector v = reduce(v0);
  std::size_t p = 0;
  while (p < dim_ && v[p].is_zero()) ++p;
  if (p == dim_) return false;
  ScalarQ inv = v[p].inverse();
  for (auto& x : v) x *= inv;
  // Keep earlier rows reduced against the new pivot so reduce() stays one pass.
  for (auto& row : rows_) {
    if (row[p].is_zero()) continue;
    ScalarQ f = row[p];
    for (std::size_t c = 0; c < dim_; ++c)
      if (!v[c].is_zero()) row[c] -= f * v[c];
  }
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

bool SpanBuilder::contains(const QVector& v) const { return is_zero(reduce(v)); }

std::vector<std::size_t> independent_rows(const QMatrix& m) {
  SpanBuilder span(m.cols());
  std::vector<std::size_t> kept;
  for (std::size_t r = 0; r < m.rows(); ++r)
    if (span.add(m.row(r))) kept.push_back(r);
  return kept;
}

void RatMatrix::append_row(const RatVector& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw Error(ErrorKind::InvalidArgument, "row length mismatch");
  a_.insert(a_.end(), row.begin(), row.end());
  ++rows_;
}

RatSolution solve_rational(const RatMatrix& m, const RatVector& b) {
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<RatVector> a(R, RatVector(C + 1));
  for (std::size_t r = 0; r < R; ++r) {
    for (std::size_t c = 0; c < C; ++c) a[r][c] = m.at(r, c);
    a[r][C] = b[r];
  }
  std::vector<std::size_t> pivots;
  std::size_t prow = 0;
  for (std::size_t c = 0; c < C && prow < R; ++c) {
    std::size_t r = prow;
    while (r < R && a[r][c] == 0) ++r;
    if (r == R) continue;
    std::swap(a[r], a[prow]);
    Rational inv = 1 / a[prow][c];
    for (std::size_t k = c; k <= C; ++k) a[prow][k] *= inv;
    for (std::size_t r2 = 0; r2 < R; ++r2) {
      if (r2 == prow || a[r2][c] == 0) continue;
      Rational f = a[r2][c];
      for (std::size_t k = c; k <= C; ++k)
        if (a[prow][k] != 0) a[r2][k] -= f * a[prow][k];
    }
    pivots.push_back(c);
    ++prow;
  }
  RatSolution sol;
  sol.consistent = true;
  for (std::size_t r = prow; r < R; ++r)
    if (a[r][C] != 0) sol.consistent = false;
  sol.particular.assign(C, Rational(0));
  std::vector<bool> is_pivot(C, false);
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    is_pivot[pivots[k]] = true;
    sol.particular[pivots[k]] = a[k][C];
  }
  for (std::size_t f = 0; f < C; ++f) {
    if (is_pivot[f]) continue;
    RatVector v(C, Rational(0));
    v[f] = 1;
    for (std::size_t k = 0; k < pivots.size(); ++k) v[pivots[k]] = -a[k][f];
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

}  // namespace qcrystal

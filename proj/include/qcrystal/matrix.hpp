#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qcrystal/scalar.hpp"

namespace qcrystal {

using QVector = std::vector<ScalarQ>;

bool is_zero(const QVector& v);
QVector add(const QVector& a, const QVector& b);
QVector scale(const ScalarQ& c, const QVector& v);
// Entrywise bar.
QVector bar(const QVector& v);
// Minimum val0 over entries; ScalarQ::kValInfinity for the zero vector.
int val0(const QVector& v);

/// Dense matrix over Q(q), row-major.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  static QMatrix identity(std::size_t n);
  // Matrix whose columns are the given vectors, all of length `rows`.
  static QMatrix from_columns(const std::vector<QVector>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  ScalarQ& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const ScalarQ& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  QVector row(std::size_t r) const;
  QVector column(std::size_t c) const;
  void set_column(std::size_t c, const QVector& v);
  QMatrix transpose() const;
  QMatrix bar() const;

  friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
  friend QVector operator*(const QMatrix& a, const QVector& v);
  friend bool operator==(const QMatrix& a, const QMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<ScalarQ> a_;
};

bool is_zero_matrix(const QMatrix& m);

struct RowEchelon {
  QMatrix rref;
  std::vector<std::size_t> pivot_cols;
};

// Reduced row echelon form. Rows are processed top to bottom and each pivot is
// the lowest-index nonzero column, which makes the result deterministic.
RowEchelon row_reduce(const QMatrix& m);
std::size_t rank(const QMatrix& m);
// Right null space; one vector per free column with that coordinate set to 1.
std::vector<QVector> kernel_basis(const QMatrix& m);
// Throws InvalidArgument when m is not square and invertible.
QMatrix inverse(const QMatrix& m);
// Unique x with m x = b, or throws InvalidArgument.
QVector solve_unique(const QMatrix& m, const QVector& b);

/// Greedy row selection: walks the rows in order and keeps a row whenever it is
/// independent of those already kept. Returns the kept indices.
std::vector<std::size_t> independent_rows(const QMatrix& m);

/// Incremental span tracker used for greedy selection and membership tests.
class SpanBuilder {
 public:
  explicit SpanBuilder(std::size_t dim) : dim_(dim) {}
  // Adds v if it is independent of the current span; returns whether it was added.
  bool add(const QVector& v);
  bool contains(const QVector& v) const;
  std::size_t size() const { return rows_.size(); }

 private:
  QVector reduce(QVector v) const;

  std::size_t dim_;
  std::vector<QVector> rows_;
  std::vector<std::size_t> pivots_;
};

// Dense rational matrices for the q-adic linear systems.
using RatVector = std::vector<Rational>;

class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Rational& at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  void append_row(const RatVector& row);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> a_;
};

struct RatSolution {
  bool consistent = false;
  RatVector particular;              // free variables set to zero
  std::vector<RatVector> nullspace;  // basis of the homogeneous solutions
};

// Solves m x = b exactly.
RatSolution solve_rational(const RatMatrix& m, const RatVector& b);

}  // namespace qcrystal

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qflab/rational.hpp"

namespace qflab {

using RationalVector = std::vector<Rational>;

/// Dense row-major matrix over Q.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_rows(const std::vector<RationalVector>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RationalVector row(std::size_t i) const;
  RationalVector column(std::size_t j) const;
  RationalMatrix transpose() const;
  bool is_zero() const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalVector operator*(const RationalMatrix& a, std::span<const Rational> x);
  friend RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

/// Sparse row: (column, value) pairs with increasing columns.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

/// Affine solution set {particular + span(kernel)}.
struct AffineSolution {
  RationalVector particular;
  std::vector<RationalVector> kernel;
};

/// Solves M x = rhs exactly by fraction-free elimination. Returns nullopt when
/// the system is inconsistent. The kernel basis has one vector per free
/// column, with a one in that column.
std::optional<AffineSolution> linear_solve(const RationalMatrix& m, std::span<const Rational> rhs);
std::optional<AffineSolution> linear_solve(std::size_t cols, std::span<const SparseRow> rows,
                                           std::span<const Rational> rhs);

/// Kernel of the homogeneous system given by sparse rows.
std::vector<RationalVector> kernel_basis(std::size_t cols, std::span<const SparseRow> rows);
std::size_t matrix_rank(std::size_t cols, std::span<const SparseRow> rows);
std::size_t matrix_rank(const RationalMatrix& m);

/// Throws SingularMatrix when m is not square or not invertible.
RationalMatrix inverse(const RationalMatrix& m);

/// Subspace of Q^n kept in reduced row echelon form; the pivot of each basis
/// row is its first nonzero entry and equals one.
class EchelonBasis {
 public:
  explicit EchelonBasis(std::size_t n = 0) : n_(n) {}

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return rows_.size(); }
  const std::vector<RationalVector>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Remainder of v after eliminating every pivot column.
  RationalVector reduce(RationalVector v) const;
  bool contains(const RationalVector& v) const;
  /// Adds v; returns false when v already lies in the span.
  bool insert(RationalVector v);

 private:
  std::size_t n_;
  std::vector<RationalVector> rows_;  // sorted by pivot
  std::vector<std::size_t> pivots_;
};

bool is_zero_vector(std::span<const Rational> v);

}  // namespace qflab

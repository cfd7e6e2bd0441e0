#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qflab/linalg.hpp"
#include "qflab/poly.hpp"

namespace qflab {

using PolyVector = std::vector<Poly>;

/// Sparse image of one basis bracket: (target index, coefficient) pairs with
/// increasing targets and nonzero coefficients.
using BracketTerms = std::vector<std::pair<std::size_t, Poly>>;

/// Lie algebra given by structure constants c_{ij}^k over a parameter space.
/// Only pairs i<j are stored; everything else follows from antisymmetry.
class Algebra {
 public:
  using Table = std::map<std::pair<std::size_t, std::size_t>, BracketTerms>;

  explicit Algebra(std::size_t dim = 0, ParamSpacePtr params = nullptr);

  std::size_t dim() const { return dim_; }
  const ParamSpacePtr& params() const { return params_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const Table& brackets() const { return table_; }

  /// [X_i, X_j] for any i, j.
  BracketTerms basis_bracket(std::size_t i, std::size_t j) const;
  Poly coefficient(std::size_t i, std::size_t j, std::size_t k) const;
  /// True when every coefficient is a rational constant.
  bool is_concrete() const;
  /// Substitutes the assigned parameters and drops vanishing constants.
  Algebra specialize(const Assignment& values) const;

  friend bool operator==(const Algebra& a, const Algebra& b) {
    return a.dim_ == b.dim_ && a.table_ == b.table_;
  }

 private:
  friend class AlgebraBuilder;
  std::size_t dim_;
  ParamSpacePtr params_;
  std::vector<std::string> labels_;
  Table table_;
};

/// Accumulates structure constants; add(j, i, ...) with j > i stores the
/// negated coefficient on (i, j).
class AlgebraBuilder {
 public:
  explicit AlgebraBuilder(std::size_t dim, ParamSpacePtr params = nullptr);
  explicit AlgebraBuilder(const Algebra& start);

  std::size_t dim() const { return dim_; }
  const ParamSpacePtr& params() const { return params_; }

  AlgebraBuilder& add(std::size_t i, std::size_t j, std::size_t k, const Poly& c);
  AlgebraBuilder& set_labels(std::vector<std::string> labels);
  Algebra build() const;

 private:
  std::size_t dim_;
  ParamSpacePtr params_;
  std::vector<std::string> labels_;
  std::map<std::pair<std::size_t, std::size_t>, std::map<std::size_t, Poly>> acc_;
};

/// Concrete (rational) copy of an algebra with O(1) bracket lookup.
class StructureTable {
 public:
  using Terms = std::vector<std::pair<std::size_t, Rational>>;

  StructureTable() = default;
  /// Throws MissingParameter when a coefficient still depends on a parameter
  /// that the assignment leaves free.
  explicit StructureTable(const Algebra& a, const Assignment& values = {});

  std::size_t dim() const { return n_; }
  const Terms& bracket(std::size_t i, std::size_t j) const { return table_[i * n_ + j]; }
  RationalVector bracket(std::span<const Rational> x, std::span<const Rational> y) const;
  /// [x, X_j] for a coordinate vector x.
  RationalVector bracket_basis(std::span<const Rational> x, std::size_t j) const;
  /// Nonzero constants (i < j, k, c).
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Rational>> constants() const;

 private:
  std::size_t n_ = 0;
  std::vector<Terms> table_;
};

struct JacobiReport {
  /// Keyed by i < j < k; values are the nonzero residual components.
  std::map<std::array<std::size_t, 3>, BracketTerms> residuals;
  bool holds() const { return residuals.empty(); }
};

PolyVector bracket(const Algebra& a, const PolyVector& x, const PolyVector& y);
JacobiReport jacobi_check(const Algebra& a);
/// Same check over Q; faster for concrete algebras.
bool jacobi_holds(const StructureTable& t);

/// Algebra in the basis Y_a = sum_i P(a, i) X_i. Throws SingularMatrix.
Algebra change_of_basis(const Algebra& a, const RationalMatrix& p);

/// Block sum; parameter spaces must be identical or disjoint.
Algebra direct_sum(const Algebra& a, const Algebra& b);
Algebra abelian(std::size_t dim);

/// Largest m with [X_0, X_i] = X_{i+1} for every 1 <= i < m.
std::size_t chain_end(const Algebra& a);

/// Adds [X_i, X_g] = X_{i+s} for every i >= 1 with i + s <= chain_end(a).
Algebra add_shift_action(const Algebra& a, std::size_t generator, std::size_t s);

/// Appends a generator acting on the chain by the shift s. s < 2 throws
/// ShiftOutOfRange; shifts past the chain leave a plain direct sum.
Algebra extend_by_shift(const Algebra& a, long s);

}  // namespace qflab

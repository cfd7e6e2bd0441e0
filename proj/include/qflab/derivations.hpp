#pragma once

#include <cstddef>
#include <vector>

#include "qflab/catalog.hpp"
#include "qflab/liealg.hpp"

namespace qflab {

/// Basis of Der(g); column j of each matrix is D(X_j).
struct DerivationSpace {
  std::size_t dim = 0;
  std::vector<RationalMatrix> basis;
};

/// Diagonal derivations in the given basis, as weight vectors.
struct WeightSpace {
  std::size_t dim = 0;
  std::vector<RationalVector> basis;
};

/// Leibniz system: one row per (i < j, k), unknown D(a, b) at column a*n + b.
std::vector<SparseRow> leibniz_rows(const StructureTable& t);

DerivationSpace derivation_space(const StructureTable& t);
DerivationSpace derivation_space(const Algebra& a, const Assignment& values = {});
std::size_t derivation_dim(const StructureTable& t);

/// True when D[x, y] = [Dx, y] + [x, Dy] on every basis pair.
bool is_derivation(const StructureTable& t, const RationalMatrix& d);

WeightSpace diagonal_derivations(const StructureTable& t);
WeightSpace diagonal_derivations(const Algebra& a, const Assignment& values = {});

/// Dimension of the diagonal derivations in the given basis. This equals the
/// rank for the catalog's eigenvector bases and bounds it from below
/// elsewhere.
std::size_t rank_in_basis(const Algebra& a, const Assignment& values = {});
std::size_t rank_in_basis(const StructureTable& t);

struct WeightViolation {
  std::size_t i, j, k;
  Poly lhs;  // w_i + w_j
  Poly rhs;  // w_k
};

struct WeightAudit {
  std::vector<Poly> weights;
  std::vector<WeightViolation> violations;
  bool pass() const { return violations.empty(); }
};

/// Checks w_i + w_j = w_k symbolically for every structure constant that is
/// not identically zero in the family's alphas.
WeightAudit verify_weights(const Algebra& a, const std::vector<Poly>& weights);
WeightAudit verify_claimed_weights(const FamilySpec& spec);

}  // namespace qflab

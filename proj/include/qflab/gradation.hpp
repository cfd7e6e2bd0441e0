#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qflab/liealg.hpp"

namespace qflab {

/// Lower central series g_1 = g, g_{k+1} = [g_k, g], down to and including 0.
struct Filtration {
  std::vector<EchelonBasis> ideals;

  std::vector<std::size_t> dims() const;
  /// Number of nonzero terms.
  std::size_t nilindex() const;
};

struct TypeInfo {
  std::vector<std::size_t> type;
  std::size_t nilindex = 0;
  bool filiform = false;
  bool quasifiliform = false;
  /// For quasi-filiform algebras: the position of the second jump of 2, or 1
  /// when the first jump is 3.
  std::optional<std::size_t> r;
};

struct GradedAlgebra {
  Algebra algebra;
  /// weights[i] is the filtration level of basis vector i.
  std::vector<std::size_t> weights;
  /// Rows are the chosen homogeneous vectors in the original basis.
  RationalMatrix basis;
};

/// Throws NonNilpotent when the series stalls above zero.
Filtration lower_central_series(const StructureTable& t);
Filtration lower_central_series(const Algebra& a, const Assignment& values = {});

TypeInfo type_of(const Filtration& f, std::size_t dim);
TypeInfo type_of(const Algebra& a, const Assignment& values = {});

GradedAlgebra gr(const Algebra& a, const Assignment& values = {});

/// Derived series g, [g,g], [[g,g],[g,g]], ... down to its stable term.
std::vector<std::size_t> derived_series_dims(const StructureTable& t);
std::size_t center_dim(const StructureTable& t);
/// Dimension of {x : [x, v] = 0 for every v in the subspace}.
std::size_t centralizer_dim(const StructureTable& t, const EchelonBasis& subspace);

}  // namespace qflab

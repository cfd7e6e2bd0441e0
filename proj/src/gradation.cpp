#include "qflab/gradation.hpp"

#include <algorithm>
#include <map>

#include "qflab/errors.hpp"

namespace qflab {

namespace {

RationalVector unit(std::size_t n, std::size_t i) {
  RationalVector v(n);
  v[i] = 1;
  return v;
}

EchelonBasis full_space(std::size_t n) {
  EchelonBasis b(n);
  for (std::size_t i = 0; i < n; ++i) b.insert(unit(n, i));
  return b;
}

EchelonBasis bracket_span(const StructureTable& t, const EchelonBasis& u, const EchelonBasis& v) {
  EchelonBasis out(t.dim());
  for (const auto& x : u.rows())
    for (const auto& y : v.rows()) {
      RationalVector z = t.bracket(x, y);
      if (!is_zero_vector(z)) out.insert(std::move(z));
    }
  return out;
}

}  // namespace

std::vector<std::size_t> Filtration::dims() const {
  std::vector<std::size_t> d;
  d.reserve(ideals.size());
  for (const auto& b : ideals) d.push_back(b.dim());
  return d;
}

std::size_t Filtration::nilindex() const {
  return static_cast<std::size_t>(
      std::count_if(ideals.begin(), ideals.end(), [](const EchelonBasis& b) { return b.dim() > 0; }));
}

Filtration lower_central_series(const StructureTable& t) {
  const std::size_t n = t.dim();
  Filtration f;
  f.ideals.push_back(full_space(n));
  while (f.ideals.back().dim() > 0) {
    EchelonBasis next(n);
    for (const auto& x : f.ideals.back().rows())
      for (std::size_t j = 0; j < n; ++j) {
        RationalVector z = t.bracket_basis(x, j);
        if (!is_zero_vector(z)) next.insert(std::move(z));
      }
    if (next.dim() == f.ideals.back().dim())
      throw NonNilpotent("lower central series stabilizes at dimension " + std::to_string(next.dim()));
    f.ideals.push_back(std::move(next));
  }
  return f;
}

Filtration lower_central_series(const Algebra& a, const Assignment& values) {
  return lower_central_series(StructureTable(a, values));
}

TypeInfo type_of(const Filtration& f, std::size_t dim) {
  TypeInfo info;
  const auto d = f.dims();
  for (std::size_t i = 0; i + 1 < d.size(); ++i) info.type.push_back(d[i] - d[i + 1]);
  info.nilindex = f.nilindex();
  info.filiform = dim >= 2 && info.nilindex + 1 == dim;
  info.quasifiliform = dim >= 3 && info.nilindex + 2 == dim;
  if (info.quasifiliform && !info.type.empty()) {
    if (info.type.front() == 3) {
      info.r = 1;
    } else {
      for (std::size_t i = 1; i < info.type.size(); ++i)
        if (info.type[i] == 2) {
          info.r = i + 1;
          break;
        }
    }
  }
  return info;
}

TypeInfo type_of(const Algebra& a, const Assignment& values) {
  return type_of(lower_central_series(a, values), a.dim());
}

GradedAlgebra gr(const Algebra& a, const Assignment& values) {
  const Algebra concrete = a.specialize(values);
  const StructureTable t(concrete);  // throws MissingParameter if any is left free
  const Filtration f = lower_central_series(t);
  const std::size_t n = a.dim();

  // Homogeneous complement of g_{k+1} in g_k: the RREF rows of g_k whose
  // pivots are not pivots of g_{k+1}.
  std::vector<RationalVector> rows;
  std::vector<std::size_t> level;
  for (std::size_t k = 0; k + 1 < f.ideals.size(); ++k) {
    const auto& cur = f.ideals[k];
    const auto& nxt = f.ideals[k + 1].pivots();
    for (std::size_t r = 0; r < cur.dim(); ++r) {
      if (std::binary_search(nxt.begin(), nxt.end(), cur.pivots()[r])) continue;
      rows.push_back(cur.rows()[r]);
      level.push_back(k + 1);
    }
  }
  if (rows.size() != n) throw DimensionMismatch("graded basis has wrong size");
  const RationalMatrix p = RationalMatrix::from_rows(rows);
  const Algebra moved = change_of_basis(concrete, p);

  // Keep only the components of the right degree.
  AlgebraBuilder b(n);
  for (const auto& [key, terms] : moved.brackets())
    for (const auto& [k, c] : terms)
      if (level[k] == level[key.first] + level[key.second]) b.add(key.first, key.second, k, c.constant_term());
  return GradedAlgebra{b.build(), level, p};
}

std::vector<std::size_t> derived_series_dims(const StructureTable& t) {
  std::vector<std::size_t> dims;
  EchelonBasis cur = full_space(t.dim());
  dims.push_back(cur.dim());
  while (cur.dim() > 0) {
    EchelonBasis next = bracket_span(t, cur, cur);
    if (next.dim() == cur.dim()) break;
    cur = std::move(next);
    dims.push_back(cur.dim());
  }
  return dims;
}

std::size_t centralizer_dim(const StructureTable& t, const EchelonBasis& subspace) {
  // Unknown x; equations [x, v] = 0 for each basis vector v of the subspace.
  const std::size_t n = t.dim();
  std::vector<SparseRow> rows;
  for (const auto& v : subspace.rows()) {
    // component k of [x, v] = sum_i x_i sum_j v_j c_{ij}^k
    std::vector<std::map<std::size_t, Rational>> eq(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (v[j].is_zero()) continue;
        for (const auto& [k, c] : t.bracket(i, j)) eq[k][i] += v[j] * c;
      }
    for (const auto& m : eq) {
      SparseRow r;
      for (const auto& [i, c] : m)
        if (!c.is_zero()) r.emplace_back(i, c);
      if (!r.empty()) rows.push_back(std::move(r));
    }
  }
  return n - matrix_rank(n, rows);
}

std::size_t center_dim(const StructureTable& t) { return centralizer_dim(t, full_space(t.dim())); }

}  // namespace qflab

#include "qflab/derivations.hpp"

#include <map>

#include "qflab/errors.hpp"

namespace qflab {

std::vector<SparseRow> leibniz_rows(const StructureTable& t) {
  const std::size_t n = t.dim();
  const auto col = [n](std::size_t row, std::size_t column) { return row * n + column; };
  std::vector<SparseRow> rows;
  std::vector<std::map<std::size_t, Rational>> eq(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      for (auto& e : eq) e.clear();
      // D[X_a, X_b]
      for (const auto& [m, c] : t.bracket(a, b))
        for (std::size_t k = 0; k < n; ++k) eq[k][col(k, m)] += c;
      // - [D X_a, X_b]
      for (std::size_t i = 0; i < n; ++i)
        for (const auto& [k, c] : t.bracket(i, b)) eq[k][col(i, a)] -= c;
      // - [X_a, D X_b]
      for (std::size_t i = 0; i < n; ++i)
        for (const auto& [k, c] : t.bracket(a, i)) eq[k][col(i, b)] -= c;
      for (const auto& e : eq) {
        SparseRow r;
        for (const auto& [c, v] : e)
          if (!v.is_zero()) r.emplace_back(c, v);
        if (!r.empty()) rows.push_back(std::move(r));
      }
    }
  return rows;
}

DerivationSpace derivation_space(const StructureTable& t) {
  const std::size_t n = t.dim();
  const auto rows = leibniz_rows(t);
  DerivationSpace out;
  for (const auto& v : kernel_basis(n * n, rows)) {
    RationalMatrix d(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d(i, j) = v[i * n + j];
    out.basis.push_back(std::move(d));
  }
  out.dim = out.basis.size();
  return out;
}

DerivationSpace derivation_space(const Algebra& a, const Assignment& values) {
  return derivation_space(StructureTable(a, values));
}

std::size_t derivation_dim(const StructureTable& t) {
  const std::size_t n = t.dim();
  return n * n - matrix_rank(n * n, leibniz_rows(t));
}

bool is_derivation(const StructureTable& t, const RationalMatrix& d) {
  const std::size_t n = t.dim();
  if (d.rows() != n || d.cols() != n) throw DimensionMismatch("derivation matrix shape differs from dimension");
  std::vector<RationalVector> image(n);
  for (std::size_t j = 0; j < n; ++j) image[j] = d.column(j);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      RationalVector lhs(n);
      for (const auto& [m, c] : t.bracket(a, b))
        for (std::size_t k = 0; k < n; ++k) lhs[k] += c * image[m][k];
      RationalVector ea(n), eb(n);
      ea[a] = 1;
      eb[b] = 1;
      const RationalVector r1 = t.bracket(image[a], eb);
      const RationalVector r2 = t.bracket(ea, image[b]);
      for (std::size_t k = 0; k < n; ++k)
        if (lhs[k] != r1[k] + r2[k]) return false;
    }
  return true;
}

WeightSpace diagonal_derivations(const StructureTable& t) {
  const std::size_t n = t.dim();
  std::vector<SparseRow> rows;
  for (const auto& [i, j, k, c] : t.constants()) {
    std::map<std::size_t, Rational> e;
    e[i] += 1;
    e[j] += 1;
    e[k] -= 1;
    SparseRow r;
    for (const auto& [col, v] : e)
      if (!v.is_zero()) r.emplace_back(col, v);
    if (!r.empty()) rows.push_back(std::move(r));
  }
  WeightSpace out;
  out.basis = kernel_basis(n, rows);
  out.dim = out.basis.size();
  return out;
}

WeightSpace diagonal_derivations(const Algebra& a, const Assignment& values) {
  return diagonal_derivations(StructureTable(a, values));
}

std::size_t rank_in_basis(const StructureTable& t) { return diagonal_derivations(t).dim; }

std::size_t rank_in_basis(const Algebra& a, const Assignment& values) {
  return rank_in_basis(StructureTable(a, values));
}

WeightAudit verify_weights(const Algebra& a, const std::vector<Poly>& weights) {
  if (weights.size() != a.dim()) throw DimensionMismatch("weight vector length differs from dimension");
  WeightAudit audit;
  audit.weights = weights;
  for (const auto& [key, terms] : a.brackets())
    for (const auto& [k, c] : terms) {
      const auto [i, j] = key;
      Poly lhs = weights[i] + weights[j];
      if (!(lhs == weights[k])) audit.violations.push_back({i, j, k, std::move(lhs), weights[k]});
    }
  return audit;
}

WeightAudit verify_claimed_weights(const FamilySpec& spec) {
  FamilySpec symbolic = spec;
  symbolic.alpha.reset();
  return verify_weights(generate(symbolic), claimed_weights(symbolic));
}

}  // namespace qflab

#pragma once

// Slow, independent reference computations used to cross-check the library.
// Everything here is plain dense Gaussian elimination over Rational on a full
// c[i][j][k] tensor; nothing goes through the sparse kernels.

#include <vector>

#include "qflab/liealg.hpp"

namespace oracle {

using qflab::Rational;
using Dense = std::vector<std::vector<Rational>>;

/// Reduced row echelon form with the zero rows dropped.
inline Dense echelon(Dense m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c].is_zero()) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    const Rational inv = m[rank][c].inverse();
    for (auto& x : m[rank]) x *= inv;
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c].is_zero()) continue;
      const Rational f = m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[r][j] -= f * m[rank][j];
    }
    ++rank;
  }
  m.resize(rank);
  return m;
}

inline std::size_t dense_rank(Dense m) { return echelon(std::move(m)).size(); }

/// c[i][j][k] over all ordered pairs.
inline std::vector<std::vector<std::vector<Rational>>> tensor(const qflab::Algebra& a) {
  const std::size_t n = a.dim();
  std::vector<std::vector<std::vector<Rational>>> c(n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) c[i][j][k] = a.coefficient(i, j, k).constant_term();
  return c;
}

/// dim Der: D(e_a) = sum_i d[i][a] e_i, one equation per ordered (a, b, k).
inline std::size_t derivation_dim(const qflab::Algebra& a) {
  const std::size_t n = a.dim();
  const auto c = tensor(a);
  Dense rows;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t k = 0; k < n; ++k) {
        std::vector<Rational> row(n * n);
        for (std::size_t m = 0; m < n; ++m) row[k * n + m] += c[x][y][m];
        for (std::size_t i = 0; i < n; ++i) {
          row[i * n + x] -= c[i][y][k];
          row[i * n + y] -= c[x][i][k];
        }
        bool nz = false;
        for (const auto& v : row) nz = nz || !v.is_zero();
        if (nz) rows.push_back(std::move(row));
      }
  return n * n - dense_rank(std::move(rows));
}

/// Dimensions of g, [g,g], [[g,g],g], ... by spanning brackets of a spanning
/// set with every basis vector. Stops at 0 or when the dimension stalls.
inline std::vector<std::size_t> lcs_dims(const qflab::Algebra& a) {
  const std::size_t n = a.dim();
  const auto c = tensor(a);
  Dense span;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> e(n);
    e[i] = 1;
    span.push_back(e);
  }
  std::vector<std::size_t> out{n};
  while (out.back() > 0) {
    Dense next;
    for (const auto& x : span)
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<Rational> v(n);
        for (std::size_t i = 0; i < n; ++i)
          if (!x[i].is_zero())
            for (std::size_t k = 0; k < n; ++k) v[k] += x[i] * c[i][j][k];
        next.push_back(std::move(v));
      }
    span = echelon(std::move(next));
    if (span.size() == out.back()) break;
    out.push_back(span.size());
  }
  return out;
}

}  // namespace oracle

#include "qflab/linalg.hpp"

#include <algorithm>
#include <map>

#include "qflab/errors.hpp"

namespace qflab {

// ---------------------------------------------------------- RationalMatrix

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_rows(const std::vector<RationalVector>& rows) {
  if (rows.empty()) return {};
  RationalMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != m.cols_) throw DimensionMismatch("ragged matrix rows");
    for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

RationalVector RationalMatrix::row(std::size_t i) const {
  return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                        data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

RationalVector RationalMatrix::column(std::size_t j) const {
  RationalVector c(rows_);
  for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
  return c;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool RationalMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& r) { return r.is_zero(); });
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product shape mismatch");
  RationalMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Rational& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) c(i, j) += aik * b(k, j);
    }
  return c;
}

RationalVector operator*(const RationalMatrix& a, std::span<const Rational> x) {
  if (a.cols_ != x.size()) throw DimensionMismatch("matrix-vector shape mismatch");
  RationalVector y(a.rows_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j)
      if (!a(i, j).is_zero() && !x[j].is_zero()) y[i] += a(i, j) * x[j];
  return y;
}

RationalMatrix operator+(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum shape mismatch");
  RationalMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
  return c;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix difference shape mismatch");
  RationalMatrix c = a;
  for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
  return c;
}

bool is_zero_vector(std::span<const Rational> v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& r) { return r.is_zero(); });
}

// ------------------------------------------------ fraction-free elimination

namespace {

using IntRow = std::vector<std::pair<std::size_t, mpz_class>>;

void make_primitive(IntRow& r) {
  if (r.empty()) return;
  mpz_class g = 0;
  for (const auto& [c, v] : r) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (r.front().second < 0) g = -g;
  if (g != 1)
    for (auto& [c, v] : r) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

IntRow to_integer_row(const SparseRow& row, const Rational* rhs, std::size_t rhs_col) {
  mpz_class l = 1;
  for (const auto& [c, v] : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.value().get_den_mpz_t());
  if (rhs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), rhs->value().get_den_mpz_t());
  IntRow out;
  out.reserve(row.size() + 1);
  for (const auto& [c, v] : row) {
    if (v.is_zero()) continue;
    mpz_class x = l / v.value().get_den() * v.value().get_num();
    out.emplace_back(c, std::move(x));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  // merge duplicate columns
  IntRow merged;
  for (auto& e : out) {
    if (!merged.empty() && merged.back().first == e.first) merged.back().second += e.second;
    else merged.push_back(std::move(e));
  }
  std::erase_if(merged, [](const auto& e) { return e.second == 0; });
  if (rhs && !rhs->is_zero()) merged.emplace_back(rhs_col, l / rhs->value().get_den() * rhs->value().get_num());
  make_primitive(merged);
  return merged;
}

const mpz_class* entry_at(const IntRow& r, std::size_t col) {
  auto it = std::lower_bound(r.begin(), r.end(), col, [](const auto& e, std::size_t c) { return e.first < c; });
  return (it != r.end() && it->first == col) ? &it->second : nullptr;
}

// a*x - b*y, columnwise
IntRow combine(const mpz_class& a, const IntRow& x, const mpz_class& b, const IntRow& y) {
  IntRow out;
  out.reserve(x.size() + y.size());
  auto ix = x.begin();
  auto iy = y.begin();
  mpz_class t;
  while (ix != x.end() || iy != y.end()) {
    if (iy == y.end() || (ix != x.end() && ix->first < iy->first)) {
      out.emplace_back(ix->first, a * ix->second);
      ++ix;
    } else if (ix == x.end() || iy->first < ix->first) {
      out.emplace_back(iy->first, -(b * iy->second));
      ++iy;
    } else {
      t = a * ix->second - b * iy->second;
      if (t != 0) out.emplace_back(ix->first, t);
      ++ix;
      ++iy;
    }
  }
  make_primitive(out);
  return out;
}

/// Echelon form keyed by pivot column. rhs_col marks the augmented column.
class FractionFreeEchelon {
 public:
  explicit FractionFreeEchelon(std::size_t rhs_col) : rhs_col_(rhs_col) {}

  void insert(IntRow r) {
    while (!r.empty()) {
      const std::size_t c = r.front().first;
      if (c == rhs_col_) {
        inconsistent_ = true;
        return;
      }
      auto it = pivots_.find(c);
      if (it == pivots_.end()) {
        pivots_.emplace(c, std::move(r));
        return;
      }
      r = combine(it->second.front().second, r, r.front().second, it->second);
    }
  }

  bool inconsistent() const { return inconsistent_; }
  std::size_t rank() const { return pivots_.size(); }

  /// Clears every pivot column from the other pivot rows.
  void reduce_fully() {
    for (auto it = pivots_.rbegin(); it != pivots_.rend(); ++it) {
      IntRow& row = it->second;
      for (auto jt = pivots_.upper_bound(it->first); jt != pivots_.end(); ++jt) {
        const mpz_class* e = entry_at(row, jt->first);
        if (!e) continue;
        const mpz_class coef = *e;
        row = combine(jt->second.front().second, row, coef, jt->second);
      }
    }
  }

  const std::map<std::size_t, IntRow>& pivots() const { return pivots_; }

 private:
  std::size_t rhs_col_;
  bool inconsistent_ = false;
  std::map<std::size_t, IntRow> pivots_;
};

AffineSolution extract_solution(const FractionFreeEchelon& ech, std::size_t cols) {
  AffineSolution sol;
  sol.particular.assign(cols, Rational(0));
  std::vector<bool> is_pivot(cols, false);
  for (const auto& [c, row] : ech.pivots()) {
    is_pivot[c] = true;
    if (const mpz_class* r = entry_at(row, cols)) sol.particular[c] = Rational(*r, row.front().second);
  }
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RationalVector v(cols, Rational(0));
    v[f] = 1;
    for (const auto& [c, row] : ech.pivots()) {
      if (c > f) break;
      if (const mpz_class* e = entry_at(row, f)) v[c] = Rational(mpz_class(-*e), row.front().second);
    }
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

std::vector<SparseRow> dense_to_sparse(const RationalMatrix& m) {
  std::vector<SparseRow> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) rows[i].emplace_back(j, m(i, j));
  return rows;
}

}  // namespace

std::optional<AffineSolution> linear_solve(std::size_t cols, std::span<const SparseRow> rows,
                                           std::span<const Rational> rhs) {
  if (!rhs.empty() && rhs.size() != rows.size()) throw DimensionMismatch("right-hand side length mismatch");
  FractionFreeEchelon ech(cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& [c, v] : rows[i])
      if (c >= cols) throw DimensionMismatch("column index out of range");
    ech.insert(to_integer_row(rows[i], rhs.empty() ? nullptr : &rhs[i], cols));
    if (ech.inconsistent()) return std::nullopt;
  }
  ech.reduce_fully();
  return extract_solution(ech, cols);
}

std::optional<AffineSolution> linear_solve(const RationalMatrix& m, std::span<const Rational> rhs) {
  if (rhs.size() != m.rows()) throw DimensionMismatch("right-hand side length mismatch");
  const auto rows = dense_to_sparse(m);
  return linear_solve(m.cols(), rows, rhs);
}

std::vector<RationalVector> kernel_basis(std::size_t cols, std::span<const SparseRow> rows) {
  auto sol = linear_solve(cols, rows, {});
  return std::move(sol->kernel);
}

std::size_t matrix_rank(std::size_t cols, std::span<const SparseRow> rows) {
  FractionFreeEchelon ech(cols);
  for (const auto& r : rows) ech.insert(to_integer_row(r, nullptr, cols));
  return ech.rank();
}

std::size_t matrix_rank(const RationalMatrix& m) {
  const auto rows = dense_to_sparse(m);
  return matrix_rank(m.cols(), rows);
}

RationalMatrix inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw SingularMatrix("non-square matrix");
  const std::size_t n = m.rows();
  RationalMatrix a = m;
  RationalMatrix inv = RationalMatrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col).is_zero()) ++piv;
    if (piv == n) throw SingularMatrix("matrix is not invertible");
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const Rational s = a(col, col).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) *= s;
      inv(col, j) *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col).is_zero()) continue;
      const Rational f = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        if (!a(col, j).is_zero()) a(i, j) -= f * a(col, j);
        if (!inv(col, j).is_zero()) inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

// ------------------------------------------------------------ EchelonBasis

RationalVector EchelonBasis::reduce(RationalVector v) const {
  if (v.size() != n_) throw DimensionMismatch("vector length differs from ambient dimension");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::size_t p = pivots_[r];
    if (v[p].is_zero()) continue;
    const Rational f = v[p];
    for (std::size_t j = p; j < n_; ++j)
      if (!rows_[r][j].is_zero()) v[j] -= f * rows_[r][j];
  }
  return v;
}

bool EchelonBasis::contains(const RationalVector& v) const { return is_zero_vector(reduce(v)); }

bool EchelonBasis::insert(RationalVector v) {
  v = reduce(std::move(v));
  std::size_t p = 0;
  while (p < n_ && v[p].is_zero()) ++p;
  if (p == n_) return false;
  const Rational s = v[p].inverse();
  for (std::size_t j = p; j < n_; ++j) v[j] *= s;
  for (auto& row : rows_) {
    if (row[p].is_zero()) continue;
    const Rational f = row[p];
    for (std::size_t j = p; j < n_; ++j)
      if (!v[j].is_zero()) row[j] -= f * v[j];
  }
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, p);
  rows_.insert(rows_.begin() + pos, std::move(v));
  return true;
}

}  // namespace qflab

#include "qflab/liealg.hpp"

#include <algorithm>

#include "qflab/errors.hpp"

namespace qflab {

namespace {

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back("X_" + std::to_string(i));
  return out;
}

Poly bind_space(const Poly& c, const ParamSpacePtr& space) {
  if (c.is_constant()) return c.rebased(space);
  if (same_space(c.space(), space)) return c;
  return c.rebased(space);
}

// Sum of the basis brackets [X_m, X_k] weighted by the terms of [X_i, X_j].
void accumulate_double(const Algebra& a, std::size_t i, std::size_t j, std::size_t k, PolyVector& out) {
  for (const auto& [m, c] : a.basis_bracket(i, j))
    for (const auto& [t, d] : a.basis_bracket(m, k)) out[t] += c * d;
}

void accumulate_double(const StructureTable& s, std::size_t i, std::size_t j, std::size_t k,
                       RationalVector& out) {
  for (const auto& [m, c] : s.bracket(i, j))
    for (const auto& [t, d] : s.bracket(m, k)) out[t] += c * d;
}

}  // namespace

// ------------------------------------------------------------------ Algebra

Algebra::Algebra(std::size_t dim, ParamSpacePtr params)
    : dim_(dim), params_(std::move(params)), labels_(default_labels(dim)) {}

BracketTerms Algebra::basis_bracket(std::size_t i, std::size_t j) const {
  if (i >= dim_ || j >= dim_) throw DimensionMismatch("basis index out of range");
  if (i == j) return {};
  const bool flip = i > j;
  const auto it = table_.find(flip ? std::pair{j, i} : std::pair{i, j});
  if (it == table_.end()) return {};
  if (!flip) return it->second;
  BracketTerms out = it->second;
  for (auto& [k, c] : out) c = -c;
  return out;
}

Poly Algebra::coefficient(std::size_t i, std::size_t j, std::size_t k) const {
  for (const auto& [t, c] : basis_bracket(i, j))
    if (t == k) return c;
  return Poly(Rational(0)).rebased(params_);
}

bool Algebra::is_concrete() const {
  for (const auto& [key, terms] : table_)
    for (const auto& [k, c] : terms)
      if (!c.is_constant()) return false;
  return true;
}

Algebra Algebra::specialize(const Assignment& values) const {
  AlgebraBuilder b(dim_, params_);
  b.set_labels(labels_);
  for (const auto& [key, terms] : table_)
    for (const auto& [k, c] : terms) b.add(key.first, key.second, k, c.substitute(values));
  return b.build();
}

// ----------------------------------------------------------- AlgebraBuilder

AlgebraBuilder::AlgebraBuilder(std::size_t dim, ParamSpacePtr params)
    : dim_(dim), params_(std::move(params)), labels_(default_labels(dim)) {}

AlgebraBuilder::AlgebraBuilder(const Algebra& start)
    : dim_(start.dim()), params_(start.params()), labels_(start.labels()) {
  for (const auto& [key, terms] : start.brackets())
    for (const auto& [k, c] : terms) acc_[key][k] = c;
}

AlgebraBuilder& AlgebraBuilder::add(std::size_t i, std::size_t j, std::size_t k, const Poly& c) {
  if (i >= dim_ || j >= dim_ || k >= dim_)
    throw DimensionMismatch("bracket index out of range: [" + std::to_string(i) + "," + std::to_string(j) +
                            "] -> " + std::to_string(k));
  if (i == j) {
    if (!c.is_zero()) throw InvalidParameters("nonzero self-bracket of basis vector " + std::to_string(i));
    return *this;
  }
  if (c.is_zero()) return *this;
  Poly v = bind_space(c, params_);
  if (i > j) {
    std::swap(i, j);
    v = -v;
  }
  auto& slot = acc_[{i, j}];
  auto it = slot.find(k);
  if (it == slot.end()) slot.emplace(k, std::move(v));
  else it->second += v;
  return *this;
}

AlgebraBuilder& AlgebraBuilder::set_labels(std::vector<std::string> labels) {
  if (labels.size() != dim_) throw DimensionMismatch("label count differs from dimension");
  labels_ = std::move(labels);
  return *this;
}

Algebra AlgebraBuilder::build() const {
  Algebra a(dim_, params_);
  a.labels_ = labels_;
  for (const auto& [key, slot] : acc_) {
    BracketTerms terms;
    for (const auto& [k, c] : slot)
      if (!c.is_zero()) terms.emplace_back(k, c);
    if (!terms.empty()) a.table_.emplace(key, std::move(terms));
  }
  return a;
}

// ----------------------------------------------------------- StructureTable

StructureTable::StructureTable(const Algebra& a, const Assignment& values) : n_(a.dim()), table_(n_ * n_) {
  for (const auto& [key, terms] : a.brackets()) {
    Terms fwd;
    for (const auto& [k, c] : terms) {
      Rational v = c.eval(values);
      if (!v.is_zero()) fwd.emplace_back(k, std::move(v));
    }
    Terms back = fwd;
    for (auto& [k, c] : back) c = -c;
    table_[key.first * n_ + key.second] = std::move(fwd);
    table_[key.second * n_ + key.first] = std::move(back);
  }
}

RationalVector StructureTable::bracket(std::span<const Rational> x, std::span<const Rational> y) const {
  if (x.size() != n_ || y.size() != n_) throw DimensionMismatch("bracket operand length differs from dimension");
  RationalVector out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (x[i].is_zero()) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (y[j].is_zero()) continue;
      const auto& terms = bracket(i, j);
      if (terms.empty()) continue;
      const Rational f = x[i] * y[j];
      for (const auto& [k, c] : terms) out[k] += f * c;
    }
  }
  return out;
}

RationalVector StructureTable::bracket_basis(std::span<const Rational> x, std::size_t j) const {
  if (x.size() != n_ || j >= n_) throw DimensionMismatch("bracket operand length differs from dimension");
  RationalVector out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (x[i].is_zero()) continue;
    for (const auto& [k, c] : bracket(i, j)) out[k] += x[i] * c;
  }
  return out;
}

std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Rational>> StructureTable::constants() const {
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, Rational>> out;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      for (const auto& [k, c] : bracket(i, j)) out.emplace_back(i, j, k, c);
  return out;
}

// ---------------------------------------------------------------- operations

PolyVector bracket(const Algebra& a, const PolyVector& x, const PolyVector& y) {
  const std::size_t n = a.dim();
  if (x.size() != n || y.size() != n) throw DimensionMismatch("bracket operand length differs from dimension");
  PolyVector out(n, Poly(Rational(0)).rebased(a.params()));
  for (const auto& [key, terms] : a.brackets()) {
    const auto [i, j] = key;
    // x_i y_j - x_j y_i
    const Poly f = x[i] * y[j] - x[j] * y[i];
    if (f.is_zero()) continue;
    for (const auto& [k, c] : terms) out[k] += f * c;
  }
  return out;
}

JacobiReport jacobi_check(const Algebra& a) {
  JacobiReport report;
  const std::size_t n = a.dim();
  const Poly zero = Poly(Rational(0)).rebased(a.params());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        PolyVector r(n, zero);
        accumulate_double(a, i, j, k, r);
        accumulate_double(a, j, k, i, r);
        accumulate_double(a, k, i, j, r);
        BracketTerms nz;
        for (std::size_t t = 0; t < n; ++t)
          if (!r[t].is_zero()) nz.emplace_back(t, std::move(r[t]));
        if (!nz.empty()) report.residuals.emplace(std::array{i, j, k}, std::move(nz));
      }
  return report;
}

bool jacobi_holds(const StructureTable& s) {
  const std::size_t n = s.dim();
  RationalVector r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        std::fill(r.begin(), r.end(), Rational(0));
        accumulate_double(s, i, j, k, r);
        accumulate_double(s, j, k, i, r);
        accumulate_double(s, k, i, j, r);
        if (!is_zero_vector(r)) return false;
      }
  return true;
}

Algebra change_of_basis(const Algebra& a, const RationalMatrix& p) {
  const std::size_t n = a.dim();
  if (p.rows() != n || p.cols() != n) throw DimensionMismatch("change-of-basis matrix shape differs from dimension");
  const RationalMatrix pinv = inverse(p);
  const Poly zero = Poly(Rational(0)).rebased(a.params());
  AlgebraBuilder b(n, a.params());
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      // [Y_u, Y_v] in X coordinates
      PolyVector x(n, zero);
      bool any = false;
      for (const auto& [key, terms] : a.brackets()) {
        const auto [i, j] = key;
        const Rational f = p(u, i) * p(v, j) - p(u, j) * p(v, i);
        if (f.is_zero()) continue;
        any = true;
        for (const auto& [k, c] : terms) x[k] += c * f;
      }
      if (!any) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (x[k].is_zero()) continue;
        for (std::size_t m = 0; m < n; ++m)
          if (!pinv(k, m).is_zero()) b.add(u, v, m, x[k] * pinv(k, m));
      }
    }
  return b.build();
}

Algebra abelian(std::size_t dim) { return Algebra(dim); }

Algebra direct_sum(const Algebra& a, const Algebra& b) {
  ParamSpacePtr space;
  const bool ea = !a.params() || a.params()->empty();
  const bool eb = !b.params() || b.params()->empty();
  if (ea) {
    space = b.params();
  } else if (eb || same_space(a.params(), b.params())) {
    space = a.params();
  } else {
    std::vector<std::string> names = a.params()->names();
    for (const auto& nm : b.params()->names()) {
      if (a.params()->index_of(nm))
        throw ParameterSpaceMismatch("parameter spaces overlap on '" + nm + "' without being identical");
      names.push_back(nm);
    }
    space = make_params(std::move(names));
  }
  const std::size_t off = a.dim();
  AlgebraBuilder out(a.dim() + b.dim(), space);
  for (const auto& [key, terms] : a.brackets())
    for (const auto& [k, c] : terms) out.add(key.first, key.second, k, c.rebased(space));
  for (const auto& [key, terms] : b.brackets())
    for (const auto& [k, c] : terms) out.add(key.first + off, key.second + off, k + off, c.rebased(space));
  return out.build();
}

std::size_t chain_end(const Algebra& a) {
  std::size_t m = 1;
  while (m + 1 < a.dim()) {
    const BracketTerms t = a.basis_bracket(0, m);
    if (t.size() != 1 || t.front().first != m + 1 || !(t.front().second == Poly(1))) break;
    ++m;
  }
  return m;
}

Algebra add_shift_action(const Algebra& a, std::size_t generator, std::size_t s) {
  if (generator >= a.dim()) throw DimensionMismatch("shift generator out of range");
  const std::size_t end = chain_end(a);
  AlgebraBuilder b(a);
  for (std::size_t i = 1; i + s <= end; ++i) b.add(i, generator, i + s, Poly(1));
  return b.build();
}

Algebra extend_by_shift(const Algebra& a, long s) {
  if (s < 2) throw ShiftOutOfRange("shift must be at least 2, got " + std::to_string(s));
  const Algebra sum = direct_sum(a, abelian(1));
  return add_shift_action(sum, a.dim(), static_cast<std::size_t>(s));
}

}  // namespace qflab

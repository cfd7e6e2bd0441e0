#include "qflab/isomorphy.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "qflab/derivations.hpp"
#include "qflab/errors.hpp"

namespace qflab {

namespace {

std::string join(const std::vector<std::size_t>& v) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << "]";
  return os.str();
}

}  // namespace

bool Fingerprint::invariant_equal(const Fingerprint& o) const {
  return dim == o.dim && type == o.type && lcs_dims == o.lcs_dims && center_dim == o.center_dim &&
         derived_dims == o.derived_dims && der_dim == o.der_dim &&
         lcs_centralizer_dims == o.lcs_centralizer_dims;
}

std::string Fingerprint::str() const {
  std::ostringstream os;
  os << "dim=" << dim << " type=" << join(type) << " lcs=" << join(lcs_dims) << " center=" << center_dim
     << " derived=" << join(derived_dims) << " der=" << der_dim << " centralizers=" << join(lcs_centralizer_dims)
     << " rank_in_basis=" << rank_in_basis;
  return os.str();
}

Fingerprint fingerprint(const StructureTable& t) {
  Fingerprint fp;
  const Filtration f = lower_central_series(t);
  const TypeInfo ti = type_of(f, t.dim());
  fp.dim = t.dim();
  fp.type = ti.type;
  fp.lcs_dims = f.dims();
  fp.center_dim = center_dim(t);
  fp.derived_dims = derived_series_dims(t);
  fp.der_dim = derivation_dim(t);
  for (std::size_t k = 1; k < f.ideals.size(); ++k)
    if (f.ideals[k].dim() > 0) fp.lcs_centralizer_dims.push_back(centralizer_dim(t, f.ideals[k]));
  fp.rank_in_basis = rank_in_basis(t);
  return fp;
}

Fingerprint fingerprint(const Algebra& a, const Assignment& values) {
  return fingerprint(StructureTable(a, values));
}

const std::vector<std::pair<FamilySpec, Fingerprint>>& graded_fingerprints(long n) {
  static std::mutex mu;
  static std::map<long, std::vector<std::pair<FamilySpec, Fingerprint>>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::pair<FamilySpec, Fingerprint>> entries;
  for (const FamilySpec& s : graded_entries(n)) entries.emplace_back(s, fingerprint(generate(s)));
  return cache.emplace(n, std::move(entries)).first->second;
}

Classification classify_gr(const Algebra& a, const Assignment& values) {
  Classification out;
  const GradedAlgebra g = gr(a, values);
  out.gr_fingerprint = fingerprint(g.algebra);
  std::vector<FamilySpec> by_rank;
  for (const auto& [spec, fp] : graded_fingerprints(static_cast<long>(a.dim()))) {
    if (!fp.invariant_equal(out.gr_fingerprint)) continue;
    out.candidates.push_back(spec);
    if (fp.rank_in_basis == out.gr_fingerprint.rank_in_basis) by_rank.push_back(spec);
  }
  if (out.candidates.size() == 1) out.match = out.candidates.front();
  else if (by_rank.size() == 1) out.match = by_rank.front();
  return out;
}

CnReduction reduce_cn(long n, const std::vector<Rational>& alpha) {
  const FamilySpec spec = normalized(FamilySpec{Family::Cn, n, 0, 0, 0, alpha, false});
  CnReduction res;
  res.source = generate(spec);
  const std::size_t dim = static_cast<std::size_t>(n);
  res.composed = RationalMatrix::identity(dim);
  Algebra cur = res.source;
  const long m = n / 2;
  for (long j = 1; j <= m - 2; ++j) {
    const Rational a = cur.coefficient(1, static_cast<std::size_t>(n - 2 - 2 * j), dim - 1).constant_term();
    if (a.is_zero()) continue;
    RationalMatrix p = RationalMatrix::identity(dim);
    for (long i = 1; i <= n - 2 - 2 * j; ++i) p(i, i + 2 * j) = a / Rational(2);
    cur = change_of_basis(cur, p);
    res.composed = p * res.composed;
    res.stages.push_back(std::move(p));
  }
  RationalMatrix flip = RationalMatrix::identity(dim);
  flip(dim - 1, dim - 1) = -1;
  cur = change_of_basis(cur, flip);
  res.composed = flip * res.composed;
  res.stages.push_back(std::move(flip));
  res.image = std::move(cur);
  res.equals_target = res.image == generate(FamilySpec{Family::Qn, n, 0, 0, 0, std::nullopt, false});
  return res;
}

}  // namespace qflab

// Acceptance matrix. Prints one PASS/FAIL line per criterion followed by
// indented detail lines; exits nonzero when any criterion fails.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "qflab/audit.hpp"
#include "qflab/derivations.hpp"
#include "qflab/errors.hpp"
#include "qflab/gradation.hpp"
#include "qflab/isomorphy.hpp"

using namespace qflab;

namespace {

constexpr long kNmax = 17;

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void fail(const std::string& why) {
    pass = false;
    details.push_back(why);
  }
  void note(const std::string& s) { details.push_back(s); }
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o) {
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << title << ")\n";
  for (const auto& d : o.details) std::cout << "    " << d << "\n";
  if (!o.pass) ++failures;
}

// Prints the first few entries of a long list, then a count of the rest.
void list_some(Outcome& o, const std::string& head, const std::vector<std::string>& items, std::size_t keep = 6) {
  if (items.empty()) return;
  std::ostringstream os;
  os << head << " (" << items.size() << "): ";
  for (std::size_t i = 0; i < items.size() && i < keep; ++i) os << (i ? ", " : "") << items[i];
  if (items.size() > keep) os << ", ...";
  o.note(os.str());
}

bool nonfiliform(Family f) { return info(f).group != FamilyGroup::Filiform; }

std::map<Family, std::vector<SpecAudit>> audit_catalog() {
  std::map<Family, std::vector<SpecAudit>> out;
  for (const FamilyInfo& fi : all_families()) {
    if (!nonfiliform(fi.family)) continue;
    for (const FamilySpec& s : valid_specs(fi.family, kNmax)) out[fi.family].push_back(audit_spec(s));
  }
  return out;
}

Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 6);
  long p = 0;
  while (p == 0) p = num(rng);
  return Rational(p, den(rng));
}

Outcome jacobi_soundness() {
  Outcome o;
  std::size_t checked = 0;
  std::map<std::string, std::vector<std::string>> bad;
  for (const FamilyInfo& fi : all_families()) {
    if (fi.has_alpha) continue;
    for (const FamilySpec& s : valid_specs(fi.family, kNmax)) {
      ++checked;
      const JacobiReport r = jacobi_check(generate(s));
      if (!r.holds()) bad[std::string(fi.token)].push_back(s.str());
    }
  }
  o.note(std::to_string(checked) + " tuples of the families without alphas, n <= " + std::to_string(kNmax));
  for (const auto& [fam, items] : bad) {
    o.pass = false;
    list_some(o, fam + " violates Jacobi", items, 4);
  }
  return o;
}

Outcome rank_partition(const std::map<Family, std::vector<SpecAudit>>& audits) {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& [fam, list] : audits) {
    std::vector<std::string> wrong, missing, inconsistent;
    for (const SpecAudit& a : list) {
      if (a.no_alpha) {
        (a.inconsistent ? inconsistent : missing).push_back(a.spec.str());
        continue;
      }
      ++checked;
      if (!a.rank_ok()) wrong.push_back(a.spec.str() + " -> " + std::to_string(a.rank));
    }
    const std::string token(info(fam).token);
    if (!wrong.empty()) {
      o.pass = false;
      list_some(o, token + " rank differs from " + std::to_string(info(fam).stated_rank), wrong, 4);
    }
    if (!inconsistent.empty()) {
      o.pass = false;
      list_some(o, token + " constraints contain a nonzero constant (no algebra at all)", inconsistent, 3);
    }
    if (!missing.empty()) {
      o.pass = false;
      list_some(o, token + " has no rational alpha to sample", missing, 3);
    }
  }
  o.note(std::to_string(checked) + " tuples evaluated");
  return o;
}

Outcome cn_onto_qn() {
  Outcome o;
  std::mt19937 rng(20240611);
  for (const long n : {6L, 8L, 10L, 12L}) {
    const std::size_t count = alpha_count(normalized(FamilySpec{Family::Cn, n}));
    for (int trial = 0; trial < 6; ++trial) {
      std::vector<Rational> alpha(count);
      for (auto& a : alpha) a = random_rational(rng);
      const CnReduction r = reduce_cn(n, alpha);
      const FamilySpec spec{Family::Cn, n, 0, 0, 0, alpha, false};
      if (!r.equals_target) o.fail(spec.str() + " does not map onto Q_" + std::to_string(n));
      const std::size_t rank_c = rank_in_basis(r.image);
      if (rank_c != 2) o.fail(spec.str() + " has rank " + std::to_string(rank_c));
    }
    const std::size_t rank_q = rank_in_basis(generate(FamilySpec{Family::Qn, n}));
    if (rank_q != 2) o.fail("Q_" + std::to_string(n) + " has rank " + std::to_string(rank_q));
  }
  o.note("6 random alpha vectors for each n in {6, 8, 10, 12}");
  return o;
}

Outcome e953_checks() {
  Outcome o;
  const Algebra e3 = generate(FamilySpec{Family::E953, 9});
  const long w[] = {1, 1, 2, 3, 4, 5, 6, 7, 5};
  std::vector<Poly> weights;
  RationalMatrix d(9, 9);
  for (std::size_t i = 0; i < 9; ++i) {
    weights.emplace_back(w[i]);
    d(i, i) = w[i];
  }
  if (!verify_weights(e3, weights).pass()) o.fail("diag(1,1,2,3,4,5,6,7,5) is not additive on E_{9,5}^3");
  if (!is_derivation(StructureTable(e3), d)) o.fail("diag(1,1,2,3,4,5,6,7,5) is not a derivation of E_{9,5}^3");

  const Family es[] = {Family::E951, Family::E952, Family::E953};
  std::vector<Fingerprint> fps;
  for (const Family f : es) fps.push_back(fingerprint(generate(FamilySpec{f, 9})));
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const std::string pair = std::string(info(es[i]).token) + "/" + std::string(info(es[j]).token);
      if (fps[i] == fps[j]) o.fail(pair + " share a fingerprint");
      else if (fps[i].invariant_equal(fps[j])) o.note(pair + " separated only by rank_in_basis");
    }

  // The separation gate over every graded entry of each dimension.
  std::size_t entries = 0;
  for (long n = 4; n <= kNmax; ++n) {
    const auto& g = graded_fingerprints(n);
    entries += g.size();
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = i + 1; j < g.size(); ++j) {
        if (g[i].second == g[j].second) o.fail(g[i].first.str() + " and " + g[j].first.str() + " collide");
        else if (g[i].second.invariant_equal(g[j].second))
          o.note(g[i].first.str() + " vs " + g[j].first.str() + ": separated only by rank_in_basis");
      }
  }
  o.note(std::to_string(entries) + " graded entries pairwise distinct for 4 <= n <= " + std::to_string(kNmax));
  return o;
}

Outcome gr_matrix(const std::map<Family, std::vector<SpecAudit>>& audits) {
  Outcome o;
  std::size_t checked = 0;
  for (const auto& [fam, list] : audits) {
    std::vector<std::string> wrong, missing;
    std::size_t sampled = 0;
    for (const SpecAudit& a : list) {
      if (a.no_alpha) {
        missing.push_back(a.spec.str());
        continue;
      }
      ++sampled;
      if (!a.gr_ok())
        wrong.push_back(a.spec.str() + " -> " + (a.gr_found ? a.gr_found->str() : "unclassified (" + a.note + ")"));
    }
    checked += sampled;
    const std::string token(info(fam).token);
    if (!wrong.empty()) {
      o.pass = false;
      list_some(o, token + " gr-class mismatch", wrong, 4);
    }
    if (sampled == 0) o.fail(token + ": no tuple with a rational alpha, nothing to classify");
    else list_some(o, token + " tuples skipped for lack of a rational alpha", missing, 2);
  }
  o.note(std::to_string(checked) + " tuples classified");
  return o;
}

Outcome weight_audit() {
  Outcome o;
  std::size_t checked = 0, printed = 0;
  for (const FamilyInfo& fi : all_families()) {
    if (!nonfiliform(fi.family)) continue;
    std::vector<std::string> wrong, printed_pass;
    for (const FamilySpec& s : valid_specs(fi.family, kNmax)) {
      ++checked;
      if (!verify_claimed_weights(s).pass()) wrong.push_back(s.str());
      if (fi.has_printed_variant) {
        FamilySpec p = s;
        p.printed = true;
        ++printed;
        if (verify_claimed_weights(p).pass()) printed_pass.push_back(p.str());
      }
    }
    if (!wrong.empty()) {
      o.pass = false;
      list_some(o, std::string(fi.token) + " stated form not additive", wrong, 4);
    }
    if (!printed_pass.empty()) {
      o.pass = false;
      list_some(o, std::string(fi.token) + " printed form passes", printed_pass, 4);
    }
  }
  o.note(std::to_string(checked) + " normalized forms pass, " + std::to_string(printed) + " printed forms rejected");
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  std::size_t checked = 0;
  for (const FamilyInfo& fi : all_families())
    for (const FamilySpec& s : valid_specs(fi.family, 6)) {
      const SpecAudit a = audit_spec(s);
      if (a.no_alpha) continue;
      const Algebra alg = generate(a.spec);
      ++checked;
      const std::size_t der = derivation_space(alg).dim;
      const std::size_t ref = oracle::derivation_dim(alg);
      if (der != ref)
        o.fail(a.spec.str() + ": derivations " + std::to_string(der) + ", oracle " + std::to_string(ref));
      if (derivation_dim(StructureTable(alg)) != ref) o.fail(a.spec.str() + ": derivation_dim disagrees");
      std::vector<std::size_t> lcs;
      try {
        lcs = lower_central_series(alg).dims();
      } catch (const NonNilpotent&) {
      }
      if (lcs != oracle::lcs_dims(alg)) o.fail(a.spec.str() + ": lower central series disagrees");
    }
  o.note(std::to_string(checked) + " catalog algebras of dimension <= 6");
  return o;
}

RationalMatrix random_invertible(std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<int> coin(0, 3), val(-2, 2);
  for (;;) {
    RationalMatrix p = RationalMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (coin(rng) == 0) p(i, j) += val(rng);
    try {
      (void)inverse(p);
      return p;
    } catch (const SingularMatrix&) {
    }
  }
}

Outcome type_checks() {
  Outcome o;
  for (long n = 3; n <= kNmax; ++n) {
    std::vector<std::size_t> want(static_cast<std::size_t>(n - 1), 1);
    want[0] = 2;
    if (type_of(generate(FamilySpec{Family::Ln, n})).type != want) o.fail("type of L_" + std::to_string(n));
  }
  std::size_t graded = 0;
  for (long n = 4; n <= kNmax; ++n)
    for (const FamilySpec& s : graded_entries(n)) {
      ++graded;
      const TypeInfo t = type_of(generate(s));
      const std::size_t want_r = (s.family == Family::LplusC || s.family == Family::QplusC) ? 1
                                 : (s.family == Family::E951 || s.family == Family::E952 || s.family == Family::E953) ? 5
                                 : s.family == Family::E73 ? 3
                                 : s.family == Family::Tn4 ? static_cast<std::size_t>(s.n - 4)
                                 : s.family == Family::Tn3 ? static_cast<std::size_t>(s.n - 3)
                                                             : static_cast<std::size_t>(s.r);
      if (!t.quasifiliform || t.r != want_r)
        o.fail(s.str() + ": type r = " + (t.r ? std::to_string(*t.r) : std::string("none")));
    }
  o.note(std::to_string(graded) + " graded entries carry their declared type");

  // Random basis perturbations of concrete catalog algebras.
  std::vector<Algebra> pool;
  for (const FamilyInfo& fi : all_families())
    for (const FamilySpec& s : valid_specs(fi.family, 10)) {
      const SpecAudit a = audit_spec(s);
      if (!a.no_alpha && a.jacobi) pool.push_back(generate(a.spec));
    }
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int trial = 0; trial < 100; ++trial) {
    const Algebra& a = pool[pick(rng)];
    const Algebra b = change_of_basis(a, random_invertible(a.dim(), rng));
    const TypeInfo before = type_of(a);
    const TypeInfo after = type_of(b);
    const TypeInfo graded_type = type_of(gr(b).algebra);
    if (after.type != before.type || graded_type.type != after.type)
      o.fail("trial " + std::to_string(trial) + ": type changed under perturbation or gr");
  }
  o.note("100 perturbed algebras keep their type through gr (pool of " + std::to_string(pool.size()) + ")");
  return o;
}

}  // namespace

int main() {
  const auto audits = audit_catalog();
  report(1, "Jacobi soundness", jacobi_soundness());
  report(2, "rank partition", rank_partition(audits));
  report(3, "C_n maps onto Q_n", cn_onto_qn());
  report(4, "E_{9,5}^3 weights and separation", e953_checks());
  report(5, "gr-class matrix", gr_matrix(audits));
  report(6, "weight audit", weight_audit());
  report(7, "oracle equivalence", oracle_equivalence());
  report(8, "type checks", type_checks());
  std::cout << (failures == 0 ? "all criteria pass" : std::to_string(failures) + " criteria fail") << "\n";
  return failures == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}

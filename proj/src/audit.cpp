#include "qflab/audit.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

#include "qflab/derivations.hpp"
#include "qflab/errors.hpp"
#include "qflab/isomorphy.hpp"

namespace qflab {

bool SpecAudit::rank_ok() const {
  return !no_alpha && rank == static_cast<std::size_t>(info(spec.family).stated_rank);
}

bool SpecAudit::gr_ok() const { return !gr_expected || (gr_found && *gr_found == *gr_expected); }

SpecAudit audit_spec(const FamilySpec& input) {
  SpecAudit out;
  out.spec = normalized(input);
  FamilySpec& s = out.spec;
  const FamilyInfo& fi = info(s.family);
  if (fi.has_alpha && !s.alpha) {
    const ConstraintSet cs = extract_constraints(s);
    out.constraint_count = cs.generators.size();
    const std::size_t count = alpha_count(s);
    if (count == 0) {
      s.alpha = std::vector<Rational>{};
    } else if (auto a = find_generic_alpha(cs, count)) {
      s.alpha = std::move(*a);
    } else {
      out.no_alpha = true;
      out.inconsistent = std::any_of(cs.generators.begin(), cs.generators.end(),
                                     [](const Poly& g) { return g.is_constant(); });
      out.note = "no rational alpha satisfies the " + std::to_string(cs.generators.size()) + " constraints";
      return out;
    }
  }
  const Algebra a = generate(s);
  const StructureTable t(a);
  out.jacobi = jacobi_holds(t);
  if (s.family == Family::Cn) {
    // The printed basis of C_n hides one torus direction; read the rank in
    // the basis produced by the transform to Q_n instead.
    out.rank = rank_in_basis(reduce_cn(s.n, *s.alpha).image);
  } else {
    out.rank = rank_in_basis(t);
  }
  if (s.family != Family::Cn) out.weights = verify_claimed_weights(s).pass();
  if (fi.group != FamilyGroup::Filiform) {
    FamilySpec plain = s;
    plain.alpha.reset();
    plain.printed = false;
    out.gr_expected = gr_class(plain);
    try {
      const Classification c = classify_gr(a);
      out.gr_found = c.match;
      if (!c.match) out.note = std::to_string(c.candidates.size()) + " graded candidates";
    } catch (const NonNilpotent& e) {
      out.note = e.what();
    }
  }
  return out;
}

bool SweepRow::clean() const {
  return no_alpha == 0 && jacobi_fail == 0 && rank_fail == 0 && weights_fail == 0 && gr_fail == 0 &&
         printed_pass == 0;
}

std::vector<SweepRow> sweep(const std::vector<Family>& families, long nmax) {
  std::vector<SweepRow> rows;
  for (const Family f : families) {
    const FamilyInfo& fi = info(f);
    std::map<long, SweepRow> by_n;
    for (const FamilySpec& spec : valid_specs(f, nmax)) {
      SweepRow& row = by_n[spec.n];
      row.family = f;
      row.n = spec.n;
      ++row.tuples;
      const SpecAudit a = audit_spec(spec);
      const std::string name = a.spec.str();
      if (a.no_alpha) {
        ++row.no_alpha;
        row.failures.push_back(name + ": " + a.note);
        continue;
      }
      if (!a.jacobi) {
        ++row.jacobi_fail;
        row.failures.push_back(name + ": Jacobi identity fails");
      }
      if (!a.rank_ok()) {
        ++row.rank_fail;
        row.failures.push_back(name + ": rank " + std::to_string(a.rank) + ", stated " +
                               std::to_string(fi.stated_rank));
      }
      if (a.weights && !*a.weights) {
        ++row.weights_fail;
        row.failures.push_back(name + ": stated diagonal form is not additive");
      }
      if (!a.gr_ok()) {
        ++row.gr_fail;
        row.failures.push_back(name + ": gr is " + (a.gr_found ? a.gr_found->str() : "unclassified") +
                               ", expected " + a.gr_expected->str());
      }
      if (fi.has_printed_variant) {
        FamilySpec printed = a.spec;
        printed.printed = true;
        if (verify_claimed_weights(printed).pass()) {
          ++row.printed_pass;
          row.failures.push_back(printed.str() + ": printed diagonal form passes");
        }
      }
    }
    for (auto& [n, row] : by_n) rows.push_back(std::move(row));
  }
  return rows;
}

std::string sweep_table(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  const auto line = [&os](const std::string& fam, const std::string& n, auto... cols) {
    os << std::left << std::setw(10) << fam << std::right << std::setw(4) << n;
    ((os << std::setw(9) << cols), ...);
    os << "\n";
  };
  line("family", "n", "tuples", "noalpha", "jacobi", "rank", "weights", "gr", "printed", "status");
  SweepRow total;
  std::size_t bad = 0;
  for (const SweepRow& r : rows) {
    line(std::string(info(r.family).token), std::to_string(r.n), r.tuples, r.no_alpha, r.jacobi_fail, r.rank_fail,
         r.weights_fail, r.gr_fail, r.printed_pass, r.clean() ? "ok" : "FAIL");
    total.tuples += r.tuples;
    total.no_alpha += r.no_alpha;
    total.jacobi_fail += r.jacobi_fail;
    total.rank_fail += r.rank_fail;
    total.weights_fail += r.weights_fail;
    total.gr_fail += r.gr_fail;
    total.printed_pass += r.printed_pass;
    if (!r.clean()) ++bad;
  }
  line("total", "", total.tuples, total.no_alpha, total.jacobi_fail, total.rank_fail, total.weights_fail,
       total.gr_fail, total.printed_pass, bad == 0 ? "ok" : std::to_string(bad) + " bad");
  return os.str();
}

}  // namespace qflab

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qflab/catalog.hpp"

namespace qflab {

/// Every check the catalog makes about one parameter tuple.
struct SpecAudit {
  /// Normalized, with the alphas used (when the family has any).
  FamilySpec spec;
  /// Parametric family with no rational alpha found by the search.
  bool no_alpha = false;
  /// Some constraint is a nonzero constant: no alpha works even over C.
  bool inconsistent = false;
  std::size_t constraint_count = 0;
  bool jacobi = false;
  std::size_t rank = 0;
  /// Unset when the family carries no stated diagonal form.
  std::optional<bool> weights;
  /// Unset for the filiform families.
  std::optional<FamilySpec> gr_expected;
  std::optional<FamilySpec> gr_found;
  std::string note;

  bool rank_ok() const;
  bool gr_ok() const;
};

SpecAudit audit_spec(const FamilySpec& spec);

/// One (family, n) cell of the sweep.
struct SweepRow {
  Family family = Family::Ln;
  long n = 0;
  std::size_t tuples = 0;
  std::size_t no_alpha = 0;
  std::size_t jacobi_fail = 0;
  std::size_t rank_fail = 0;
  std::size_t weights_fail = 0;
  std::size_t gr_fail = 0;
  /// Printed variants that pass the weight audit (they should not).
  std::size_t printed_pass = 0;
  std::vector<std::string> failures;

  bool clean() const;
};

std::vector<SweepRow> sweep(const std::vector<Family>& families, long nmax);
/// Fixed-width text table, one line per row plus a totals line.
std::string sweep_table(const std::vector<SweepRow>& rows);

}  // namespace qflab

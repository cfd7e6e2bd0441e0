#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qflab/liealg.hpp"

namespace qflab {

enum class Family {
  // filiform, rank >= 1
  Ln,
  Qn,
  Ank,
  Bnk,
  Cn,
  // naturally graded quasi-filiform
  LplusC,
  QplusC,
  Lnr,
  Qnr,
  Tn4,
  Tn3,
  E951,
  E952,
  E953,
  E73,
  // quasi-filiform of nonzero rank
  AplusC,
  LshiftC,
  AshiftC,
  BplusC,
  QshiftaC,
  BshiftaC,
  QshiftbC,
  QcC,
  BcC,
  Cnrk,
  Dnrk,
  Enrk,
  Fnrk,
  Gnrk,
  Hnrk,
};

enum class FamilyGroup { Filiform, NaturallyGraded, NonzeroRank };

/// Static facts about a family.
struct FamilyInfo {
  Family family;
  std::string_view token;
  std::string_view display;
  FamilyGroup group;
  bool uses_r;
  bool uses_k;
  bool uses_l;
  bool has_alpha;
  /// A verbatim variant differing from the encoded normalization exists.
  bool has_printed_variant;
  /// Rank stated in the classification (0 when none is stated).
  int stated_rank;
};

const std::vector<FamilyInfo>& all_families();
const FamilyInfo& info(Family f);
std::optional<Family> family_from_token(std::string_view token);

struct FamilySpec {
  Family family = Family::Ln;
  long n = 0;
  long r = 0;
  long k = 0;
  long l = 0;
  std::optional<std::vector<Rational>> alpha;
  bool printed = false;

  /// e.g. "Lnr(n=9,r=5)", "Ank(n=8,k=3,alpha=[1,0])".
  std::string str() const;
  static FamilySpec parse(std::string_view text);
  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

/// Fills the implied parameters (fixed dimensions, r for T-type families) and
/// checks every range. Throws InvalidParameters naming the violated range.
FamilySpec normalized(FamilySpec spec);

/// Number of free alpha parameters (t - 1, or m - 2 for Cn).
std::size_t alpha_count(const FamilySpec& spec);
/// Parameter space alpha1, ..., alphaN.
ParamSpacePtr alpha_space(std::size_t count);
Assignment alpha_assignment(const std::vector<Rational>& alpha);

/// Structure constants of the family. With spec.alpha set the result is
/// concrete; otherwise the alphas stay symbolic.
Algebra generate(const FamilySpec& spec);

/// Every valid parameter tuple with n <= nmax (alphas left symbolic).
std::vector<FamilySpec> valid_specs(Family f, long nmax);

/// a_{i,j} for 1 <= i < j, i + j <= bound, with a_{i,i+1} = alpha_i for
/// i < t and alpha_i = 0 from t on.
struct AijTable {
  long bound = 0;
  long t = 0;
  ParamSpacePtr space;
  std::map<std::pair<long, long>, Poly> values;

  /// Zero outside the declared range.
  Poly at(long i, long j) const;
};

AijTable aij_table(long bound, long t, const ParamSpacePtr& space = nullptr);

struct ConstraintSet {
  ParamSpacePtr space;
  /// Monic, deduplicated and sorted.
  std::vector<Poly> generators;

  bool satisfied_by(const Assignment& values) const;
};

/// Jacobi residual components of the family with its alphas left symbolic.
ConstraintSet extract_constraints(const FamilySpec& spec);

/// Deterministic search for an alpha vector satisfying the constraints with
/// as many nonzero entries as possible. Variables are fixed in order; a
/// variable pinned by a linear or quadratic generator takes its rational
/// roots, a free one is tried on a small grid.
std::optional<std::vector<Rational>> find_generic_alpha(const ConstraintSet& cs, std::size_t count);

/// Parameter space lambda0, lambda1, lambda_last, k used by weight vectors.
const ParamSpacePtr& weight_space();

/// Diagonal form stated for the family, as linear forms in the eigenvalues.
/// Throws UnknownFamily when the family carries no stated form.
std::vector<Poly> claimed_weights(const FamilySpec& spec);

/// The naturally graded class named in the family's header.
FamilySpec gr_class(const FamilySpec& spec);

/// Naturally graded quasi-filiform entries of dimension n.
std::vector<FamilySpec> graded_entries(long n);

}  // namespace qflab

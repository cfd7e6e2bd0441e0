#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qflab/catalog.hpp"
#include "qflab/gradation.hpp"

namespace qflab {

/// Invariants used to tell the catalog's graded classes apart. Everything
/// except rank_in_basis is independent of the basis.
struct Fingerprint {
  std::size_t dim = 0;
  std::vector<std::size_t> type;
  std::vector<std::size_t> lcs_dims;
  std::size_t center_dim = 0;
  std::vector<std::size_t> derived_dims;
  std::size_t der_dim = 0;
  /// Centralizers of g_2, g_3, ... (g_2 = [g, g]); the later terms are what
  /// separate E_{9,5}^1 from E_{9,5}^3.
  std::vector<std::size_t> lcs_centralizer_dims;
  /// Basis dependent: diagonal derivations in the basis at hand.
  std::size_t rank_in_basis = 0;

  bool invariant_equal(const Fingerprint& o) const;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
  std::string str() const;
};

Fingerprint fingerprint(const StructureTable& t);
Fingerprint fingerprint(const Algebra& a, const Assignment& values = {});

/// Fingerprints of the naturally graded quasi-filiform entries of dimension n
/// (memoized; safe to call concurrently).
const std::vector<std::pair<FamilySpec, Fingerprint>>& graded_fingerprints(long n);

struct Classification {
  /// Set when exactly one entry matches.
  std::optional<FamilySpec> match;
  /// Entries agreeing on the basis-independent invariants.
  std::vector<FamilySpec> candidates;
  Fingerprint gr_fingerprint;
};

/// Matches gr(A) against the graded entries of the same dimension. Ties on
/// the invariant part are broken by rank_in_basis.
Classification classify_gr(const Algebra& a, const Assignment& values = {});

struct CnReduction {
  Algebra source;
  Algebra image;
  /// Applied in order; composed = stages.back() * ... * stages.front().
  std::vector<RationalMatrix> stages;
  RationalMatrix composed;
  bool equals_target = false;
};

/// Removes the alphas of C_n one at a time (alpha_1 first), each with
/// Y_i -> Y_i + (a/2) Y_{i+2j} where a is the current coefficient of
/// [Y_1, Y_{n-2-2j}] on Y_{n-1}, then negates Y_{n-1}. The result is
/// compared with Q_n structurally.
CnReduction reduce_cn(long n, const std::vector<Rational>& alpha);

}  // namespace qflab

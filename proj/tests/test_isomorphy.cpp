#include <doctest.h>

#include <random>

#include "qflab/catalog.hpp"
#include "qflab/isomorphy.hpp"

using namespace qflab;

namespace {

// Unit upper-triangular times a random diagonal: always invertible.
RationalMatrix random_basis(std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<long> d(-3, 3), s(1, 3);
  RationalMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    p(i, i) = Rational(s(rng)) * (d(rng) < 0 ? -1 : 1);
    for (std::size_t j = i + 1; j < n; ++j) p(i, j) = Rational(d(rng), s(rng));
  }
  // mix the lower part too so the flag is not preserved
  RationalMatrix l = RationalMatrix::identity(n);
  for (std::size_t i = 1; i < n; ++i) l(i, i - 1) = Rational(d(rng));
  return l * p;
}

}  // namespace

TEST_SUITE("isomorphy") {
  TEST_CASE("fingerprint is invariant under change of basis") {
    std::mt19937 rng(31);
    for (const long n : {7L, 9L})
      for (const FamilySpec& s : graded_entries(n)) {
        const Algebra a = generate(s);
        const Algebra b = change_of_basis(a, random_basis(a.dim(), rng));
        CAPTURE(s.str());
        CHECK(fingerprint(a).invariant_equal(fingerprint(b)));
      }
  }

  TEST_CASE("distinct graded classes") {
    const Fingerprint l = fingerprint(generate(FamilySpec{Family::Lnr, 7, 3}));
    const Fingerprint q = fingerprint(generate(FamilySpec{Family::Qnr, 7, 3}));
    CHECK_FALSE(l.invariant_equal(q));
    const Fingerprint e1 = fingerprint(generate(FamilySpec{Family::E951}));
    const Fingerprint e3 = fingerprint(generate(FamilySpec{Family::E953}));
    CHECK_FALSE(e1.invariant_equal(e3));
    CHECK(e1.lcs_centralizer_dims != e3.lcs_centralizer_dims);
    for (const long n : {6L, 8L, 10L, 11L}) {
      const auto& fps = graded_fingerprints(n);
      for (std::size_t i = 0; i < fps.size(); ++i)
        for (std::size_t j = i + 1; j < fps.size(); ++j) {
          CAPTURE(fps[i].first.str());
          CAPTURE(fps[j].first.str());
          CHECK_FALSE(fps[i].second == fps[j].second);
        }
    }
  }

  TEST_CASE("classification through gr") {
    const Classification d = classify_gr(generate(FamilySpec{Family::Dnrk, 9, 3, 2}));
    REQUIRE(d.match);
    CHECK(*d.match == FamilySpec{Family::Lnr, 9, 3});
    const Classification q = classify_gr(generate(FamilySpec{Family::QcC, 9}));
    REQUIRE(q.match);
    CHECK(*q.match == FamilySpec{Family::QplusC, 9});
    for (const FamilySpec& s : graded_entries(9)) {
      const Classification c = classify_gr(generate(s));
      REQUIRE(c.match);
      CHECK(*c.match == s);
    }
  }

  TEST_CASE("C_n reduces to Q_n") {
    const CnReduction r = reduce_cn(6, {Rational(1, 2)});
    CHECK(r.equals_target);
    CHECK(r.stages.size() == 2);
    CHECK(change_of_basis(r.source, r.composed) == r.image);
    CHECK(fingerprint(r.source).invariant_equal(fingerprint(generate(FamilySpec{Family::Qn, 6}))));

    const CnReduction c8 = reduce_cn(8, {Rational(2), Rational(5)});
    CHECK(c8.equals_target);
    CHECK(c8.stages.size() == 3);

    // No alpha to remove; only the sign of the last vector changes.
    const CnReduction z = reduce_cn(8, {Rational(0), Rational(0)});
    CHECK(z.stages.size() == 1);
    CHECK(z.equals_target);
    CHECK_FALSE(z.source == generate(FamilySpec{Family::Qn, 8}));
  }
}

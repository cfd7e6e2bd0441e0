#include <doctest.h>

#include <random>

#include "qflab/catalog.hpp"
#include "qflab/derivations.hpp"
#include "qflab/errors.hpp"
#include "qflab/liealg.hpp"

using namespace qflab;

namespace {

Algebra L(long n) { return generate(FamilySpec{Family::Ln, n}); }
Algebra Q(long n) { return generate(FamilySpec{Family::Qn, n}); }

RationalVector e(std::size_t n, std::size_t i) {
  RationalVector v(n);
  v[i] = 1;
  return v;
}

RationalMatrix random_invertible(std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<int> coin(0, 2), val(-3, 3);
  for (;;) {
    RationalMatrix p(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i == j || coin(rng) == 0) p(i, j) = Rational(val(rng), 2);
    try {
      (void)inverse(p);
      return p;
    } catch (const SingularMatrix&) {
    }
  }
}

}  // namespace

TEST_SUITE("liealg") {
  TEST_CASE("brackets of the model algebras") {
    const StructureTable l4(L(4));
    CHECK(l4.bracket(e(4, 0), e(4, 1)) == e(4, 2));
    const StructureTable q6(Q(6));
    RationalVector minus_x5(6);
    minus_x5[5] = -1;
    CHECK(q6.bracket(e(6, 2), e(6, 3)) == minus_x5);
    CHECK(q6.bracket(e(6, 1), e(6, 4)) == e(6, 5));
    const RationalVector x{1, 2, Rational(1, 3), 0, -1, 5};
    CHECK(is_zero_vector(q6.bracket(x, x)));
    CHECK(Q(6).brackets().size() == 5);
  }

  TEST_CASE("builder keeps antisymmetry and accumulates") {
    AlgebraBuilder b(3);
    b.add(1, 0, 2, 1).add(0, 1, 2, 3);
    const Algebra a = b.build();
    CHECK(a.coefficient(0, 1, 2) == Poly(2));
    CHECK(a.coefficient(1, 0, 2) == Poly(-2));
    AlgebraBuilder c(3);
    c.add(0, 1, 2, 1).add(1, 0, 2, 1);
    CHECK(c.build().brackets().empty());
    CHECK_THROWS_AS(AlgebraBuilder(3).add(0, 3, 1, 1), DimensionMismatch);
    CHECK_THROWS_AS(AlgebraBuilder(3).add(1, 1, 2, 1), InvalidParameters);
  }

  TEST_CASE("Jacobi on the model algebras") {
    for (long n = 3; n <= 17; ++n) CHECK(jacobi_check(L(n)).holds());
    CHECK(jacobi_check(abelian(5)).holds());
    AlgebraBuilder bad(L(4));
    bad.add(1, 3, 2, 1);
    const JacobiReport r = jacobi_check(bad.build());
    CHECK_FALSE(r.holds());
    // By hand: (0,1,2) leaves [[X2,X0],X1] = X2 and (0,1,3) leaves [[X1,X3],X0] = -X3.
    REQUIRE(r.residuals.size() == 2);
    const auto& r012 = r.residuals.at({0, 1, 2});
    const auto& r013 = r.residuals.at({0, 1, 3});
    REQUIRE(r012.size() == 1);
    REQUIRE(r013.size() == 1);
    CHECK(r012[0].first == 2);
    CHECK(r012[0].second == Poly(1));
    CHECK(r013[0].first == 3);
    CHECK(r013[0].second == Poly(-1));
    CHECK_FALSE(jacobi_holds(StructureTable(bad.build())));
  }

  TEST_CASE("symbolic Jacobi residuals vanish at a solution") {
    const FamilySpec s{Family::Ank, 5, 0, 2};
    const Algebra a = generate(s);
    const JacobiReport r = jacobi_check(a);
    const ConstraintSet cs = extract_constraints(s);
    const auto alpha = find_generic_alpha(cs, alpha_count(s));
    REQUIRE(alpha);
    const Assignment at = alpha_assignment(*alpha);
    for (const auto& [triple, terms] : r.residuals)
      for (const auto& [k, c] : terms) CHECK(c.eval(at).is_zero());
  }

  TEST_CASE("change of basis") {
    const Algebra l4 = L(4);
    CHECK(change_of_basis(l4, RationalMatrix::identity(4)) == l4);
    RationalMatrix two = RationalMatrix::identity(4);
    for (std::size_t i = 0; i < 4; ++i) two(i, i) = 2;
    const Algebra scaled = change_of_basis(l4, two);
    for (const auto& [key, terms] : l4.brackets())
      for (const auto& [k, c] : terms) CHECK(scaled.coefficient(key.first, key.second, k) == Rational(2) * c);
    CHECK_THROWS_AS(change_of_basis(l4, RationalMatrix(4, 4)), SingularMatrix);
  }

  TEST_CASE("change of basis composes and preserves Jacobi") {
    std::mt19937 rng(17);
    const Algebra algs[] = {L(6), Q(6), generate(FamilySpec{Family::Lnr, 7, 3})};
    for (const Algebra& a : algs)
      for (int t = 0; t < 5; ++t) {
        const RationalMatrix p = random_invertible(a.dim(), rng);
        const RationalMatrix q = random_invertible(a.dim(), rng);
        const Algebra ap = change_of_basis(a, p);
        CHECK(change_of_basis(ap, q) == change_of_basis(a, q * p));
        CHECK(change_of_basis(ap, inverse(p)) == a);
        CHECK(jacobi_check(ap).holds());
        CHECK(derivation_dim(StructureTable(ap)) == derivation_dim(StructureTable(a)));
      }
  }

  TEST_CASE("direct sum") {
    const Algebra s = direct_sum(L(4), abelian(1));
    CHECK(s.dim() == 5);
    CHECK(s.brackets().size() == 2);
    CHECK(s.coefficient(0, 1, 2) == Poly(1));
    CHECK(s.coefficient(0, 2, 3) == Poly(1));
    CHECK(direct_sum(abelian(2), abelian(3)) == abelian(5));
    CHECK(direct_sum(Q(6), L(5)).dim() == 11);
    CHECK(jacobi_check(direct_sum(Q(6), L(5))).holds());
  }

  TEST_CASE("extension by a shift") {
    CHECK(extend_by_shift(Q(6), 2) == generate(FamilySpec{Family::QshiftaC, 7, 0, 0, 2}));
    // Past the end of the chain nothing is appended.
    CHECK(extend_by_shift(L(5), 4) == direct_sum(L(5), abelian(1)));
    CHECK(extend_by_shift(L(5), 9) == direct_sum(L(5), abelian(1)));
    CHECK_THROWS_AS(extend_by_shift(L(5), 1), ShiftOutOfRange);
    CHECK_THROWS_AS(extend_by_shift(L(5), -3), ShiftOutOfRange);
    // diag(l0, l1, l0 + l1, ..., 4 l0 + l1, s l0) stays additive.
    const Poly l0 = Poly::variable(weight_space(), "lambda0");
    const Poly l1 = Poly::variable(weight_space(), "lambda1");
    for (long s = 2; s <= 4; ++s) {
      std::vector<Poly> w{l0};
      for (long i = 1; i < 6; ++i) w.push_back(Rational(i - 1) * l0 + l1);
      w.push_back(Rational(s) * l0);
      CHECK(verify_weights(extend_by_shift(L(6), s), w).pass());
      w.back() = Rational(s + 1) * l0;
      CHECK_FALSE(verify_weights(extend_by_shift(L(6), s), w).pass());
    }
    CHECK(chain_end(L(6)) == 5);
    CHECK(chain_end(Q(6)) == 4);
  }

  TEST_CASE("specialize") {
    const Algebra a = generate(FamilySpec{Family::Ank, 7, 0, 2});
    CHECK_FALSE(a.is_concrete());
    const Algebra c = a.specialize(alpha_assignment({1, 2}));
    CHECK(c.is_concrete());
    CHECK(c == generate(FamilySpec{Family::Ank, 7, 0, 2, 0, std::vector<Rational>{1, 2}}));
  }
}

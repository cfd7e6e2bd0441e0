#include <doctest.h>

#include <random>
#include <stdexcept>

#include "oracle.hpp"
#include "qflab/errors.hpp"
#include "qflab/linalg.hpp"
#include "qflab/poly.hpp"

using namespace qflab;

namespace {

Rational rnd(std::mt19937& rng, long span = 7) {
  std::uniform_int_distribution<long> num(-span, span), den(1, span);
  return Rational(num(rng), den(rng));
}

}  // namespace

TEST_SUITE("exact") {
  TEST_CASE("rational basics") {
    CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
    CHECK(Rational(4, -6) == Rational(-2, 3));
    CHECK(Rational(-2, 3).denominator() == 3);
    CHECK(Rational::parse(" -7/21 ") == Rational(-1, 3));
    CHECK(Rational::parse("12").is_integer());
    CHECK(Rational(3, 9).str() == "1/3");
    CHECK(Rational(6, 3).str() == "2");
    CHECK_THROWS_AS(Rational::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Rational::parse("x"), ParseError);
    CHECK_THROWS_AS(Rational(0).inverse(), std::domain_error);
  }

  TEST_CASE("rational field axioms on random samples") {
    std::mt19937 rng(11);
    for (int t = 0; t < 200; ++t) {
      const Rational a = rnd(rng), b = rnd(rng), c = rnd(rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a - a == Rational(0));
      if (!a.is_zero()) CHECK(a * a.inverse() == Rational(1));
    }
  }

  TEST_CASE("polynomial arithmetic") {
    const auto sp = make_params({"alpha1", "alpha2"});
    const Poly a1 = Poly::variable(sp, "alpha1");
    const Poly a2 = Poly::variable(sp, 1);
    const Poly p = (a1 + a2) * a1;
    CHECK(p == a1 * a1 + a1 * a2);
    CHECK((p - p).is_zero());
    CHECK(Poly(Rational(1, 2)) + Poly(Rational(1, 3)) == Poly(Rational(5, 6)));
    CHECK(p.total_degree() == 2);
    CHECK(Poly::parse(p.str(), sp) == p);
    CHECK(Poly::parse("3/2*alpha1^2 - alpha2 + 1", sp).str() == "3/2*alpha1^2 - alpha2 + 1");
    CHECK(Poly::parse("-2*alpha2 + 4", sp).monic() == Poly::parse("alpha2 - 2", sp));
  }

  TEST_CASE("polynomial ring axioms on random samples") {
    const auto sp = make_params({"x", "y", "z"});
    std::mt19937 rng(5);
    const auto random_poly = [&] {
      Poly p = Poly(Rational(0)).rebased(sp);
      for (int i = 0; i < 4; ++i) {
        Poly m = rnd(rng);
        for (std::size_t v = 0; v < 3; ++v)
          for (int e = std::uniform_int_distribution<int>(0, 2)(rng); e > 0; --e) m *= Poly::variable(sp, v);
        p += m;
      }
      return p;
    };
    for (int t = 0; t < 50; ++t) {
      const Poly a = random_poly(), b = random_poly(), c = random_poly();
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * b == b * a);
      CHECK((a - a).is_zero());
      CHECK(Poly::parse(a.str(), sp) == a);
      const Assignment at{{"x", rnd(rng)}, {"y", rnd(rng)}, {"z", rnd(rng)}};
      CHECK((a * b).eval(at) == a.eval(at) * b.eval(at));
    }
  }

  TEST_CASE("evaluation and substitution") {
    const auto sp = make_params({"alpha1", "alpha2"});
    const Poly a1 = Poly::variable(sp, "alpha1");
    CHECK((a1 * a1 + 2).eval({{"alpha1", 3}}) == Rational(11));
    CHECK(Poly().eval({}) == Rational(0));
    CHECK_THROWS_AS(a1.eval({}), MissingParameter);
    const Poly q = a1 * Poly::variable(sp, "alpha2") + a1;
    CHECK(q.substitute({{"alpha1", 2}}) == Rational(2) * Poly::variable(sp, "alpha2") + 2);
  }

  TEST_CASE("mixing parameter spaces is rejected") {
    const Poly a = Poly::variable(make_params({"a"}), 0);
    const Poly b = Poly::variable(make_params({"b"}), 0);
    CHECK_THROWS_AS(a + b, ParameterSpaceMismatch);
    CHECK(a + 1 == 1 + a);
  }

  TEST_CASE("linear solve: identity and zero") {
    const RationalMatrix id = RationalMatrix::identity(3);
    const std::vector<Rational> rhs{1, Rational(-2, 3), 5};
    const auto s = linear_solve(id, rhs);
    REQUIRE(s);
    CHECK(s->particular == rhs);
    CHECK(s->kernel.empty());
    const RationalMatrix z(2, 2);
    const auto k = linear_solve(z, std::vector<Rational>{0, 0});
    REQUIRE(k);
    CHECK(k->kernel.size() == 2);
    CHECK_FALSE(linear_solve(z, std::vector<Rational>{1, 0}));
  }

  TEST_CASE("linear solve agrees with the dense oracle") {
    std::mt19937 rng(3);
    for (int t = 0; t < 40; ++t) {
      const std::size_t rows = 5, cols = 7;
      RationalMatrix m(rows, cols);
      oracle::Dense dense(rows, std::vector<Rational>(cols));
      for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
          if (std::uniform_int_distribution<int>(0, 2)(rng)) dense[i][j] = m(i, j) = rnd(rng);
      if (t % 4 == 0)
        for (std::size_t j = 0; j < cols; ++j) dense[4][j] = m(4, j) = m(0, j) - m(1, j);  // forced dependency
      const std::size_t rank = oracle::dense_rank(dense);
      CHECK(matrix_rank(m) == rank);
      std::vector<Rational> x(cols);
      for (auto& v : x) v = rnd(rng);
      const std::vector<Rational> b = m * x;
      const auto s = linear_solve(m, b);
      REQUIRE(s);
      CHECK(m * s->particular == b);
      CHECK(s->kernel.size() == cols - rank);
      for (const auto& v : s->kernel) CHECK(is_zero_vector(m * v));
    }
  }

  TEST_CASE("sparse and dense entry points agree") {
    RationalMatrix m(3, 4);
    m(0, 0) = 2;
    m(0, 3) = -1;
    m(1, 1) = Rational(1, 3);
    m(2, 0) = 4;
    m(2, 3) = -2;
    std::vector<SparseRow> rows{{{0, 2}, {3, -1}}, {{1, Rational(1, 3)}}, {{0, 4}, {3, -2}}};
    CHECK(matrix_rank(4, rows) == matrix_rank(m));
    CHECK(kernel_basis(4, rows).size() == 2);
  }

  TEST_CASE("inverse") {
    RationalMatrix m(2, 2);
    m(0, 0) = 1;
    m(0, 1) = 2;
    m(1, 0) = 3;
    m(1, 1) = 4;
    CHECK(inverse(m) * m == RationalMatrix::identity(2));
    m(1, 0) = 2;
    m(1, 1) = 4;
    CHECK_THROWS_AS(inverse(m), SingularMatrix);
  }

  TEST_CASE("echelon basis") {
    EchelonBasis b(3);
    CHECK(b.insert({2, 4, 0}));
    CHECK_FALSE(b.insert({1, 2, 0}));
    CHECK(b.insert({0, 0, 5}));
    CHECK(b.dim() == 2);
    CHECK(b.contains({3, 6, -1}));
    CHECK_FALSE(b.contains({0, 1, 0}));
  }
}

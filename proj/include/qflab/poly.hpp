#pragma once

#include <concepts>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qflab/rational.hpp"

namespace qflab {

/// Ordered list of parameter names. Shared and never mutated once built, so
/// two polynomials can be combined only when they agree on it.
class ParamSpace {
 public:
  explicit ParamSpace(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::optional<std::size_t> index_of(std::string_view name) const;

  friend bool operator==(const ParamSpace&, const ParamSpace&) = default;

 private:
  std::vector<std::string> names_;
};

using ParamSpacePtr = std::shared_ptr<const ParamSpace>;

ParamSpacePtr make_params(std::vector<std::string> names);

/// Both pointers null/empty, or equal by value.
bool same_space(const ParamSpacePtr& a, const ParamSpacePtr& b);

/// Values for named parameters.
using Assignment = std::map<std::string, Rational, std::less<>>;

/// Power product over a parameter space: sorted (variable index, exponent)
/// pairs with positive exponents.
class Monomial {
 public:
  Monomial() = default;
  static Monomial variable(std::uint32_t index, std::uint32_t exponent = 1);

  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& factors() const { return factors_; }
  std::uint32_t degree() const { return degree_; }
  bool is_one() const { return factors_.empty(); }
  std::uint32_t exponent(std::uint32_t var) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<std::pair<std::uint32_t, std::uint32_t>> factors_;
  std::uint32_t degree_ = 0;
};

/// Graded lexicographic order, largest first: total degree decides, then the
/// exponent of the earliest parameter.
struct GrlexDescending {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Sparse multivariate polynomial with rational coefficients. Terms are kept in
/// descending graded-lex order with no zero coefficients, so equal polynomials
/// have identical representations.
class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, GrlexDescending>;

  Poly() = default;
  Poly(const Rational& c);  // NOLINT: constants convert implicitly
  template <std::integral T>
  Poly(T c) : Poly(Rational(c)) {}  // NOLINT

  static Poly variable(const ParamSpacePtr& space, std::size_t index);
  static Poly variable(const ParamSpacePtr& space, std::string_view name);

  /// Reads sums of products of rationals, parameter names and powers
  /// ("3/2*alpha1^2*alpha2 - alpha3 + 1"); parentheses are accepted.
  static Poly parse(std::string_view text, const ParamSpacePtr& space);

  const ParamSpacePtr& space() const { return space_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of the constant monomial.
  Rational constant_term() const;
  std::uint32_t total_degree() const;
  const Rational& leading_coefficient() const;
  /// Divides by the leading coefficient; zero stays zero.
  Poly monic() const;

  Rational eval(const Assignment& values) const;
  /// Substitutes the assigned parameters; others are kept.
  Poly substitute(const Assignment& values) const;
  /// Rebinds to a space containing every parameter this polynomial uses.
  Poly rebased(const ParamSpacePtr& target) const;

  std::string str() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  Poly operator-() const;

  /// Structural equality of the canonical term maps.
  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }

  /// Orders polynomials by their term lists; used to sort constraint sets.
  friend bool operator<(const Poly& a, const Poly& b);

 private:
  void add_term(const Monomial& m, const Rational& c);
  void adopt_space(const ParamSpacePtr& other);

  ParamSpacePtr space_;
  TermMap terms_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

}  // namespace qflab

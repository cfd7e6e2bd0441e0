#include "qflab/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "qflab/errors.hpp"

namespace qflab {

ParamSpace::ParamSpace(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i)
    for (std::size_t j = i + 1; j < names_.size(); ++j)
      if (names_[i] == names_[j]) throw ParameterSpaceMismatch("duplicate parameter '" + names_[i] + "'");
}

std::optional<std::size_t> ParamSpace::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

ParamSpacePtr make_params(std::vector<std::string> names) {
  return std::make_shared<const ParamSpace>(std::move(names));
}

bool same_space(const ParamSpacePtr& a, const ParamSpacePtr& b) {
  const bool ea = !a || a->empty();
  const bool eb = !b || b->empty();
  if (ea || eb) return ea && eb;
  return a == b || *a == *b;
}

// ---------------------------------------------------------------- Monomial

Monomial Monomial::variable(std::uint32_t index, std::uint32_t exponent) {
  Monomial m;
  if (exponent > 0) {
    m.factors_.emplace_back(index, exponent);
    m.degree_ = exponent;
  }
  return m;
}

std::uint32_t Monomial::exponent(std::uint32_t var) const {
  for (const auto& [v, e] : factors_)
    if (v == var) return e;
  return 0;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.factors_.reserve(a.factors_.size() + b.factors_.size());
  auto ia = a.factors_.begin();
  auto ib = b.factors_.begin();
  while (ia != a.factors_.end() || ib != b.factors_.end()) {
    if (ib == b.factors_.end() || (ia != a.factors_.end() && ia->first < ib->first)) {
      r.factors_.push_back(*ia++);
    } else if (ia == a.factors_.end() || ib->first < ia->first) {
      r.factors_.push_back(*ib++);
    } else {
      r.factors_.emplace_back(ia->first, ia->second + ib->second);
      ++ia;
      ++ib;
    }
  }
  r.degree_ = a.degree_ + b.degree_;
  return r;
}

bool GrlexDescending::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  auto ia = fa.begin();
  auto ib = fb.begin();
  while (ia != fa.end() && ib != fb.end()) {
    if (ia->first != ib->first) return ia->first < ib->first;  // a has the earlier variable
    if (ia->second != ib->second) return ia->second > ib->second;
    ++ia;
    ++ib;
  }
  return ia != fa.end() && ib == fb.end();
}

// -------------------------------------------------------------------- Poly

Poly::Poly(const Rational& c) {
  if (!c.is_zero()) terms_.emplace(Monomial{}, c);
}

Poly Poly::variable(const ParamSpacePtr& space, std::size_t index) {
  if (!space || index >= space->size()) throw ParameterSpaceMismatch("parameter index out of range");
  Poly p;
  p.space_ = space;
  p.terms_.emplace(Monomial::variable(static_cast<std::uint32_t>(index)), Rational(1));
  return p;
}

Poly Poly::variable(const ParamSpacePtr& space, std::string_view name) {
  const auto idx = space ? space->index_of(name) : std::nullopt;
  if (!idx) throw ParameterSpaceMismatch("unknown parameter '" + std::string(name) + "'");
  return variable(space, *idx);
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rational Poly::constant_term() const {
  const auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

std::uint32_t Poly::total_degree() const { return terms_.empty() ? 0 : terms_.begin()->first.degree(); }

const Rational& Poly::leading_coefficient() const {
  static const Rational zero;
  return terms_.empty() ? zero : terms_.begin()->second;
}

Poly Poly::monic() const {
  if (terms_.empty()) return *this;
  return *this * leading_coefficient().inverse();
}

Rational Poly::eval(const Assignment& values) const {
  Rational total;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (const auto& [var, e] : m.factors()) {
      const std::string& nm = space_->name(var);
      const auto it = values.find(nm);
      if (it == values.end()) throw MissingParameter(nm);
      for (std::uint32_t k = 0; k < e; ++k) t *= it->second;
    }
    total += t;
  }
  return total;
}

Poly Poly::substitute(const Assignment& values) const {
  Poly out;
  out.space_ = space_;
  for (const auto& [m, c] : terms_) {
    Rational coef = c;
    Monomial rest;
    for (const auto& [var, e] : m.factors()) {
      const auto it = values.find(space_->name(var));
      if (it == values.end()) {
        rest = rest * Monomial::variable(var, e);
      } else {
        for (std::uint32_t k = 0; k < e; ++k) coef *= it->second;
      }
    }
    out.add_term(rest, coef);
  }
  return out;
}

Poly Poly::rebased(const ParamSpacePtr& target) const {
  if (is_constant()) {
    Poly p = *this;
    p.space_ = target;
    return p;
  }
  Poly out;
  out.space_ = target;
  for (const auto& [m, c] : terms_) {
    Monomial nm;
    for (const auto& [var, e] : m.factors()) {
      const auto idx = target ? target->index_of(space_->name(var)) : std::nullopt;
      if (!idx) throw ParameterSpaceMismatch("parameter '" + space_->name(var) + "' missing from target space");
      nm = nm * Monomial::variable(static_cast<std::uint32_t>(*idx), e);
    }
    out.add_term(nm, c);
  }
  return out;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Poly::adopt_space(const ParamSpacePtr& other) {
  if (!other || other->empty()) return;
  if (!space_ || space_->empty()) {
    if (!is_constant()) throw ParameterSpaceMismatch("polynomial without parameter space");
    space_ = other;
    return;
  }
  if (space_ != other && *space_ != *other)
    throw ParameterSpaceMismatch("polynomials over different parameter spaces");
}

Poly& Poly::operator+=(const Poly& o) {
  adopt_space(o.space_);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  adopt_space(o.space_);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  r.space_ = a.space_;
  r.adopt_space(b.space_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [m, v] : r.terms_) v = -v;
  return r;
}

bool operator<(const Poly& a, const Poly& b) {
  GrlexDescending order;
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
    if (!(ia->first == ib->first)) return order(ia->first, ib->first);
    if (ia->second != ib->second) return ia->second < ib->second;
  }
  return ia == a.terms_.end() && ib != b.terms_.end();
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const bool negative = c.sign() < 0;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const Rational mag = c.abs();
    bool need_star = false;
    if (m.is_one() || !mag.is_one()) {
      os << mag.str();
      need_star = true;
    }
    for (const auto& [var, e] : m.factors()) {
      if (need_star) os << "*";
      os << space_->name(var);
      if (e > 1) os << "^" << e;
      need_star = true;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

// ------------------------------------------------------------------ parser

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, const ParamSpacePtr& space) : text_(text), space_(space) {}

  Poly run() {
    Poly p = expression();
    skip_blanks();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  void skip_blanks() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_blanks();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expression() {
    Poly acc;
    bool negate = false;
    skip_blanks();
    if (accept('-')) negate = true;
    else accept('+');
    Poly t = term();
    acc = negate ? -t : t;
    while (true) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else break;
    }
    return acc;
  }

  Poly term() {
    Poly acc = factor();
    while (accept('*')) acc = acc * factor();
    return acc;
  }

  std::string integer_digits() {
    skip_blanks();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  Poly factor() {
    skip_blanks();
    if (pos_ >= text_.size()) fail("unexpected end");
    const char c = text_[pos_];
    Poly base;
    if (accept('(')) {
      base = expression();
      if (!accept(')')) fail("expected ')'");
    } else if (accept('-')) {
      return -factor();
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = integer_digits();
      if (accept('/')) {
        const std::string den = integer_digits();
        base = Poly(Rational::parse(num + "/" + den));
      } else {
        base = Poly(Rational::parse(num));
      }
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string_view name = text_.substr(start, pos_ - start);
      const auto idx = space_ ? space_->index_of(name) : std::nullopt;
      if (!idx) fail("unknown parameter '" + std::string(name) + "'");
      base = Poly::variable(space_, *idx);
    } else {
      fail("unexpected character");
    }
    if (accept('^')) {
      const std::string digits = integer_digits();
      const unsigned long e = std::stoul(digits);
      Poly r(1);
      for (unsigned long k = 0; k < e; ++k) r = r * base;
      return r;
    }
    return base;
  }

  std::string_view text_;
  ParamSpacePtr space_;
  std::size_t pos_ = 0;
};

}  // namespace

Poly Poly::parse(std::string_view text, const ParamSpacePtr& space) {
  Poly p = PolyParser(text, space).run();
  if (p.is_constant() && space && !space->empty()) p.space_ = space;
  return p;
}

}  // namespace qflab

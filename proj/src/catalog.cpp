#include "qflab/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

#include "qflab/errors.hpp"

namespace qflab {

namespace {

using G = FamilyGroup;

const std::vector<FamilyInfo> kFamilies = {
    // family, token, display, group, r, k, l, alpha, printed, rank
    {Family::Ln, "Ln", "L_n", G::Filiform, false, false, false, false, false, 2},
    {Family::Qn, "Qn", "Q_n", G::Filiform, false, false, false, false, false, 2},
    {Family::Ank, "Ank", "A_n^k", G::Filiform, false, true, false, true, false, 1},
    {Family::Bnk, "Bnk", "B_n^k", G::Filiform, false, true, false, true, false, 1},
    {Family::Cn, "Cn", "C_n", G::Filiform, false, false, false, true, false, 2},
    {Family::LplusC, "LplusC", "L_{n-1}+C", G::NaturallyGraded, false, false, false, false, false, 3},
    {Family::QplusC, "QplusC", "Q_{n-1}+C", G::NaturallyGraded, false, false, false, false, false, 3},
    {Family::Lnr, "Lnr", "L_{n,r}", G::NaturallyGraded, true, false, false, false, false, 2},
    {Family::Qnr, "Qnr", "Q_{n,r}", G::NaturallyGraded, true, false, false, false, false, 2},
    {Family::Tn4, "Tn4", "T_{n,n-4}", G::NaturallyGraded, false, false, false, false, false, 2},
    {Family::Tn3, "Tn3", "T_{n,n-3}", G::NaturallyGraded, false, false, false, false, false, 2},
    {Family::E951, "E951", "E_{9,5}^1", G::NaturallyGraded, false, false, false, false, false, 1},
    {Family::E952, "E952", "E_{9,5}^2", G::NaturallyGraded, false, false, false, false, false, 1},
    {Family::E953, "E953", "E_{9,5}^3", G::NaturallyGraded, false, false, false, false, false, 1},
    {Family::E73, "E73", "E_{7,3}", G::NaturallyGraded, false, false, false, false, false, 1},
    {Family::AplusC, "AplusC", "A_{n-1}^k+C", G::NonzeroRank, false, true, false, true, false, 2},
    {Family::LshiftC, "LshiftC", "L_{n-1}+>_l C", G::NonzeroRank, false, false, true, false, true, 2},
    {Family::AshiftC, "AshiftC", "A_{n-1}^k+>_l C", G::NonzeroRank, false, true, true, true, true, 1},
    {Family::BplusC, "BplusC", "B_{n-1}^k+C", G::NonzeroRank, false, true, false, true, true, 2},
    {Family::QshiftaC, "QshiftaC", "Q_{n-1}+>_l^a C", G::NonzeroRank, false, false, true, false, false, 2},
    {Family::BshiftaC, "BshiftaC", "B_{n-1}^k+>_l^a C", G::NonzeroRank, false, true, true, true, false, 1},
    {Family::QshiftbC, "QshiftbC", "Q_{n-1}+>_l^b C", G::NonzeroRank, false, false, true, false, true, 1},
    {Family::QcC, "QcC", "Q_{n-1}+>^c C", G::NonzeroRank, false, false, false, false, true, 2},
    {Family::BcC, "BcC", "B_{n-1}^k+>^c C", G::NonzeroRank, false, true, false, true, false, 2},
    {Family::Cnrk, "Cnrk", "C_{n,r}^k", G::NonzeroRank, true, true, false, true, false, 1},
    {Family::Dnrk, "Dnrk", "D_{n,r}^k", G::NonzeroRank, true, true, false, false, false, 1},
    {Family::Enrk, "Enrk", "E_{n,r}^k", G::NonzeroRank, true, true, false, true, false, 1},
    {Family::Fnrk, "Fnrk", "F_{n,r}^k", G::NonzeroRank, true, true, false, false, false, 1},
    {Family::Gnrk, "Gnrk", "G_{n,r}^k", G::NonzeroRank, true, true, false, true, false, 1},
    {Family::Hnrk, "Hnrk", "H_{n,r}^k", G::NonzeroRank, true, true, false, true, false, 1},
};

long floordiv(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

bool odd(long x) { return x % 2 != 0; }
long sgn(long i) { return i % 2 == 0 ? 1 : -1; }  // (-1)^i

Poly alpha_var(const ParamSpacePtr& space, long i, long t) {
  if (i < 1 || i >= t) return Poly(0);
  return Poly::variable(space, static_cast<std::size_t>(i - 1));
}

void chain(AlgebraBuilder& b, long last) {
  for (long i = 1; i <= last; ++i) b.add(0, i, i + 1, Poly(1));
}

// a_{i,j} X_{i+j+k-1} for i < j, i + j <= bound, subject to the extra filter.
void add_aij(AlgebraBuilder& b, long k, long bound, long t, const std::function<bool(long, long)>& keep,
             long alpha_shift = 0) {
  const long n = static_cast<long>(b.dim());
  const AijTable a = aij_table(bound, t, b.params());
  for (long i = 1; i < n; ++i)
    for (long j = i + 1; j < n; ++j) {
      if (i + j > bound || !keep(i, j)) continue;
      const long target = i + j + k - 1 + (j == i + 1 ? alpha_shift : 0);
      if (target >= n) continue;
      b.add(i, j, target, a.at(i, j));
    }
}

Algebra make_L(long n) {
  AlgebraBuilder b(n);
  chain(b, n - 2);
  return b.build();
}

Algebra make_Q(long n) {
  AlgebraBuilder b(n);
  chain(b, n - 3);
  for (long j = 1; j <= n / 2 - 1; ++j) b.add(j, n - j - 1, n - 1, Poly(-sgn(j)));
  return b.build();
}

Algebra make_A(long n, long k, const ParamSpacePtr& space) {
  const long t = (n - k + 1) / 2;
  AlgebraBuilder b(n, space);
  chain(b, n - 2);
  add_aij(b, k, n - k, t, [](long, long) { return true; });
  return b.build();
}

Algebra make_B(long n, long k, const ParamSpacePtr& space, long alpha_shift = 0) {
  const long t = (n - k) / 2;
  AlgebraBuilder b(n, space);
  chain(b, n - 3);
  for (long j = 1; j <= n / 2 - 1; ++j) b.add(j, n - j - 1, n - 1, Poly(-sgn(j)));
  add_aij(b, k, n - k - 1, t, [](long, long) { return true; }, alpha_shift);
  return b.build();
}

Algebra make_C(long n, const ParamSpacePtr& space) {
  const long m = n / 2;
  AlgebraBuilder b(n, space);
  chain(b, n - 3);
  for (long i = 1; i <= m - 1; ++i) b.add(i, n - i - 1, n - 1, Poly(sgn(i)));
  for (long k = 1; k <= m - 2; ++k)
    for (long i = 1; i <= m - k - 1; ++i)
      b.add(i, n - 2 * k - 1 - i, n - 1, Poly(-sgn(i)) * Poly::variable(space, static_cast<std::size_t>(k - 1)));
  return b.build();
}

AlgebraBuilder builder_Lnr(long n, long r, const ParamSpacePtr& space) {
  AlgebraBuilder b(n, space);
  chain(b, n - 3);
  for (long i = 1; i <= (r - 1) / 2; ++i) b.add(i, r - i, n - 1, Poly(sgn(i - 1)));
  return b;
}

AlgebraBuilder builder_Qnr(long n, long r, const ParamSpacePtr& space) {
  AlgebraBuilder b(n, space);
  chain(b, n - 4);
  for (long i = 1; i <= (r - 1) / 2; ++i) b.add(i, r - i, n - 1, Poly(sgn(i - 1)));
  for (long i = 1; i <= (n - 3) / 2; ++i) b.add(i, n - 2 - i, n - 2, Poly(sgn(i - 1)));
  return b;
}

// last_coeff_variant: false for the T_{n,n-4} coefficient (n-3-i)/2 from
// i = 2, true for the (n-2-i)/2 coefficient from i = 1.
AlgebraBuilder builder_Tn4(long n, const ParamSpacePtr& space, bool last_coeff_variant) {
  AlgebraBuilder b(n, space);
  chain(b, n - 5);
  b.add(0, n - 3, n - 2, Poly(1));
  b.add(0, n - 1, n - 3, Poly(1));
  for (long i = 1; i <= (n - 5) / 2; ++i) b.add(i, n - 4 - i, n - 1, Poly(sgn(i - 1)));
  for (long i = 1; i <= (n - 5) / 2; ++i) b.add(i, n - 3 - i, n - 3, Poly(Rational(sgn(i - 1) * (n - 3 - 2 * i), 2)));
  if (!last_coeff_variant) {
    for (long i = 2; i <= (n - 3) / 2; ++i)
      b.add(i, n - 2 - i, n - 2, Poly(Rational(sgn(i) * (i - 1) * (n - 3 - i), 2)));
  } else {
    for (long i = 1; i <= (n - 3) / 2; ++i)
      b.add(i, n - 2 - i, n - 2, Poly(Rational(sgn(i) * (i - 1) * (n - 2 - i), 2)));
  }
  return b;
}

AlgebraBuilder builder_Tn3(long n, const ParamSpacePtr& space) {
  AlgebraBuilder b(n, space);
  chain(b, n - 4);
  b.add(0, n - 1, n - 2, Poly(1));
  for (long i = 1; i <= (n - 4) / 2; ++i) b.add(i, n - 3 - i, n - 1, Poly(sgn(i - 1)));
  for (long i = 1; i <= (n - 4) / 2; ++i) b.add(i, n - 2 - i, n - 2, Poly(Rational(sgn(i - 1) * (n - 2 - 2 * i), 2)));
  return b;
}

struct Entry {
  long i, j, k, c;
};

Algebra table(long n, const std::vector<Entry>& entries, long chain_last) {
  AlgebraBuilder b(n);
  chain(b, chain_last);
  for (const auto& e : entries) b.add(e.i, e.j, e.k, Poly(e.c));
  return b.build();
}

Algebra with_last_on_second(const Algebra& a) {
  // [X_0, X_{n-1}] = X_{n-2}
  const std::size_t n = a.dim();
  AlgebraBuilder b(a);
  b.add(0, n - 1, n - 2, Poly(1));
  return b.build();
}

Algebra strip_params(const Algebra& a) {
  AlgebraBuilder b(a.dim());
  for (const auto& [key, terms] : a.brackets())
    for (const auto& [k, c] : terms) b.add(key.first, key.second, k, Poly(c.constant_term()));
  return b.build();
}

Algebra generate_symbolic(const FamilySpec& s) {
  const long n = s.n, r = s.r, k = s.k, l = s.l;
  const ParamSpacePtr space = alpha_space(alpha_count(s));
  switch (s.family) {
    case Family::Ln:
      return make_L(n);
    case Family::Qn:
      return make_Q(n);
    case Family::Ank:
      return make_A(n, k, space);
    case Family::Bnk:
      return make_B(n, k, space);
    case Family::Cn:
      return make_C(n, space);
    case Family::LplusC:
      return direct_sum(make_L(n - 1), abelian(1));
    case Family::QplusC:
      return direct_sum(make_Q(n - 1), abelian(1));
    case Family::Lnr:
      return builder_Lnr(n, r, nullptr).build();
    case Family::Qnr:
      return builder_Qnr(n, r, nullptr).build();
    case Family::Tn4:
      return builder_Tn4(n, nullptr, false).build();
    case Family::Tn3:
      return builder_Tn3(n, nullptr).build();
    case Family::E951:
      return table(9, {{0, 8, 6, 1}, {2, 8, 7, -3}, {1, 4, 8, 1}, {1, 5, 6, 2}, {1, 6, 7, 3}, {2, 3, 8, -1},
                       {2, 4, 6, -1}, {2, 5, 7, -1}},
                   6);
    case Family::E952:
      return table(9, {{0, 8, 6, 1}, {2, 8, 7, -1}, {1, 4, 8, 1}, {1, 5, 6, 2}, {1, 6, 7, 1}, {2, 3, 8, -1},
                       {2, 4, 6, -1}, {2, 5, 7, 1}, {3, 4, 7, -2}},
                   6);
    case Family::E953:
      return table(9, {{0, 8, 6, 1}, {1, 4, 8, 1}, {1, 5, 6, 2}, {2, 3, 8, -1}, {2, 4, 6, -1}, {2, 5, 7, 2},
                       {3, 4, 7, -3}},
                   6);
    case Family::E73:
      return table(7, {{0, 6, 4, 1}, {2, 6, 5, -1}, {1, 2, 6, 1}, {1, 3, 4, 1}, {1, 4, 5, 1}}, 4);
    case Family::AplusC:
      return direct_sum(make_A(n - 1, k, space), abelian(1));
    case Family::LshiftC:
      return add_shift_action(direct_sum(make_L(n - 1), abelian(1)), n - 1, s.printed ? l - 2 : l);
    case Family::AshiftC:
      return add_shift_action(direct_sum(make_A(n - 1, k, space), abelian(1)), n - 1, s.printed ? l - 2 : l);
    case Family::BplusC:
      return direct_sum(make_B(n - 1, k, space, s.printed ? -1 : 0), abelian(1));
    case Family::QshiftaC:
      return add_shift_action(direct_sum(make_Q(n - 1), abelian(1)), n - 1, l);
    case Family::BshiftaC:
      return add_shift_action(direct_sum(make_B(n - 1, k, space), abelian(1)), n - 1, l);
    case Family::QshiftbC:
      return add_shift_action(with_last_on_second(direct_sum(make_Q(n - 1), abelian(1))), n - 1, l);
    case Family::QcC:
      return with_last_on_second(direct_sum(make_Q(n - 1), abelian(1)));
    case Family::BcC:
      return with_last_on_second(direct_sum(make_B(n - 1, k, space), abelian(1)));
    case Family::Cnrk: {
      AlgebraBuilder b = builder_Lnr(n, r, space);
      add_aij(b, k, n - k - 1, (n - k) / 2, [n](long, long j) { return j < n - 1; });
      return add_shift_action(b.build(), n - 1, 2 * k + r - 2);
    }
    case Family::Dnrk:
      return add_shift_action(builder_Lnr(n, r, nullptr).build(), n - 1, 2 * k + r - 1);
    case Family::Enrk: {
      AlgebraBuilder b = builder_Qnr(n, r, space);
      add_aij(b, k, n - k - 2, (n - k - 1) / 2, [n](long, long j) { return j < n - 1; });
      return add_shift_action(b.build(), n - 1, 2 * k + r - 2);
    }
    case Family::Fnrk:
      return add_shift_action(builder_Qnr(n, r, nullptr).build(), n - 1, 2 * k + r - 1);
    case Family::Gnrk: {
      AlgebraBuilder b = builder_Tn4(n, space, true);
      if (k == 2) b.add(1, n - 1, n - 2, Poly(1));
      add_aij(b, k, n - k - 3, (n - k - 2) / 2, [n](long, long j) { return j < n - 2; });
      return b.build();
    }
    case Family::Hnrk: {
      AlgebraBuilder b = builder_Tn3(n, space);
      add_aij(b, k, n - k - 2, (n - k - 1) / 2, [n](long, long j) { return j < n - 2; });
      return b.build();
    }
  }
  throw UnknownFamily("unhandled family");
}

[[noreturn]] void invalid(const FamilySpec& s, const std::string& why) {
  throw InvalidParameters(std::string(info(s.family).token) + ": " + why);
}

void require(const FamilySpec& s, bool ok, const std::string& why) {
  if (!ok) invalid(s, why);
}

void check_Lnr_range(const FamilySpec& s) {
  require(s, s.n >= 5, "requires n >= 5");
  require(s, odd(s.r), "requires r odd");
  require(s, s.r >= 3 && s.r <= 2 * ((s.n - 1) / 2) - 1, "requires 3 <= r <= 2*floor((n-1)/2)-1");
}

void check_Qnr_range(const FamilySpec& s) {
  require(s, s.n >= 7 && odd(s.n), "requires n >= 7 odd");
  require(s, odd(s.r), "requires r odd");
  require(s, s.r >= 3 && s.r <= s.n - 4, "requires 3 <= r <= n-4");
}

void check_k(const FamilySpec& s, long lo, long hi, const std::string& text) {
  require(s, s.k >= lo && s.k <= hi, "requires " + text);
}

void check_l(const FamilySpec& s, long lo, long hi, const std::string& text) {
  require(s, s.l >= lo && s.l <= hi, "requires " + text);
}

std::vector<std::string> split_top_level(std::string_view body) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char c : body) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

long parse_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw ParseError("");
    return x;
  } catch (const std::exception&) {
    throw ParseError("bad integer for " + key + ": '" + v + "'");
  }
}

}  // namespace

// ------------------------------------------------------------ family table

const std::vector<FamilyInfo>& all_families() { return kFamilies; }

const FamilyInfo& info(Family f) {
  for (const auto& fi : kFamilies)
    if (fi.family == f) return fi;
  throw UnknownFamily("unregistered family");
}

std::optional<Family> family_from_token(std::string_view token) {
  for (const auto& fi : kFamilies)
    if (fi.token == token) return fi.family;
  return std::nullopt;
}

// ------------------------------------------------------------- FamilySpec

std::string FamilySpec::str() const {
  const FamilyInfo& fi = info(family);
  std::ostringstream os;
  os << fi.token << "(n=" << n;
  if (fi.uses_r) os << ",r=" << r;
  if (fi.uses_k) os << ",k=" << k;
  if (fi.uses_l) os << ",l=" << l;
  if (alpha) {
    os << ",alpha=[";
    for (std::size_t i = 0; i < alpha->size(); ++i) os << (i ? "," : "") << (*alpha)[i].str();
    os << "]";
  }
  if (printed) os << ",printed";
  os << ")";
  return os.str();
}

FamilySpec FamilySpec::parse(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto open = text.find('(');
  const std::string_view token = text.substr(0, open);
  const auto fam = family_from_token(token);
  if (!fam) throw UnknownFamily("unknown family '" + std::string(token) + "'");
  FamilySpec s;
  s.family = *fam;
  if (open == std::string_view::npos) return s;
  if (text.back() != ')') throw ParseError("missing ')' in family spec '" + std::string(text) + "'");
  const std::string_view body = text.substr(open + 1, text.size() - open - 2);
  for (const std::string& part : split_top_level(body)) {
    if (part == "printed") {
      s.printed = true;
      continue;
    }
    const auto eq = part.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value in family spec, got '" + part + "'");
    const std::string key = part.substr(0, eq);
    const std::string val = part.substr(eq + 1);
    if (key == "n") s.n = parse_long(key, val);
    else if (key == "r") s.r = parse_long(key, val);
    else if (key == "k") s.k = parse_long(key, val);
    else if (key == "l") s.l = parse_long(key, val);
    else if (key == "alpha") {
      if (val.size() < 2 || val.front() != '[' || val.back() != ']')
        throw ParseError("alpha must be written [a,b,...]");
      std::vector<Rational> a;
      for (const std::string& x : split_top_level(std::string_view(val).substr(1, val.size() - 2)))
        a.push_back(Rational::parse(x));
      s.alpha = std::move(a);
    } else {
      throw ParseError("unknown key '" + key + "' in family spec");
    }
  }
  return s;
}

FamilySpec normalized(FamilySpec s) {
  const FamilyInfo& fi = info(s.family);
  const auto fixed_n = [&](long want) {
    if (s.n == 0) s.n = want;
    require(s, s.n == want, "dimension is fixed at " + std::to_string(want));
  };
  switch (s.family) {
    case Family::E951:
    case Family::E952:
    case Family::E953:
      fixed_n(9);
      break;
    case Family::E73:
      fixed_n(7);
      break;
    case Family::Gnrk:
      if (s.r == 0) s.r = s.n - 4;
      require(s, s.r == s.n - 4, "r is fixed at n-4");
      break;
    case Family::Hnrk:
      if (s.r == 0) s.r = s.n - 3;
      require(s, s.r == s.n - 3, "r is fixed at n-3");
      break;
    default:
      break;
  }
  require(s, fi.uses_r || s.r == 0, "takes no r");
  require(s, fi.uses_k || s.k == 0, "takes no k");
  require(s, fi.uses_l || s.l == 0, "takes no l");
  require(s, fi.has_printed_variant || !s.printed, "has no printed variant");

  const long n = s.n;
  switch (s.family) {
    case Family::Ln:
      require(s, n >= 3, "requires n >= 3");
      break;
    case Family::Qn:
    case Family::Cn:
      require(s, n >= 6 && !odd(n), "requires n = 2m, m >= 3");
      break;
    case Family::Ank:
      require(s, n >= 3, "requires n >= 3");
      check_k(s, 2, n - 3, "2 <= k <= n-3");
      break;
    case Family::Bnk:
      require(s, n >= 6 && !odd(n), "requires n = 2m, m >= 3");
      check_k(s, 2, n - 3, "2 <= k <= n-3");
      break;
    case Family::LplusC:
      require(s, n >= 4, "requires n >= 4");
      break;
    case Family::QplusC:
    case Family::QcC:
      require(s, n >= 7 && odd(n), "requires n >= 7 odd");
      break;
    case Family::Lnr:
      check_Lnr_range(s);
      break;
    case Family::Qnr:
      check_Qnr_range(s);
      break;
    case Family::Tn4:
      require(s, n >= 7 && odd(n), "requires n >= 7 odd");
      break;
    case Family::Tn3:
      require(s, n >= 6 && !odd(n), "requires n >= 6 even");
      break;
    case Family::E951:
    case Family::E952:
    case Family::E953:
    case Family::E73:
      break;
    case Family::AplusC:
      require(s, n >= 4, "requires n >= 4");
      check_k(s, 2, n - 4, "2 <= k <= n-4");
      break;
    case Family::LshiftC:
      require(s, n >= 4, "requires n >= 4");
      check_l(s, 2, n - 3, "2 <= l <= n-3");
      break;
    case Family::AshiftC:
      require(s, n >= 4, "requires n >= 4");
      check_k(s, 2, n - 4, "2 <= k <= n-4");
      check_l(s, 2, n - 3, "2 <= l <= n-3");
      break;
    case Family::BplusC:
    case Family::BcC:
      require(s, n >= 7 && odd(n), "requires n >= 7 odd");
      check_k(s, 2, n - 5, "2 <= k <= n-5");
      break;
    case Family::QshiftaC:
    case Family::QshiftbC:
      require(s, n >= 7 && odd(n), "requires n >= 7 odd");
      check_l(s, 2, n - 4, "2 <= l <= n-4");
      break;
    case Family::BshiftaC:
      require(s, n >= 7 && odd(n), "requires n >= 7 odd");
      check_k(s, 2, n - 5, "2 <= k <= n-5");
      check_l(s, 2, n - 4, "2 <= l <= n-4");
      break;
    case Family::Cnrk:
      check_Lnr_range(s);
      check_k(s, 2, n - 4, "2 <= k <= n-4");
      break;
    case Family::Dnrk:
      check_Lnr_range(s);
      check_k(s, 1, floordiv(n - s.r - 2, 2), "1 <= k <= floor((n-r-2)/2)");
      break;
    case Family::Enrk:
      check_Qnr_range(s);
      check_k(s, 2, n - 5, "2 <= k <= n-5");
      break;
    case Family::Fnrk:
      check_Qnr_range(s);
      check_k(s, 1, floordiv(n - s.r - 4, 2), "1 <= k <= floor((n-r-4)/2)");
      break;
    case Family::Gnrk:
      require(s, n >= 7 && odd(n), "requires n >= 7 odd");
      check_k(s, 2, n - 6, "2 <= k <= n-6");
      break;
    case Family::Hnrk:
      require(s, n >= 6 && !odd(n), "requires n >= 6 even");
      check_k(s, 2, n - 5, "2 <= k <= n-5");
      break;
  }
  if (s.alpha) {
    const std::size_t want = alpha_count(s);
    require(s, s.alpha->size() == want, "expects " + std::to_string(want) + " alpha value(s), got " +
                                            std::to_string(s.alpha->size()));
  }
  return s;
}

std::size_t alpha_count(const FamilySpec& s) {
  long t = 1;
  switch (s.family) {
    case Family::Ank:
      t = (s.n - s.k + 1) / 2;
      break;
    case Family::Bnk:
    case Family::AplusC:
    case Family::AshiftC:
    case Family::Cnrk:
      t = (s.n - s.k) / 2;
      break;
    case Family::Cn:
      t = s.n / 2 - 1;
      break;
    case Family::BplusC:
    case Family::BshiftaC:
    case Family::BcC:
    case Family::Enrk:
    case Family::Hnrk:
      t = (s.n - s.k - 1) / 2;
      break;
    case Family::Gnrk:
      t = (s.n - s.k - 2) / 2;
      break;
    default:
      break;
  }
  return t > 1 ? static_cast<std::size_t>(t - 1) : 0;
}

ParamSpacePtr alpha_space(std::size_t count) {
  if (count == 0) return nullptr;
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= count; ++i) names.push_back("alpha" + std::to_string(i));
  return make_params(std::move(names));
}

Assignment alpha_assignment(const std::vector<Rational>& alpha) {
  Assignment a;
  for (std::size_t i = 0; i < alpha.size(); ++i) a.emplace("alpha" + std::to_string(i + 1), alpha[i]);
  return a;
}

Algebra generate(const FamilySpec& spec) {
  const FamilySpec s = normalized(spec);
  Algebra a = generate_symbolic(s);
  if (s.alpha) return strip_params(a.specialize(alpha_assignment(*s.alpha)));
  return a;
}

std::vector<FamilySpec> valid_specs(Family f, long nmax) {
  const FamilyInfo& fi = info(f);
  std::vector<FamilySpec> out;
  for (long n = 3; n <= nmax; ++n)
    for (long r = 0; r <= (fi.uses_r ? n : 0); ++r)
      for (long k = 0; k <= (fi.uses_k ? n : 0); ++k)
        for (long l = 0; l <= (fi.uses_l ? n : 0); ++l) {
          FamilySpec s{f, n, r, k, l, std::nullopt, false};
          if (f == Family::Gnrk || f == Family::Hnrk) {
            if (r != 0) continue;
          }
          try {
            out.push_back(normalized(s));
          } catch (const InvalidParameters&) {
          }
        }
  return out;
}

// ------------------------------------------------------------------ a_{i,j}

Poly AijTable::at(long i, long j) const {
  const auto it = values.find({i, j});
  if (it != values.end()) return it->second;
  return Poly(0).rebased(space);
}

AijTable aij_table(long bound, long t, const ParamSpacePtr& space) {
  AijTable a;
  a.bound = bound;
  a.t = t;
  a.space = space;
  const auto get = [&](long i, long j) -> Poly {
    if (i == j) return Poly(0);
    if (j == i + 1) return alpha_var(space, i, t);
    return a.at(i, j);
  };
  // a_{i,j+1} = a_{i,j} - a_{i+1,j}, filled by increasing j - i.
  for (long i = 1; 2 * i + 1 <= bound; ++i) a.values[{i, i + 1}] = alpha_var(space, i, t).rebased(space);
  for (long d = 2; d < bound; ++d)
    for (long i = 1; 2 * i + d <= bound; ++i) {
      const long j = i + d;
      a.values[{i, j}] = (get(i, j - 1) - get(i + 1, j - 1)).rebased(space);
    }
  std::erase_if(a.values, [](const auto& e) { return e.second.is_zero(); });
  return a;
}

// -------------------------------------------------------------- constraints

bool ConstraintSet::satisfied_by(const Assignment& values) const {
  return std::all_of(generators.begin(), generators.end(),
                     [&](const Poly& g) { return g.eval(values).is_zero(); });
}

ConstraintSet extract_constraints(const FamilySpec& spec) {
  FamilySpec s = spec;
  s.alpha.reset();
  s = normalized(s);
  const Algebra a = generate_symbolic(s);
  ConstraintSet cs;
  cs.space = a.params();
  std::set<Poly> gens;
  for (const auto& [key, terms] : jacobi_check(a).residuals)
    for (const auto& [k, c] : terms) gens.insert(c.monic());
  cs.generators.assign(gens.begin(), gens.end());
  return cs;
}

namespace {

bool rational_sqrt(const Rational& x, Rational& out) {
  if (x.sign() < 0) return false;
  const mpz_class& num = x.value().get_num();
  const mpz_class& den = x.value().get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return false;
  mpz_class a, b;
  mpz_sqrt(a.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(b.get_mpz_t(), den.get_mpz_t());
  out = Rational(a, b);
  return true;
}

struct AlphaSearch {
  const ConstraintSet& cs;
  std::size_t count;
  std::vector<std::size_t> order;                 // variables in assignment order
  std::vector<std::vector<const Poly*>> by_last;  // generators keyed by step of their last variable
  std::vector<Rational> current;
  std::optional<std::vector<Rational>> best;
  std::size_t best_nonzero = 0;
  std::size_t nodes = 0;
  static constexpr std::size_t kNodeLimit = 200000;

  Assignment assigned(std::size_t upto) const {
    Assignment a;
    for (std::size_t i = 0; i < upto; ++i) a.emplace(cs.space->name(order[i]), current[order[i]]);
    return a;
  }

  std::vector<Rational> candidates(std::size_t step) const {
    const std::size_t v = order[step];
    static const std::vector<Rational> grid = {Rational(1), Rational(2), Rational(-1), Rational(3),
                                               Rational(-2), Rational(1, 2), Rational(0)};
    const Assignment known = assigned(step);
    std::vector<std::array<Rational, 3>> polys;
    for (const Poly* g : by_last[step]) {
      const Poly p = g->substitute(known);
      std::array<Rational, 3> c{};
      for (const auto& [m, coef] : p.terms()) {
        const auto e = m.exponent(static_cast<std::uint32_t>(v));
        if (e > 2) return {};
        c[e] += coef;
      }
      polys.push_back(c);
    }
    std::vector<Rational> cand;
    const auto* pin = static_cast<const std::array<Rational, 3>*>(nullptr);
    for (const auto& c : polys)
      if (!c[0].is_zero() || !c[1].is_zero() || !c[2].is_zero()) {
        pin = &c;
        break;
      }
    if (!pin) {
      cand = grid;
    } else {
      const auto& c = *pin;
      if (c[2].is_zero() && c[1].is_zero()) return {};
      if (c[2].is_zero()) {
        cand.push_back(-c[0] / c[1]);
      } else {
        const Rational disc = c[1] * c[1] - Rational(4) * c[2] * c[0];
        Rational root;
        if (!rational_sqrt(disc, root)) return {};
        cand.push_back((-c[1] + root) / (Rational(2) * c[2]));
        if (!root.is_zero()) cand.push_back((-c[1] - root) / (Rational(2) * c[2]));
      }
    }
    std::vector<Rational> ok;
    for (const Rational& x : cand) {
      const bool fits = std::all_of(polys.begin(), polys.end(), [&](const auto& c) {
        return (c[0] + c[1] * x + c[2] * x * x).is_zero();
      });
      if (fits && std::find(ok.begin(), ok.end(), x) == ok.end()) ok.push_back(x);
    }
    std::stable_partition(ok.begin(), ok.end(), [](const Rational& x) { return !x.is_zero(); });
    return ok;
  }

  void run(std::size_t step, std::size_t nonzero) {
    if (++nodes > kNodeLimit || (best && best_nonzero == count)) return;
    if (best && nonzero + (count - step) <= best_nonzero) return;
    if (step == count) {
      best = current;
      best_nonzero = nonzero;
      return;
    }
    for (const Rational& x : candidates(step)) {
      current[order[step]] = x;
      run(step + 1, nonzero + (x.is_zero() ? 0 : 1));
      if (best && best_nonzero == count) return;
    }
  }
};

}  // namespace

std::optional<std::vector<Rational>> find_generic_alpha(const ConstraintSet& cs, std::size_t count) {
  for (const Poly& g : cs.generators) {
    if (g.is_constant()) return std::nullopt;  // nonzero constant generator
    for (const auto& [m, c] : g.terms())
      for (const auto& [v, e] : m.factors())
        if (v >= count) throw DimensionMismatch("constraint uses an unexpected parameter");
  }
  // Ascending order first, then descending: pinning the low alphas from the
  // high ones reaches rational points the grid alone misses.
  std::optional<std::vector<Rational>> best;
  std::size_t best_nonzero = 0;
  for (const bool descending : {false, true}) {
    std::vector<std::size_t> order(count);
    for (std::size_t i = 0; i < count; ++i) order[i] = descending ? count - 1 - i : i;
    std::vector<std::size_t> step_of(count);
    for (std::size_t i = 0; i < count; ++i) step_of[order[i]] = i;
    AlphaSearch s{cs, count, order, std::vector<std::vector<const Poly*>>(count), std::vector<Rational>(count),
                  {}, 0, 0};
    for (const Poly& g : cs.generators) {
      std::size_t last = 0;
      for (const auto& [m, c] : g.terms())
        for (const auto& [v, e] : m.factors()) last = std::max(last, step_of[v]);
      s.by_last[last].push_back(&g);
    }
    s.run(0, 0);
    if (s.best && (!best || s.best_nonzero > best_nonzero)) {
      best = s.best;
      best_nonzero = s.best_nonzero;
    }
    if (best && best_nonzero == count) break;
  }
  return best;
}

// ------------------------------------------------------------------ weights

const ParamSpacePtr& weight_space() {
  static const ParamSpacePtr space = make_params({"lambda0", "lambda1", "lambda_last", "k"});
  return space;
}

std::vector<Poly> claimed_weights(const FamilySpec& spec) {
  const FamilySpec s = normalized(spec);
  const auto& ws = weight_space();
  const Poly L0 = Poly::variable(ws, "lambda0");
  const Poly L1 = Poly::variable(ws, "lambda1");
  const Poly LL = Poly::variable(ws, "lambda_last");
  const Poly K = Poly::variable(ws, "k");
  const auto lin = [&](const Rational& a, const Rational& b) { return a * L0 + b * L1; };
  const long n = s.n, r = s.r, k = s.k, l = s.l;
  std::vector<Poly> w(static_cast<std::size_t>(n), Poly(0).rebased(ws));
  w[0] = L0;
  // (i-1) L0 + L1 on Y_1 .. Y_last
  const auto graded = [&](long last) {
    for (long i = 1; i <= last; ++i) w[i] = lin(i - 1, 1);
  };
  // (shift + i - 1) L0 on Y_1 .. Y_last
  const auto scaled = [&](long last, const Rational& shift) {
    for (long i = 1; i <= last; ++i) w[i] = (shift + Rational(i - 1)) * L0;
  };
  switch (s.family) {
    case Family::Ln:
      graded(n - 1);
      break;
    case Family::Qn:
      graded(n - 2);
      w[n - 1] = lin(n - 3, 2);
      break;
    case Family::Ank:
      scaled(n - 1, k);
      break;
    case Family::Bnk:
      scaled(n - 2, k);
      w[n - 1] = Rational(n + 2 * k - 3) * L0;
      break;
    case Family::Cn:
      throw UnknownFamily("Cn carries no stated diagonal form");
    case Family::LplusC:
      graded(n - 2);
      w[n - 1] = LL;
      break;
    case Family::QplusC:
      graded(n - 3);
      w[n - 2] = lin(n - 4, 2);
      w[n - 1] = LL;
      break;
    case Family::Lnr:
      graded(n - 2);
      w[n - 1] = lin(r - 2, 2);
      break;
    case Family::Qnr:
      graded(n - 3);
      w[n - 2] = lin(n - 4, 2);
      w[n - 1] = lin(r - 2, 2);
      break;
    case Family::Tn4:
      graded(n - 4);
      w[n - 3] = lin(n - 5, 2);
      w[n - 2] = lin(n - 4, 2);
      w[n - 1] = lin(n - 6, 2);
      break;
    case Family::Tn3:
      graded(n - 3);
      w[n - 2] = lin(n - 4, 2);
      w[n - 1] = lin(n - 5, 2);
      break;
    case Family::E951:
    case Family::E952:
    case Family::E953: {
      const long v[] = {1, 1, 2, 3, 4, 5, 6, 7, 5};
      for (long i = 0; i < 9; ++i) w[i] = Rational(v[i]) * L0;
      break;
    }
    case Family::E73: {
      const long v[] = {1, 1, 2, 3, 4, 5, 3};
      for (long i = 0; i < 7; ++i) w[i] = Rational(v[i]) * L0;
      break;
    }
    case Family::AplusC:
      scaled(n - 2, k);
      w[n - 1] = LL;
      break;
    case Family::LshiftC:
      graded(n - 2);
      w[n - 1] = Rational(l) * L0;
      break;
    case Family::AshiftC:
      scaled(n - 2, k);
      w[n - 1] = Rational(l) * L0;
      break;
    case Family::BplusC:
      scaled(n - 3, k);
      w[n - 2] = Rational(n - 4 + 2 * k) * L0;
      w[n - 1] = LL;
      break;
    case Family::QshiftaC:
      graded(n - 3);
      w[n - 2] = lin(n - 4, 2);
      w[n - 1] = Rational(l) * L0;
      break;
    case Family::BshiftaC:
      scaled(n - 3, k);
      w[n - 2] = Rational(n - 4 + 2 * k) * L0;
      w[n - 1] = Rational(l) * L0;
      break;
    case Family::QshiftbC: {
      const Rational beta(l - n + 5, 2);
      scaled(n - 3, beta);
      if (s.printed) w[2] = (K + Poly(1)) * L0;
      w[n - 2] = (Rational(n - 4) + Rational(2) * beta) * L0;
      w[n - 1] = (Rational(n - 5) + Rational(2) * beta) * L0;
      break;
    }
    case Family::QcC:
      graded(n - 3);
      if (s.printed) w[n - 3] = Rational(n - 4) * L0 * L1;
      w[n - 2] = lin(n - 4, 2);
      w[n - 1] = lin(n - 5, 2);
      break;
    case Family::BcC:
      scaled(n - 3, k);
      w[n - 2] = Rational(n - 4 + 2 * k) * L0;
      w[n - 1] = Rational(n - 5 + 2 * k) * L0;
      break;
    case Family::Cnrk:
      scaled(n - 2, k);
      w[n - 1] = Rational(r - 2 + 2 * k) * L0;
      break;
    case Family::Dnrk:
      scaled(n - 2, Rational(2 * k + 1, 2));
      w[n - 1] = Rational(r - 1 + 2 * k) * L0;
      break;
    case Family::Enrk:
      scaled(n - 3, k);
      w[n - 2] = Rational(n - 4 + 2 * k) * L0;
      w[n - 1] = Rational(r - 2 + 2 * k) * L0;
      break;
    case Family::Fnrk:
      scaled(n - 3, Rational(2 * k + 1, 2));
      w[n - 2] = Rational(n + 2 * k - 3) * L0;
      w[n - 1] = Rational(r + 2 * k - 1) * L0;
      break;
    case Family::Gnrk:
      scaled(n - 4, k);
      w[n - 3] = Rational(n - 5 + 2 * k) * L0;
      w[n - 2] = Rational(n - 4 + 2 * k) * L0;
      w[n - 1] = Rational(n - 6 + 2 * k) * L0;
      break;
    case Family::Hnrk:
      scaled(n - 3, k);
      w[n - 2] = Rational(n - 4 + 2 * k) * L0;
      w[n - 1] = Rational(n - 5 + 2 * k) * L0;
      break;
  }
  return w;
}

// -------------------------------------------------------------- gr classes

FamilySpec gr_class(const FamilySpec& spec) {
  const FamilySpec s = normalized(spec);
  const auto make = [&](Family f, long r = 0) { return normalized(FamilySpec{f, s.n, r, 0, 0, std::nullopt, false}); };
  switch (s.family) {
    case Family::Ln:
    case Family::Ank:
      return make(Family::Ln);
    case Family::Qn:
    case Family::Bnk:
    case Family::Cn:
      return make(Family::Qn);
    case Family::LplusC:
    case Family::AplusC:
    case Family::LshiftC:
    case Family::AshiftC:
      return make(Family::LplusC);
    case Family::QplusC:
    case Family::BplusC:
    case Family::QshiftaC:
    case Family::BshiftaC:
    case Family::QshiftbC:
    case Family::QcC:
    case Family::BcC:
      return make(Family::QplusC);
    case Family::Lnr:
    case Family::Cnrk:
    case Family::Dnrk:
      return make(Family::Lnr, s.r);
    case Family::Qnr:
    case Family::Enrk:
    case Family::Fnrk:
      return make(Family::Qnr, s.r);
    case Family::Tn4:
    case Family::Gnrk:
      return make(Family::Tn4);
    case Family::Tn3:
    case Family::Hnrk:
      return make(Family::Tn3);
    case Family::E951:
    case Family::E952:
    case Family::E953:
    case Family::E73:
      return make(s.family);
  }
  throw UnknownFamily("unhandled family");
}

std::vector<FamilySpec> graded_entries(long n) {
  std::vector<FamilySpec> out;
  for (const auto& fi : all_families()) {
    if (fi.group != FamilyGroup::NaturallyGraded) continue;
    for (const FamilySpec& s : valid_specs(fi.family, n))
      if (s.n == n) out.push_back(s);
  }
  return out;
}

}  // namespace qflab

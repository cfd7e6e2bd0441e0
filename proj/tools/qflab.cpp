// qflab: command line front end. Every command writes a JSON document with
// sorted keys to stdout (sweep defaults to a text table). Exit codes: 0 ok,
// 1 verification failure, 2 usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qflab/audit.hpp"
#include "qflab/derivations.hpp"
#include "qflab/document.hpp"
#include "qflab/errors.hpp"
#include "qflab/gradation.hpp"
#include "qflab/isomorphy.hpp"

using namespace qflab;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFail = 1;
constexpr int kUsage = 2;

struct UsageError : Error {
  using Error::Error;
};

struct SpecArgs {
  std::string family;
  long n = 0, r = 0, k = 0, l = 0;
  std::string alpha;
  bool printed = false;
};

void add_spec_options(CLI::App* cmd, SpecArgs& a) {
  cmd->add_option("family", a.family, "family token, e.g. Lnr")->required();
  cmd->add_option("--n", a.n, "dimension");
  cmd->add_option("--r", a.r, "parameter r");
  cmd->add_option("--k", a.k, "parameter k");
  cmd->add_option("--l", a.l, "shift l");
  cmd->add_option("--alpha", a.alpha, "comma separated rationals");
  cmd->add_flag("--printed", a.printed, "use the verbatim printed variant");
}

std::vector<Rational> parse_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(Rational::parse(item));
  return out;
}

FamilySpec to_spec(const SpecArgs& a) {
  const auto f = family_from_token(a.family);
  if (!f) throw UnknownFamily("unknown family '" + a.family + "'");
  FamilySpec s{*f, a.n, a.r, a.k, a.l, std::nullopt, a.printed};
  if (!a.alpha.empty()) s.alpha = parse_list(a.alpha);
  return normalized(s);
}

Assignment parse_assign(const std::string& text) {
  Assignment out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw UsageError("--assign expects name=value pairs, got '" + item + "'");
    out[item.substr(0, eq)] = Rational::parse(item.substr(eq + 1));
  }
  return out;
}

// Concrete algebra from a document, applying --assign when given.
Algebra concrete(const AlgebraDocument& doc, const std::string& assign) {
  Algebra a = doc.algebra;
  if (!assign.empty()) a = a.specialize(parse_assign(assign));
  if (!a.is_concrete()) throw UsageError("the document has free parameters; pass --assign name=value,...");
  return a;
}

json strings(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

json matrix_json(const RationalMatrix& m) {
  json out = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(strings(m.row(i)));
  return out;
}

json fingerprint_json(const Fingerprint& fp) {
  return {{"dim", fp.dim},
          {"type", fp.type},
          {"lcs_dims", fp.lcs_dims},
          {"center_dim", fp.center_dim},
          {"derived_dims", fp.derived_dims},
          {"der_dim", fp.der_dim},
          {"lcs_centralizer_dims", fp.lcs_centralizer_dims},
          {"rank_in_basis", fp.rank_in_basis}};
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_gen(const SpecArgs& a, const std::string& out) {
  const FamilySpec s = to_spec(a);
  const AlgebraDocument doc{generate(s), s.str()};
  if (out.empty()) std::cout << serialize(doc);
  else save_document(out, doc);
  return kOk;
}

int cmd_jacobi(const std::string& file, const std::string& assign) {
  const AlgebraDocument doc = load_document(file);
  Algebra a = doc.algebra;
  if (!assign.empty()) a = a.specialize(parse_assign(assign));
  const JacobiReport r = jacobi_check(a);
  json residuals = json::array();
  for (const auto& [triple, terms] : r.residuals) {
    json t = json::array();
    for (const auto& [k, c] : terms) t.push_back({{"k", k}, {"coeff", c.str()}});
    residuals.push_back({{"triple", triple}, {"terms", std::move(t)}});
  }
  emit({{"holds", r.holds()}, {"residuals", std::move(residuals)}});
  return r.holds() ? kOk : kVerifyFail;
}

int cmd_series(const std::string& file, const std::string& assign) {
  const Algebra a = concrete(load_document(file), assign);
  const StructureTable t(a);
  json out = {{"derived_dims", derived_series_dims(t)}, {"center_dim", center_dim(t)}};
  try {
    const Filtration f = lower_central_series(t);
    const TypeInfo ti = type_of(f, a.dim());
    out["lcs_dims"] = f.dims();
    out["type"] = ti.type;
    out["nilindex"] = ti.nilindex;
    out["filiform"] = ti.filiform;
    out["quasifiliform"] = ti.quasifiliform;
    out["r"] = ti.r ? json(*ti.r) : json(nullptr);
    out["nilpotent"] = true;
  } catch (const NonNilpotent& e) {
    out["nilpotent"] = false;
    out["error"] = e.what();
    emit(out);
    return kVerifyFail;
  }
  emit(out);
  return kOk;
}

int cmd_gr(const std::string& file, const std::string& assign, const std::string& out_file) {
  const AlgebraDocument doc = load_document(file);
  const GradedAlgebra g = gr(concrete(doc, assign));
  const AlgebraDocument graded{g.algebra, doc.family ? std::optional<std::string>("gr " + *doc.family) : std::nullopt};
  json out = {{"weights", g.weights}, {"basis", matrix_json(g.basis)}};
  if (out_file.empty()) out["algebra"] = to_json(graded);
  else save_document(out_file, graded);
  emit(out);
  return kOk;
}

int cmd_derivations(const std::string& file, const std::string& assign) {
  const DerivationSpace d = derivation_space(concrete(load_document(file), assign));
  json basis = json::array();
  for (const auto& m : d.basis) basis.push_back(matrix_json(m));
  emit({{"dim", d.dim}, {"basis", std::move(basis)}});
  return kOk;
}

int cmd_rank(const std::string& file, const std::string& assign) {
  const WeightSpace w = diagonal_derivations(concrete(load_document(file), assign));
  json basis = json::array();
  for (const auto& v : w.basis) basis.push_back(strings(v));
  emit({{"rank_in_basis", w.dim}, {"weights", std::move(basis)}});
  return kOk;
}

int cmd_classify(const std::string& file, const std::string& assign) {
  const Classification c = classify_gr(concrete(load_document(file), assign));
  json cands = json::array();
  for (const auto& s : c.candidates) cands.push_back(s.str());
  emit({{"match", c.match ? json(c.match->str()) : json(nullptr)},
        {"candidates", std::move(cands)},
        {"gr_fingerprint", fingerprint_json(c.gr_fingerprint)}});
  return c.match ? kOk : kVerifyFail;
}

int cmd_constraints(const SpecArgs& a) {
  FamilySpec s = to_spec(a);
  s.alpha.reset();
  const ConstraintSet cs = extract_constraints(s);
  json gens = json::array();
  for (const auto& g : cs.generators) gens.push_back(g.str());
  const auto generic = find_generic_alpha(cs, alpha_count(s));
  emit({{"family", s.str()},
        {"params", cs.space ? cs.space->names() : std::vector<std::string>{}},
        {"generators", std::move(gens)},
        {"generic_alpha", generic ? strings(*generic) : json(nullptr)}});
  return kOk;
}

int cmd_iso_cn(long n, const std::string& alpha) {
  const CnReduction r = reduce_cn(n, parse_list(alpha));
  json stages = json::array();
  for (const auto& p : r.stages) stages.push_back(matrix_json(p));
  const std::string target = "Q_" + std::to_string(n);
  emit({{"source", FamilySpec{Family::Cn, n, 0, 0, 0, parse_list(alpha), false}.str()},
        {"stages", std::move(stages)},
        {"composed", matrix_json(r.composed)},
        {"result", (r.equals_target ? "EQUAL " : "DIFFERENT FROM ") + target}});
  return r.equals_target ? kOk : kVerifyFail;
}

int cmd_sweep(const std::string& families, long nmax, bool as_json) {
  if (const char* cap = std::getenv("QFLAB_NMAX")) {
    char* end = nullptr;
    const long v = std::strtol(cap, &end, 10);
    if (end == cap || *end != '\0' || v < 1) throw UsageError(std::string("QFLAB_NMAX is not a positive integer: ") + cap);
    nmax = std::min(nmax, v);
  }
  std::vector<Family> fs;
  if (families == "all") {
    for (const auto& fi : all_families()) fs.push_back(fi.family);
  } else {
    std::stringstream ss(families);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      const auto f = family_from_token(tok);
      if (!f) throw UsageError("unknown family '" + tok + "' in --families");
      fs.push_back(*f);
    }
  }
  const std::vector<SweepRow> rows = sweep(fs, nmax);
  bool clean = true;
  for (const auto& r : rows) clean = clean && r.clean();
  if (as_json) {
    json out = json::array();
    for (const auto& r : rows)
      out.push_back({{"family", std::string(info(r.family).token)},
                     {"n", r.n},
                     {"tuples", r.tuples},
                     {"no_alpha", r.no_alpha},
                     {"jacobi_fail", r.jacobi_fail},
                     {"rank_fail", r.rank_fail},
                     {"weights_fail", r.weights_fail},
                     {"gr_fail", r.gr_fail},
                     {"printed_pass", r.printed_pass},
                     {"failures", r.failures}});
    emit({{"n_max", nmax}, {"rows", std::move(out)}, {"clean", clean}});
  } else {
    std::cout << sweep_table(rows);
  }
  return clean ? kOk : kVerifyFail;
}

int cmd_weights(const SpecArgs& a) {
  const FamilySpec s = to_spec(a);
  const WeightAudit w = verify_claimed_weights(s);
  json weights = json::array();
  for (const auto& p : w.weights) weights.push_back(p.str());
  json viol = json::array();
  for (const auto& v : w.violations)
    viol.push_back({{"i", v.i}, {"j", v.j}, {"k", v.k}, {"lhs", v.lhs.str()}, {"rhs", v.rhs.str()}});
  emit({{"family", s.str()}, {"weights", std::move(weights)}, {"pass", w.pass()}, {"violations", std::move(viol)}});
  return w.pass() ? kOk : kVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact toolkit for filiform and quasi-filiform Lie algebras"};
  app.require_subcommand(1);

  SpecArgs spec;
  std::string file, out_file, assign, alpha, families = "all";
  long n = 0, nmax = 17;
  bool as_json = false;

  auto* gen = app.add_subcommand("gen", "generate a catalog algebra");
  add_spec_options(gen, spec);
  gen->add_option("-o,--output", out_file, "write the document here instead of stdout");

  const auto file_cmd = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("file", file, "algebra document")->required();
    c->add_option("--assign", assign, "parameter values, name=value,...");
    return c;
  };
  auto* jac = file_cmd("jacobi", "check the Jacobi identity");
  auto* ser = file_cmd("series", "lower central series, type, derived series");
  auto* grc = file_cmd("gr", "associated graded algebra");
  grc->add_option("-o,--output", out_file, "write the graded document here");
  auto* der = file_cmd("derivations", "basis of the derivation algebra");
  auto* rnk = file_cmd("rank", "diagonal derivations in the given basis");
  auto* cls = file_cmd("classify", "match gr against the graded catalog");

  auto* con = app.add_subcommand("constraints", "polynomial constraints on the alphas");
  add_spec_options(con, spec);
  auto* wts = app.add_subcommand("weights", "audit the stated diagonal form");
  add_spec_options(wts, spec);

  auto* iso = app.add_subcommand("iso-cn", "transform C_n(alpha) into Q_n");
  iso->add_option("--n", n, "even dimension")->required();
  iso->add_option("--alpha", alpha, "comma separated rationals")->required();

  auto* swp = app.add_subcommand("sweep", "run the verification matrix");
  swp->add_option("--families", families, "comma separated tokens or 'all'");
  swp->add_option("--n-max", nmax, "largest dimension (QFLAB_NMAX caps it)");
  swp->add_flag("--json", as_json, "emit JSON instead of a table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*gen) return cmd_gen(spec, out_file);
    if (*jac) return cmd_jacobi(file, assign);
    if (*ser) return cmd_series(file, assign);
    if (*grc) return cmd_gr(file, assign, out_file);
    if (*der) return cmd_derivations(file, assign);
    if (*rnk) return cmd_rank(file, assign);
    if (*cls) return cmd_classify(file, assign);
    if (*con) return cmd_constraints(spec);
    if (*wts) return cmd_weights(spec);
    if (*iso) return cmd_iso_cn(n, alpha);
    if (*swp) return cmd_sweep(families, nmax, as_json);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidParameters& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnknownFamily& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const MissingParameter& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const NonNilpotent& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return kVerifyFail;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kVerifyFail;
  }
  return kUsage;
}

#include "qflab/document.hpp"

#include <fstream>
#include <sstream>

#include "qflab/errors.hpp"

namespace qflab {

using nlohmann::json;

json to_json(const AlgebraDocument& doc) {
  const Algebra& a = doc.algebra;
  json out;
  out["dim"] = a.dim();
  out["params"] = a.params() ? a.params()->names() : std::vector<std::string>{};
  json brackets = json::array();
  for (const auto& [key, terms] : a.brackets()) {
    json t = json::array();
    for (const auto& [k, c] : terms) t.push_back({{"k", k}, {"coeff", c.str()}});
    brackets.push_back({{"i", key.first}, {"j", key.second}, {"terms", std::move(t)}});
  }
  out["brackets"] = std::move(brackets);
  if (doc.family) out["metadata"] = {{"family", *doc.family}};
  return out;
}

namespace {

std::size_t index_field(const json& j, const char* name) {
  if (!j.contains(name) || !j.at(name).is_number_unsigned())
    throw ParseError(std::string("field '") + name + "' must be a non-negative integer");
  return j.at(name).get<std::size_t>();
}

}  // namespace

AlgebraDocument document_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("algebra document must be a JSON object");
  const std::size_t dim = index_field(j, "dim");
  std::vector<std::string> names;
  if (j.contains("params")) {
    if (!j.at("params").is_array()) throw ParseError("field 'params' must be a list of names");
    for (const auto& p : j.at("params")) {
      if (!p.is_string()) throw ParseError("parameter names must be strings");
      names.push_back(p.get<std::string>());
    }
  }
  const ParamSpacePtr space = names.empty() ? nullptr : make_params(names);
  AlgebraBuilder b(dim, space);
  if (j.contains("brackets")) {
    if (!j.at("brackets").is_array()) throw ParseError("field 'brackets' must be a list");
    for (const auto& e : j.at("brackets")) {
      const std::size_t i = index_field(e, "i");
      const std::size_t jj = index_field(e, "j");
      if (i >= jj) throw ParseError("bracket entries need i < j");
      if (jj >= dim) throw ParseError("bracket index out of range");
      if (!e.contains("terms") || !e.at("terms").is_array()) throw ParseError("bracket entry without a terms list");
      for (const auto& t : e.at("terms")) {
        const std::size_t k = index_field(t, "k");
        if (!t.contains("coeff") || !t.at("coeff").is_string())
          throw ParseError("coefficient must be a polynomial string");
        if (k >= dim) throw ParseError("bracket index out of range");
        b.add(i, jj, k, Poly::parse(t.at("coeff").get<std::string>(), space));
      }
    }
  }
  AlgebraDocument doc{b.build(), std::nullopt};
  if (j.contains("metadata") && j.at("metadata").contains("family")) {
    const auto& f = j.at("metadata").at("family");
    if (!f.is_string()) throw ParseError("metadata.family must be a string");
    doc.family = f.get<std::string>();
  }
  return doc;
}

std::string serialize(const AlgebraDocument& doc) { return to_json(doc).dump(2) + "\n"; }

AlgebraDocument parse_document(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return document_from_json(j);
}

AlgebraDocument load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

void save_document(const std::string& path, const AlgebraDocument& doc) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << serialize(doc);
}

}  // namespace qflab

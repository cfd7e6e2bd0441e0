#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "qflab/liealg.hpp"

namespace qflab {

/// JSON form of an algebra: dim, params, brackets [{i, j, terms: [{k, coeff}]}]
/// with i < j, and an optional metadata.family string. Keys come out sorted
/// and every coefficient is an exact polynomial string.
struct AlgebraDocument {
  Algebra algebra;
  std::optional<std::string> family;
};

nlohmann::json to_json(const AlgebraDocument& doc);
AlgebraDocument document_from_json(const nlohmann::json& j);

std::string serialize(const AlgebraDocument& doc);
/// Throws ParseError on malformed input.
AlgebraDocument parse_document(std::string_view text);

AlgebraDocument load_document(const std::string& path);
void save_document(const std::string& path, const AlgebraDocument& doc);

}  // namespace qflab

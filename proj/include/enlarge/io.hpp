#pragma once

#include <string>
#include <vector>

#include "enlarge/certificate.hpp"
#include "json.hpp"

namespace enlarge::io {

using Json = nlohmann::ordered_json;

/// Malformed document. `where` is "line L, column C" for syntax errors or a JSON pointer
/// such as "/pairs/2/f" for field errors.
struct DocumentError : InputError {
  DocumentError(const std::string& source, const std::string& where, const std::string& what);
  std::string source, where;
};

/// Reads a file, or standard input for "-".
std::string read_source(const std::string& path);
Json parse(const std::string& text, const std::string& source = "<input>");
Json load(const std::string& path);

/// Compact-indented JSON with every number printed as %.17g.
std::string dump(const Json& doc, int indent = 2);

Json to_json(const Vec& v);
Json to_json(const Body& body);
Json to_json(const NormedSpace& space);
Json to_json(const Certificate& cert);

Vec vec_from_json(const Json& doc, const std::string& pointer = "", int dim = -1, const std::string& source = "<input>");
/// Array of equal-length arrays; each inner array becomes one column.
Mat columns_from_json(const Json& doc, const std::string& pointer = "", int dim = -1,
                      const std::string& source = "<input>");
Body body_from_json(const Json& doc, const std::string& pointer = "", const std::string& source = "<input>");
/// Accepts {"dim", "unit_ball"} or a bare body document.
NormedSpace space_from_json(const Json& doc, const std::string& pointer = "", const std::string& source = "<input>");
Certificate certificate_from_json(const Json& doc, const std::string& source = "<input>");

}  // namespace enlarge::io

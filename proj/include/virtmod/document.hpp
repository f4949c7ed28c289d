#pragma once

// The JSON document format shared by the library and the command line:
//
//   { "field": {"p": 2},
//     "quiver": {"vertices": ["1", "2"], "arrows": [{"name": "a", "from": "1", "to": "2"}]},
//     "relations": [[{"path": ["a", "b"], "coeff": 1}, ...], ...],
//     "modules": {"M": {"dims": {"1": 1, "2": 1}, "maps": {"a": [[1]]}}} }
//
// Matrices are (dim target) x (dim source), row-major. A module may carry a
// "diagram" object listing vertices {"layer", "upper", "lower"} (each of
// upper/lower maps quiver vertices to spanning rows) and "edges" [[u, w]].

#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "virtmod/diagram.hpp"
#include "virtmod/representation.hpp"
#include "virtmod/vcat.hpp"

namespace virtmod::document {

using Json = nlohmann::ordered_json;
using quivrep::QuiverPtr;
using quivrep::Representation;
using quivrep::SubRep;

struct ModuleEntry {
  Representation rep;
  std::optional<Json> diagram;
};

struct Document {
  QuiverPtr quiver;
  std::map<std::string, ModuleEntry> modules;

  /// Throws InputError for unknown names.
  const ModuleEntry& module(const std::string& name) const;
  std::size_t vertex(const std::string& name) const;
};

struct LoadOptions {
  /// Reject matrix entries and coefficients outside [0, p) instead of reducing them.
  bool field_check = false;
};

/// Parses and validates (shapes, names, relations); errors name the offending
/// field and, for syntax errors, the line and column.
Document parse(const std::string& text, const LoadOptions& opt = {});
Document load(const std::string& path, const LoadOptions& opt = {});

Json matrix_to_json(const exactla::Matrix& m);
/// Per-vertex RREF basis rows, keyed by vertex name (zero vertices omitted).
Json subrep_to_json(const Representation& m, const SubRep& s);
Json subfactor_to_json(const Representation& m, const vcat::Subfactor& s);
Json module_to_json(const Representation& m);
Json document_to_json(const Document& d);
SubRep subrep_from_json(const Representation& m, const Json& j, const std::string& where);

/// The supplied diagram when present (structurally checked, not validated),
/// otherwise the diagram of the distributive module.
diagram::DiagramGraph diagram_of(const Document& d, const std::string& module,
                                 std::uint64_t budget = quivrep::kDefaultBudget);

}  // namespace virtmod::document

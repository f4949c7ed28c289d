#include "virtmod/document.hpp"

#include <fstream>
#include <memory>
#include <set>
#include <sstream>

#include "virtmod/error.hpp"

namespace virtmod::document {

using exactla::Elem;
using exactla::Field;
using exactla::Matrix;
using exactla::Subspace;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const Json& member(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(where, "missing key \"" + key + "\"");
  return *it;
}

void only_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) fail(where, "unknown key \"" + it.key() + "\"");
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

std::int64_t as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<std::int64_t>();
}

Elem as_entry(const Field& f, const Json& j, const std::string& where, const LoadOptions& opt) {
  auto x = as_int(j, where);
  if (opt.field_check && (x < 0 || x >= static_cast<std::int64_t>(f.p())))
    fail(where, "entry " + std::to_string(x) + " is not reduced mod " + std::to_string(f.p()));
  return f.reduce(x);
}

/// A rows x cols matrix; an empty array stands for any matrix with no entries.
Matrix as_matrix(const Field& f, const Json& j, std::size_t rows, std::size_t cols,
                 const std::string& where, const LoadOptions& opt) {
  if (!j.is_array()) fail(where, "expected an array of rows");
  Matrix out(f, rows, cols);
  if (j.empty() && (rows == 0 || cols == 0)) return out;
  std::size_t got_cols = j.empty() || !j[0].is_array() ? 0 : j[0].size();
  bool ragged = false;
  for (const auto& r : j) ragged = ragged || !r.is_array() || r.size() != got_cols;
  if (ragged) fail(where, "rows are not arrays of equal length");
  if (j.size() != rows || got_cols != cols)
    fail(where, "expected a " + std::to_string(rows) + "x" + std::to_string(cols) +
                    " matrix, got " + std::to_string(j.size()) + "x" + std::to_string(got_cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c)
      out(r, c) = as_entry(f, j[r][c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]",
                           opt);
  return out;
}

std::size_t index_of(const std::vector<std::string>& names, const std::string& name,
                     const std::string& where, const char* what) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  fail(where, std::string("unknown ") + what + " '" + name + "'");
}

std::vector<std::string> arrow_names(const quivrep::BoundQuiver& q) {
  std::vector<std::string> out;
  for (const auto& a : q.arrows()) out.push_back(a.name);
  return out;
}

Representation parse_module(const QuiverPtr& q, const Json& j, const std::string& where,
                            const LoadOptions& opt) {
  only_keys(j, {"dims", "maps", "diagram"}, where);
  const auto& field = q->field();
  std::vector<std::size_t> dims(q->vertex_count(), 0);
  const auto& jd = member(j, "dims", where);
  if (!jd.is_object()) fail(where + ".dims", "expected an object");
  for (auto it = jd.begin(); it != jd.end(); ++it) {
    const auto w = where + ".dims." + it.key();
    auto v = index_of(q->vertices(), it.key(), w, "vertex");
    auto d = as_int(it.value(), w);
    if (d < 0 || d > 64) fail(w, "dimension must lie in [0, 64]");
    dims[v] = static_cast<std::size_t>(d);
  }

  Json jm = j.contains("maps") ? j.at("maps") : Json::object();
  if (!jm.is_object()) fail(where + ".maps", "expected an object");
  auto names = arrow_names(*q);
  for (auto it = jm.begin(); it != jm.end(); ++it)
    index_of(names, it.key(), where + ".maps." + it.key(), "arrow");
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < names.size(); ++a) {
    const auto& arr = q->arrow(a);
    const auto rows = dims[arr.target], cols = dims[arr.source];
    const auto w = where + ".maps." + names[a];
    auto it = jm.find(names[a]);
    if (it == jm.end()) {
      if (rows && cols) fail(where + ".maps", "missing map for arrow '" + names[a] + "'");
      maps.emplace_back(field, rows, cols);
    } else {
      maps.push_back(as_matrix(field, *it, rows, cols, w, opt));
    }
  }
  Representation rep(q, dims, std::move(maps));
  if (auto bad = quivrep::validate(rep))
    fail(where, "relation " + std::to_string(bad->relation) + " is violated");
  return rep;
}

}  // namespace

const ModuleEntry& Document::module(const std::string& name) const {
  auto it = modules.find(name);
  if (it == modules.end()) throw InputError("unknown module '" + name + "'");
  return it->second;
}

std::size_t Document::vertex(const std::string& name) const {
  return index_of(quiver->vertices(), name, "vertex", "vertex");
}

Document parse(const std::string& text, const LoadOptions& opt) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError("line " + std::to_string(line) + ", column " + std::to_string(col) +
                     ": malformed JSON");
  }
  only_keys(root, {"field", "quiver", "relations", "modules"}, "document");

  const auto& jf = member(root, "field", "document");
  only_keys(jf, {"p"}, "field");
  auto p = as_int(member(jf, "p", "field"), "field.p");
  if (p < 2 || p >= (1 << 16)) fail("field.p", "expected a prime below 65536");
  Field field(static_cast<std::uint32_t>(p));

  const auto& jq = member(root, "quiver", "document");
  only_keys(jq, {"vertices", "arrows"}, "quiver");
  const auto& jv = member(jq, "vertices", "quiver");
  if (!jv.is_array()) fail("quiver.vertices", "expected an array");
  std::vector<std::string> vertices;
  for (std::size_t i = 0; i < jv.size(); ++i)
    vertices.push_back(as_string(jv[i], "quiver.vertices[" + std::to_string(i) + "]"));
  const auto& ja = member(jq, "arrows", "quiver");
  if (!ja.is_array()) fail("quiver.arrows", "expected an array");
  std::vector<quivrep::Arrow> arrows;
  for (std::size_t i = 0; i < ja.size(); ++i) {
    const auto w = "quiver.arrows[" + std::to_string(i) + "]";
    only_keys(ja[i], {"name", "from", "to"}, w);
    quivrep::Arrow a;
    a.name = as_string(member(ja[i], "name", w), w + ".name");
    a.source = index_of(vertices, as_string(member(ja[i], "from", w), w + ".from"), w + ".from",
                        "vertex");
    a.target = index_of(vertices, as_string(member(ja[i], "to", w), w + ".to"), w + ".to",
                        "vertex");
    arrows.push_back(a);
  }
  std::vector<std::string> anames;
  for (const auto& a : arrows) anames.push_back(a.name);

  std::vector<quivrep::Relation> relations;
  if (root.contains("relations")) {
    const auto& jr = root.at("relations");
    if (!jr.is_array()) fail("relations", "expected an array");
    for (std::size_t r = 0; r < jr.size(); ++r) {
      const auto w = "relations[" + std::to_string(r) + "]";
      if (!jr[r].is_array()) fail(w, "expected an array of terms");
      quivrep::Relation rel;
      for (std::size_t t = 0; t < jr[r].size(); ++t) {
        const auto wt = w + "[" + std::to_string(t) + "]";
        only_keys(jr[r][t], {"path", "coeff"}, wt);
        const auto& jp = member(jr[r][t], "path", wt);
        if (!jp.is_array()) fail(wt + ".path", "expected an array of arrow names");
        quivrep::PathTerm term;
        for (std::size_t k = 0; k < jp.size(); ++k) {
          const auto wk = wt + ".path[" + std::to_string(k) + "]";
          term.path.push_back(index_of(anames, as_string(jp[k], wk), wk, "arrow"));
        }
        term.coeff = jr[r][t].contains("coeff")
                         ? as_entry(field, jr[r][t].at("coeff"), wt + ".coeff", opt)
                         : 1;
        rel.push_back(std::move(term));
      }
      relations.push_back(std::move(rel));
    }
  }

  Document doc;
  try {
    doc.quiver = std::make_shared<const quivrep::BoundQuiver>(field, vertices, arrows, relations);
  } catch (const InputError& e) {
    fail("quiver", e.what());
  }

  const auto& jm = member(root, "modules", "document");
  if (!jm.is_object()) fail("modules", "expected an object");
  for (auto it = jm.begin(); it != jm.end(); ++it) {
    const auto w = "modules." + it.key();
    ModuleEntry entry{parse_module(doc.quiver, it.value(), w, opt), std::nullopt};
    if (it.value().contains("diagram")) entry.diagram = it.value().at("diagram");
    doc.modules.emplace(it.key(), std::move(entry));
  }
  return doc;
}

Document load(const std::string& path, const LoadOptions& opt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), opt);
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

Json subrep_to_json(const Representation& m, const SubRep& s) {
  Json out = Json::object();
  for (std::size_t v = 0; v < m.vertex_count(); ++v)
    if (s.dim(v)) out[m.quiver().vertices()[v]] = matrix_to_json(s.spaces[v].basis());
  return out;
}

Json subfactor_to_json(const Representation& m, const vcat::Subfactor& s) {
  return Json{{"upper", subrep_to_json(m, s.upper)}, {"lower", subrep_to_json(m, s.lower)}};
}

Json module_to_json(const Representation& m) {
  Json dims = Json::object(), maps = Json::object();
  const auto& q = m.quiver();
  for (std::size_t v = 0; v < m.vertex_count(); ++v) dims[q.vertices()[v]] = m.dim(v);
  for (std::size_t a = 0; a < q.arrows().size(); ++a)
    maps[q.arrow(a).name] = matrix_to_json(m.map(a));
  return Json{{"dims", dims}, {"maps", maps}};
}

Json document_to_json(const Document& d) {
  const auto& q = *d.quiver;
  Json arrows = Json::array();
  for (const auto& a : q.arrows())
    arrows.push_back({{"name", a.name}, {"from", q.vertices()[a.source]}, {"to", q.vertices()[a.target]}});
  Json relations = Json::array();
  for (const auto& rel : q.relations()) {
    Json terms = Json::array();
    for (const auto& t : rel) {
      Json path = Json::array();
      for (auto a : t.path) path.push_back(q.arrow(a).name);
      terms.push_back({{"path", path}, {"coeff", t.coeff}});
    }
    relations.push_back(terms);
  }
  Json modules = Json::object();
  for (const auto& [name, entry] : d.modules) {
    auto j = module_to_json(entry.rep);
    if (entry.diagram) j["diagram"] = *entry.diagram;
    modules[name] = j;
  }
  return Json{{"field", {{"p", q.field().p()}}},
              {"quiver", {{"vertices", q.vertices()}, {"arrows", arrows}}},
              {"relations", relations},
              {"modules", modules}};
}

SubRep subrep_from_json(const Representation& m, const Json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object of basis rows per vertex");
  SubRep out = quivrep::zero_sub(m);
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto w = where + "." + it.key();
    auto v = index_of(m.quiver().vertices(), it.key(), w, "vertex");
    const auto& rows = it.value();
    if (!rows.is_array()) fail(w, "expected an array of rows");
    auto mat = as_matrix(m.field(), rows, rows.size(), m.dim(v), w, LoadOptions{});
    out.spaces[v] = Subspace::span(mat);
  }
  return out;
}

diagram::DiagramGraph diagram_of(const Document& d, const std::string& module,
                                 std::uint64_t budget) {
  const auto& entry = d.module(module);
  if (!entry.diagram) {
    try {
      return diagram::build_distributive(entry.rep, budget);
    } catch (const MathError&) {
      throw MathError("module '" + module +
                      "' is not distributive and the document supplies no diagram");
    }
  }
  const auto where = "modules." + module + ".diagram";
  const auto& j = *entry.diagram;
  only_keys(j, {"vertices", "edges"}, where);
  const auto& jv = member(j, "vertices", where);
  if (!jv.is_array()) fail(where + ".vertices", "expected an array");
  std::vector<diagram::DiagramVertex> vertices;
  for (std::size_t i = 0; i < jv.size(); ++i) {
    const auto w = where + ".vertices[" + std::to_string(i) + "]";
    only_keys(jv[i], {"layer", "upper", "lower"}, w);
    auto layer = as_int(member(jv[i], "layer", w), w + ".layer");
    if (layer < 0) fail(w + ".layer", "must be non-negative");
    diagram::DiagramVertex v;
    v.layer = static_cast<std::size_t>(layer);
    v.constituent.upper = subrep_from_json(entry.rep, member(jv[i], "upper", w), w + ".upper");
    v.constituent.lower = jv[i].contains("lower")
                              ? subrep_from_json(entry.rep, jv[i].at("lower"), w + ".lower")
                              : quivrep::zero_sub(entry.rep);
    vertices.push_back(std::move(v));
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  if (j.contains("edges")) {
    const auto& je = j.at("edges");
    if (!je.is_array()) fail(where + ".edges", "expected an array");
    for (std::size_t i = 0; i < je.size(); ++i) {
      const auto w = where + ".edges[" + std::to_string(i) + "]";
      if (!je[i].is_array() || je[i].size() != 2) fail(w, "expected a pair [upper, lower]");
      auto u = as_int(je[i][0], w), x = as_int(je[i][1], w);
      if (u < 0 || x < 0) fail(w, "vertex ids must be non-negative");
      edges.emplace_back(static_cast<std::size_t>(u), static_cast<std::size_t>(x));
    }
  }
  try {
    return diagram::make_diagram(entry.rep, std::move(vertices), std::move(edges));
  } catch (const InputError& e) {
    fail(where, e.what());
  }
}

}  // namespace virtmod::document

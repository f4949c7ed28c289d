#include "virtmod/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "virtmod/diagram.hpp"
#include "virtmod/document.hpp"
#include "virtmod/error.hpp"
#include "virtmod/extracts.hpp"
#include "virtmod/extspace.hpp"
#include "virtmod/lattice.hpp"

namespace virtmod::cli {

using document::Json;
using quivrep::Representation;
using quivrep::SubRep;

namespace {

struct Globals {
  bool field_check = false;
  bool json = false;
  std::uint64_t budget = quivrep::kDefaultBudget;
};

template <typename T>
std::string list(const std::vector<T>& xs) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  os << ']';
  return os.str();
}

std::string set_text(diagram::VertexSet s) {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto v : diagram::members(s)) {
    os << (first ? "" : ",") << v;
    first = false;
  }
  os << '}';
  return os.str();
}

std::string path_text(const std::vector<std::size_t>& path) {
  std::string s;
  for (std::size_t i = 0; i < path.size(); ++i) s += (i ? " -> v" : "v") + std::to_string(path[i]);
  return s;
}

/// "S1 + S2^2" for a dimension vector.
std::string types_text(const quivrep::BoundQuiver& q, const std::vector<std::size_t>& dims) {
  std::string s;
  for (std::size_t v = 0; v < dims.size(); ++v) {
    if (!dims[v]) continue;
    if (!s.empty()) s += " + ";
    s += "S" + q.vertices()[v];
    if (dims[v] > 1) s += "^" + std::to_string(dims[v]);
  }
  return s.empty() ? "0" : s;
}

std::vector<std::size_t> difference(const SubRep& hi, const SubRep& lo) {
  auto a = hi.dims(), b = lo.dims();
  for (std::size_t v = 0; v < a.size(); ++v) a[v] -= b[v];
  return a;
}

std::vector<std::int64_t> parse_coeffs(const std::string& text) {
  std::vector<std::int64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw InputError("'" + text + "' is not a comma-separated list of integers");
    }
  }
  return out;
}

diagram::VertexSet parse_set(const diagram::DiagramGraph& d, const std::string& text) {
  diagram::VertexSet s = 0;
  for (auto v : parse_coeffs(text)) {
    if (v < 0 || static_cast<std::size_t>(v) >= d.size())
      throw InputError("invalid vertex id " + std::to_string(v) + " (diagram has " +
                       std::to_string(d.size()) + " vertices)");
    s |= diagram::bit(static_cast<std::size_t>(v));
  }
  return s;
}

Json set_json(diagram::VertexSet s) {
  Json out = Json::array();
  for (auto v : diagram::members(s)) out.push_back(v);
  return out;
}

document::Document load(const Globals& g, const std::string& path) {
  return document::load(path, {g.field_check});
}

int cmd_validate(const Globals& g, const std::string& path, std::ostream& out) {
  auto doc = load(g, path);
  if (g.json) {
    Json mods = Json::object();
    for (const auto& [name, entry] : doc.modules)
      mods[name] = {{"dims", entry.rep.dims()}, {"diagram", entry.diagram.has_value()}};
    out << Json{{"status", "ok"}, {"modules", mods}}.dump(2) << "\n";
    return kOk;
  }
  out << "ok\n";
  for (const auto& [name, entry] : doc.modules)
    out << "module " << name << ": dims " << list(entry.rep.dims())
        << (entry.diagram ? ", with diagram" : "") << "\n";
  return kOk;
}

int cmd_series(const Globals& g, const std::string& path, const std::string& module, bool socle,
               bool radical, std::ostream& out) {
  auto doc = load(g, path);
  const auto& m = doc.module(module).rep;
  if (!socle && !radical) radical = true;
  Json report = Json::object();
  auto emit = [&](const char* kind, const std::vector<SubRep>& series, bool descending) {
    Json layers = Json::array();
    const std::size_t n = series.size() - 1;
    if (!g.json)
      out << kind << " series of " << module << ": " << n << (n == 1 ? " layer\n" : " layers\n");
    for (std::size_t k = 0; k < n; ++k) {
      auto dims = descending ? difference(series[k], series[k + 1])
                             : difference(series[k + 1], series[k]);
      if (g.json)
        layers.push_back({{"dims", dims}, {"types", types_text(m.quiver(), dims)}});
      else
        out << "layer " << k << ": dims " << list(dims) << "  " << types_text(m.quiver(), dims)
            << "\n";
    }
    report[kind] = layers;
  };
  if (radical) emit("radical", quivrep::radical_series(m), true);
  if (socle) emit("socle", quivrep::socle_series(m), false);
  if (g.json) out << report.dump(2) << "\n";
  return kOk;
}

int cmd_ext(const Globals& g, const std::string& path, const std::string& c, const std::string& a,
            const std::vector<std::string>& sum, const std::vector<std::string>& act,
            std::ostream& out) {
  auto doc = load(g, path);
  auto f = extspace::build_frame(doc.quiver, doc.vertex(c), doc.vertex(a));
  auto classes = extspace::enumerate_classes(f);
  Json report{{"m", f.m()}, {"class_count", classes.size()}};
  Json jc = Json::array();
  if (!g.json) {
    out << "Ext^1(S" << c << ", S" << a << "): m = " << f.m() << "\n";
    out << "classes: " << classes.size() << "\n";
  }
  for (const auto& cl : classes) {
    std::vector<std::int64_t> point(cl.point.begin(), cl.point.end());
    auto kernel = extspace::realize_as_quotient(f, extspace::make_vector(f, point)).kernel;
    auto kj = document::subrep_to_json(f.p, kernel);
    if (g.json)
      jc.push_back({{"point", cl.point}, {"kernel", kj}});
    else
      out << "class " << list(cl.point) << ": L = " << kj.dump() << "\n";
  }
  report["classes"] = jc;
  if (!sum.empty()) {
    auto x = extspace::make_vector(f, parse_coeffs(sum.at(0)));
    auto y = extspace::make_vector(f, parse_coeffs(sum.at(1)));
    auto s = extspace::ext_sum(f, x, y);
    if (g.json)
      report["sum"] = s.coeffs;
    else
      out << "sum " << list(x.coeffs) << " + " << list(y.coeffs) << " = " << list(s.coeffs) << "\n";
  }
  if (!act.empty()) {
    const auto& side = act.at(0);
    auto scalar = f.field().reduce(parse_coeffs(act.at(1)).at(0));
    auto x = extspace::make_vector(f, parse_coeffs(act.at(2)));
    extspace::ExtVector r;
    if (side == "left")
      r = extspace::act_left(f, scalar, x);
    else if (side == "right")
      r = extspace::act_right(f, x, scalar);
    else
      throw InputError("--act side must be 'left' or 'right'");
    if (g.json)
      report["action"] = {{"side", side}, {"scalar", scalar}, {"result", r.coeffs}};
    else
      out << side << " action by " << scalar << " on " << list(x.coeffs) << " = "
          << list(r.coeffs) << "\n";
  }
  if (g.json) out << report.dump(2) << "\n";
  return kOk;
}

Json vertex_json(const diagram::DiagramGraph& d, std::size_t v) {
  const auto& x = d.vertices[v];
  return {{"id", v},
          {"type", d.module.quiver().vertices()[x.type]},
          {"layer", x.layer},
          {"constituent", document::subfactor_to_json(d.module, x.constituent)}};
}

int cmd_diagram(const Globals& g, const std::string& path, const std::string& module,
                const std::string& dot_path, std::ostream& out) {
  auto doc = load(g, path);
  auto d = document::diagram_of(doc, module, g.budget);
  auto report = diagram::validate(d, g.budget);
  if (!dot_path.empty()) {
    std::ofstream f(dot_path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + dot_path + "'");
    f << diagram::to_dot(d);
  }
  const auto& names = d.module.quiver().vertices();
  if (g.json) {
    Json vs = Json::array(), es = Json::array(), viol = Json::array(), add = Json::array();
    for (std::size_t v = 0; v < d.size(); ++v) vs.push_back(vertex_json(d, v));
    for (auto [u, w] : d.edges) es.push_back({u, w});
    for (const auto& v : report.violations)
      viol.push_back({{"item", std::string(1, v.item)}, {"witness", v.witness}, {"message", v.message}});
    for (auto [u, w] : report.addable_edges) add.push_back({u, w});
    out << Json{{"vertices", vs},
                {"edges", es},
                {"valid", report.ok()},
                {"violations", viol},
                {"locally_sated", report.locally_sated},
                {"addable_edges", add}}
               .dump(2)
        << "\n";
  } else {
    out << "diagram of " << module << ": " << d.size() << " vertices, " << d.edges.size()
        << " edges\n";
    for (std::size_t v = 0; v < d.size(); ++v)
      out << "v" << v << ": " << names[d.vertices[v].type] << "@" << d.vertices[v].layer << "\n";
    for (auto [u, w] : d.edges) out << "v" << u << " -> v" << w << "\n";
    for (const auto& v : report.violations)
      out << "violation (" << v.item << "): " << v.message << "; witness " << list(v.witness)
          << "\n";
    if (report.ok()) out << "valid\n";
    if (report.locally_sated) {
      out << "locally sated\n";
    } else {
      out << "not locally sated; addable edges:";
      for (auto [u, w] : report.addable_edges) out << " v" << u << "->v" << w;
      out << "\n";
    }
    if (!dot_path.empty()) out << "dot written to " << dot_path << "\n";
  }
  return report.ok() ? kOk : kNegative;
}

int cmd_realize(const Globals& g, const std::string& path, const std::string& module,
                const std::string& set, std::ostream& out) {
  auto doc = load(g, path);
  auto d = document::diagram_of(doc, module, g.budget);
  auto s = parse_set(d, set);
  if (s == 0) throw InputError("empty vertex set");
  auto r = diagram::realizable_set(d, s);
  const bool connected = diagram::is_connected(d, s);
  if (g.json) {
    Json j{{"set", set_json(s)}, {"connected", connected}, {"realizable", r.realizable}};
    if (r.realizable)
      j["subfactor"] = document::subfactor_to_json(d.module, diagram::realize_set(d, s));
    else
      j["witness"] = r.witness;
    out << j.dump(2) << "\n";
  } else if (r.realizable) {
    auto sf = diagram::realize_set(d, s);
    out << set_text(s) << ": realizable as " << document::subfactor_to_json(d.module, sf).dump()
        << "\n";
  } else {
    out << set_text(s) << ": not realizable, witness " << path_text(r.witness) << "\n";
  }
  return r.realizable ? kOk : kNegative;
}

int cmd_vgroup(const Globals& g, const std::string& path, const std::string& module,
               const std::vector<std::string>& sets, std::ostream& out) {
  auto doc = load(g, path);
  auto d = document::diagram_of(doc, module, g.budget);
  std::vector<diagram::VertexSet> terms;
  for (const auto& s : sets) terms.push_back(parse_set(d, s));
  auto forms = diagram::reduction_fixpoints(d, terms);
  if (g.json) {
    Json fs = Json::array();
    for (const auto& f : forms) {
      Json t = Json::array();
      for (auto x : f.terms) t.push_back(set_json(x));
      fs.push_back(t);
    }
    out << Json{{"unique", forms.size() == 1},
                {"reduced_length", forms.size() == 1 ? forms.front().reduced_length() : 0},
                {"reduced_forms", fs}}
               .dump(2)
        << "\n";
    return forms.size() == 1 ? kOk : kNegative;
  }
  if (forms.size() != 1) {
    out << "ambiguous reduction: " << forms.size() << " reduced forms\n";
    for (const auto& f : forms) {
      out << " ";
      for (auto x : f.terms) out << " " << set_text(x);
      out << "\n";
    }
    return kNegative;
  }
  out << "reduced length: " << forms.front().reduced_length() << "\nmembers:";
  for (auto x : forms.front().terms) out << " " << set_text(x);
  out << "\n";
  return kOk;
}

int cmd_extract(const Globals& g, const std::string& path, const std::string& module,
                std::size_t vertex, const std::string& kind_name, std::ostream& out) {
  auto doc = load(g, path);
  auto d = document::diagram_of(doc, module, g.budget);
  if (vertex >= d.size()) throw InputError("invalid vertex id " + std::to_string(vertex));
  auto kind = kind_name == "projective" ? extracts::Kind::projective : extracts::Kind::injective;
  const auto& m = d.module;
  const auto& s = d.vertices[vertex].constituent;
  auto lattice = quivrep::enumerate_submodules(m, g.budget);
  auto filtrations = extracts::filtrations_through(m, lattice, s, kind);
  auto e = extracts::extract_of_simple(m, s, kind);
  const auto type = m.quiver().vertices()[e.vertex];
  if (g.json) {
    out << Json{{"kind", kind_name},
                {"vertex", vertex},
                {"type", type},
                {"filtrations", filtrations.size()},
                {"value", document::subfactor_to_json(m, e.value)},
                {"canonical", document::subrep_to_json(
                                  kind == extracts::Kind::injective
                                      ? quivrep::injective_of_simple(m.quiver_ptr(), e.vertex)
                                      : quivrep::projective_of_simple(m.quiver_ptr(), e.vertex),
                                  e.canonical)}}
               .dump(2)
        << "\n";
    return kOk;
  }
  out << kind_name << " extract of v" << vertex << " (S" << type << ")\n";
  out << "filtrations: " << filtrations.size() << " (all agree)\n";
  out << "value: dims " << list(e.value.dims()) << "  " << types_text(m.quiver(), e.value.dims())
      << "\n";
  out << "value subfactor: " << document::subfactor_to_json(m, e.value).dump() << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with virtual constituents of quiver representations", "virtmod"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--field-check", g.field_check, "reject matrix entries not reduced mod p");
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_option("--budget", g.budget, "cap on enumerated candidate vectors")
      ->capture_default_str();

  std::string doc, module, c, a, set, dot, kind = "injective";
  bool socle = false, radical = false;
  std::size_t vertex = 0;
  std::vector<std::string> sum, act, sets;

  auto* validate = app.add_subcommand("validate", "check a document");
  validate->add_option("document", doc)->required();

  auto* series = app.add_subcommand("series", "radical or socle layers of a module");
  series->add_option("document", doc)->required();
  series->add_option("module", module)->required();
  series->add_flag("--socle", socle, "socle series");
  series->add_flag("--radical", radical, "radical series (default)");

  auto* ext = app.add_subcommand("ext", "Ext^1 between two simples and its classes");
  ext->add_option("document", doc)->required();
  ext->add_option("C", c, "head vertex")->required();
  ext->add_option("A", a, "socle vertex")->required();
  ext->add_option("--sum", sum, "add two coefficient vectors, e.g. --sum 1,0 0,1")->expected(2);
  ext->add_option("--act", act, "scalar action: --act left|right SCALAR VECTOR")->expected(3);

  auto* diag = app.add_subcommand("diagram", "build or read a diagram and validate it");
  diag->add_option("document", doc)->required();
  diag->add_option("module", module)->required();
  diag->add_option("--dot", dot, "write a Graphviz description to this path");

  auto* realize = app.add_subcommand("realize", "decide whether a vertex set is realizable");
  realize->add_option("document", doc)->required();
  realize->add_option("module", module)->required();
  realize->add_option("set", set, "comma-separated vertex ids")->required();

  auto* vgroup = app.add_subcommand("vgroup", "reduce a virtual sum of vertex sets");
  vgroup->add_option("document", doc)->required();
  vgroup->add_option("module", module)->required();
  vgroup->add_option("sets", sets, "comma-separated vertex ids per term")->required();

  auto* extract = app.add_subcommand("extract", "injective or projective extract of a vertex");
  extract->add_option("document", doc)->required();
  extract->add_option("module", module)->required();
  extract->add_option("vertex", vertex, "diagram vertex id")->required();
  extract->add_option("--kind", kind, "injective or projective")
      ->check(CLI::IsMember({"injective", "projective"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (validate->parsed()) return cmd_validate(g, doc, out);
    if (series->parsed()) return cmd_series(g, doc, module, socle, radical, out);
    if (ext->parsed()) return cmd_ext(g, doc, c, a, sum, act, out);
    if (diag->parsed()) return cmd_diagram(g, doc, module, dot, out);
    if (realize->parsed()) return cmd_realize(g, doc, module, set, out);
    if (vgroup->parsed()) return cmd_vgroup(g, doc, module, sets, out);
    if (extract->parsed()) return cmd_extract(g, doc, module, vertex, kind, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const MathError& e) {
    err << "negative: " << e.what() << "\n";
    return kNegative;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace virtmod::cli

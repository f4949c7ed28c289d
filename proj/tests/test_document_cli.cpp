#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_support.hpp"
#include "virtmod/cli.hpp"
#include "virtmod/document.hpp"
#include "virtmod/error.hpp"

using namespace vt;
using namespace virtmod::document;

namespace {

const std::string kData = VIRTMOD_DATA_DIR;

struct Result {
  int code;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "virtmod");
  std::ostringstream out, err;
  int code = virtmod::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return kData + "/" + name; }

std::string write_temp(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / ("virtmod_" + name);
  std::ofstream(path) << text;
  return path.string();
}

const char* kKroneckerHeader = R"({"field": {"p": 2},
 "quiver": {"vertices": ["1", "2"],
            "arrows": [{"name": "a", "from": "1", "to": "2"}, {"name": "b", "from": "1", "to": "2"}]},
)";

}  // namespace

TEST(Document, ValidKroneckerIsOk) {
  auto r = run_cli({"validate", data("kronecker.json")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, 3), "ok\n");
}

TEST(Document, ShapeErrorNamesTheArrow) {
  auto path = write_temp("shape.json", std::string(kKroneckerHeader) +
      R"( "modules": {"M": {"dims": {"1": 1, "2": 2}, "maps": {"a": [[1]], "b": [[0], [1]]}}}})");
  auto r = run_cli({"validate", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("modules.M.maps.a"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("expected a 2x1 matrix, got 1x1"), std::string::npos) << r.err;
}

TEST(Document, ViolatedRelationNamesTheIndex) {
  auto path = write_temp("relation.json", R"({"field": {"p": 2},
 "quiver": {"vertices": ["1", "2", "3"],
            "arrows": [{"name": "a", "from": "1", "to": "2"}, {"name": "b", "from": "2", "to": "3"}]},
 "relations": [[{"path": ["a", "b"], "coeff": 1}]],
 "modules": {"M": {"dims": {"1": 1, "2": 1, "3": 1}, "maps": {"a": [[1]], "b": [[1]]}}}})");
  auto r = run_cli({"validate", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("relation 0 is violated"), std::string::npos) << r.err;
}

TEST(Document, SyntaxErrorsCarryLineAndColumn) {
  auto path = write_temp("syntax.json", "{\"field\": {\"p\": 2},\n \"quiver\": [1, 2,,]\n}");
  auto r = run_cli({"validate", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2"), std::string::npos) << r.err;
}

TEST(Document, FieldCheckRejectsUnreducedEntries) {
  auto path = write_temp("unreduced.json", std::string(kKroneckerHeader) +
      R"( "modules": {"M": {"dims": {"1": 1, "2": 1}, "maps": {"a": [[3]], "b": [[0]]}}}})");
  EXPECT_EQ(run_cli({"validate", path}).code, 0);
  auto r = run_cli({"--field-check", "validate", path});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("not reduced mod 2"), std::string::npos) << r.err;
}

TEST(Document, OtherInputErrors) {
  EXPECT_EQ(run_cli({"validate", data("missing.json")}).code, 2);
  EXPECT_EQ(run_cli({"series", data("a3.json"), "Q"}).code, 2);
  EXPECT_EQ(run_cli({"nonsense"}).code, 2);
  auto p4 = write_temp("p4.json", R"({"field": {"p": 4}, "quiver": {"vertices": [], "arrows": []}, "modules": {}})");
  EXPECT_EQ(run_cli({"validate", p4}).code, 2);
  auto unknown = write_temp("unknown.json", std::string(kKroneckerHeader) +
      R"( "modules": {"M": {"dims": {"7": 1}}}})");
  auto r = run_cli({"validate", unknown});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("unknown vertex '7'"), std::string::npos);
}

TEST(Document, RoundTripThroughJson) {
  auto doc = load(data("square.json"));
  auto again = parse(document_to_json(doc).dump());
  ASSERT_EQ(again.modules.size(), doc.modules.size());
  for (const auto& [name, entry] : doc.modules) {
    EXPECT_EQ(again.module(name).rep.dims(), entry.rep.dims());
    EXPECT_EQ(again.module(name).rep.maps(), entry.rep.maps());
  }
  EXPECT_EQ(again.quiver->relations().size(), 1u);
}

TEST(Cli, SeriesOfUniserialAndSemisimple) {
  auto r = run_cli({"series", data("a3.json"), "P1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("3 layers"), std::string::npos);
  EXPECT_NE(r.out.find("layer 0: dims [1,0,0]  S1\nlayer 1: dims [0,1,0]  S2\nlayer 2: dims [0,0,1]  S3"),
            std::string::npos)
      << r.out;
  auto semi = run_cli({"series", data("a3.json"), "S1_S2_S3"});
  EXPECT_NE(semi.out.find("1 layer\n"), std::string::npos);
  for (const char* m : {"P1", "S1_S2_S3"}) {
    auto j = Json::parse(run_cli({"--json", "series", data("a3.json"), m, "--socle", "--radical"}).out);
    EXPECT_EQ(j["socle"].size(), j["radical"].size());
  }
}

TEST(Cli, ExtReports) {
  auto r = run_cli({"ext", data("kronecker.json"), "1", "2", "--sum", "1,0", "0,1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("m = 2"), std::string::npos);
  EXPECT_NE(r.out.find("classes: 3"), std::string::npos);
  EXPECT_NE(r.out.find("= [1,1]"), std::string::npos);
  auto j = Json::parse(run_cli({"--json", "ext", data("a3.json"), "1", "2"}).out);
  EXPECT_EQ(j["m"], 1);
  EXPECT_EQ(j["class_count"], 1);
  EXPECT_EQ(run_cli({"ext", data("a3.json"), "1", "9"}).code, 2);
}

TEST(Cli, DiagramDotIsDeterministic) {
  auto dot1 = (std::filesystem::temp_directory_path() / "virtmod_chain1.dot").string();
  auto dot2 = (std::filesystem::temp_directory_path() / "virtmod_chain2.dot").string();
  auto r1 = run_cli({"diagram", data("a3.json"), "P1", "--dot", dot1});
  auto r2 = run_cli({"diagram", data("a3.json"), "P1", "--dot", dot2});
  EXPECT_EQ(r1.code, 0);
  auto slurp = [](const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  auto text = slurp(dot1);
  EXPECT_EQ(text, slurp(dot2));
  std::size_t nodes = 0, edges = 0;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    if (line.find("[label=") != std::string::npos) ++nodes;
    if (line.find("->") != std::string::npos) ++edges;
  }
  EXPECT_EQ(nodes, 3u);
  EXPECT_EQ(edges, 2u);
  EXPECT_NE(r1.out.find("locally sated"), std::string::npos);
}

TEST(Cli, SuppliedDiagramsAreValidated) {
  auto fan = run_cli({"diagram", data("kronecker.json"), "P1"});
  EXPECT_EQ(fan.code, 0) << fan.out << fan.err;
  auto tri = run_cli({"diagram", data("a3.json"), "P1_triangle"});
  EXPECT_EQ(tri.code, 1);
  EXPECT_NE(tri.out.find("violation (c)"), std::string::npos);
  auto nondist = run_cli({"diagram", data("square.json"), "P2_P3"});
  EXPECT_EQ(nondist.code, 1);
  EXPECT_NE(nondist.err.find("not distributive"), std::string::npos);
}

TEST(Cli, RealizeAndVgroup) {
  auto detour = run_cli({"realize", data("a3.json"), "P1_triangle", "0,2"});
  EXPECT_EQ(detour.code, 1);
  EXPECT_NE(detour.out.find("not realizable, witness v0 -> v1 -> v2"), std::string::npos);
  EXPECT_EQ(run_cli({"realize", data("a3.json"), "P1", "1"}).code, 0);
  EXPECT_EQ(run_cli({"realize", data("a3.json"), "P1", "5"}).code, 2);

  auto arms = run_cli({"vgroup", data("upward_fan.json"), "I1", "0,2", "1,2"});
  EXPECT_EQ(arms.code, 0);
  EXPECT_NE(arms.out.find("reduced length: 1"), std::string::npos);
  auto formal = run_cli({"vgroup", data("a3.json"), "P1", "0", "2"});
  EXPECT_NE(formal.out.find("reduced length: 2"), std::string::npos);
  EXPECT_EQ(run_cli({"vgroup", data("square.json"), "P1", "1", "0", "3"}).code, 1);
}

TEST(Cli, ExtractAndBudget) {
  auto r = run_cli({"extract", data("a3.json"), "P1", "1", "--kind", "projective"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("dims [0,1,1]"), std::string::npos);
  EXPECT_EQ(run_cli({"--budget", "2", "diagram", data("a3.json"), "P1"}).code, 3);
  EXPECT_EQ(run_cli({"extract", data("a3.json"), "P1", "1", "--kind", "sideways"}).code, 2);
}

TEST(Cli, ResultsMatchTheLibrary) {
  auto doc = load(data("a3.json"));
  auto d = diagram_of(doc, "P1");
  for (virtmod::diagram::VertexSet s = 1; s <= d.all(); ++s) {
    std::string ids;
    for (auto v : virtmod::diagram::members(s)) ids += (ids.empty() ? "" : ",") + std::to_string(v);
    auto j = Json::parse(run_cli({"--json", "realize", data("a3.json"), "P1", ids}).out);
    auto r = virtmod::diagram::realizable_set(d, s);
    EXPECT_EQ(j["realizable"].get<bool>(), r.realizable);
    if (r.realizable)
      EXPECT_EQ(j["subfactor"], subfactor_to_json(d.module, virtmod::diagram::realize_set(d, s)));
  }
}

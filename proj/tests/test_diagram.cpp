#include <gtest/gtest.h>

#include <algorithm>

#include "diagram_oracle.hpp"
#include "test_support.hpp"
#include "virtmod/diagram.hpp"
#include "virtmod/error.hpp"

using namespace vt;
using namespace virtmod::quivrep;
using namespace virtmod::diagram;
using virtmod::vcat::virt_eq;

namespace {

std::size_t vertex_of_type(const DiagramGraph& d, const std::string& name) {
  const auto& names = d.module.quiver().vertices();
  for (std::size_t v = 0; v < d.size(); ++v)
    if (names[d.vertices[v].type] == name) return v;
  throw std::runtime_error("no vertex of type " + name);
}

/// Random distributive modules of dimension at most max_dim.
std::vector<Representation> distributive_sample(std::uint64_t seed, std::size_t want,
                                                std::size_t max_dim) {
  std::mt19937_64 rng(seed);
  std::vector<Representation> out;
  std::vector<QuiverPtr> quivers{a3(),     square(),     fan_down(), fan_up(),
                                 a3(2, true), kronecker(), tree(),    square_tail()};
  for (const auto& q : {tree(), square_tail()})
    for (std::size_t v = 0; v < q->vertex_count(); ++v) {
      out.push_back(projective_of_simple(q, v));
      out.push_back(injective_of_simple(q, v));
    }
  for (int t = 0; out.size() < want && t < 4000; ++t) {
    const auto& q = quivers[t % quivers.size()];
    auto m = random_module(q, rng, max_dim);
    if (t % 2) {
      auto extra = random_module(q, rng, max_dim);
      if (m.total_dim() + extra.total_dim() <= max_dim) m = direct_sum({m, extra});
    }
    if (m.total_dim() <= max_dim && is_distributive(m).distributive) out.push_back(m);
  }
  return out;
}

}  // namespace

TEST(BuildDistributive, UniserialChain) {
  auto p = projective_of_simple(a3(), 0);
  auto d = build_distributive(p);
  ASSERT_EQ(d.size(), 3u);
  for (std::size_t v = 0; v < 3; ++v) {
    EXPECT_EQ(d.vertices[v].layer, v);
    EXPECT_EQ(d.vertices[v].type, v);
  }
  std::vector<std::pair<std::size_t, std::size_t>> chain{{0, 1}, {1, 2}};
  EXPECT_EQ(d.edges, chain);
  auto report = validate(d);
  EXPECT_TRUE(report.ok());
  EXPECT_TRUE(report.locally_sated);
  auto dot = to_dot(d);
  EXPECT_NE(dot.find("v0 -> v1;"), std::string::npos);
  EXPECT_NE(dot.find("label=\"3@2\""), std::string::npos);
}

TEST(BuildDistributive, RejectsNonDistributive) {
  auto p = projective_of_simple(kronecker(), 0);  // socle S2 + S2
  EXPECT_THROW(build_distributive(p), MathError);
}

TEST(BuildDistributive, SquareIsADiamond) {
  auto d = build_distributive(projective_of_simple(square(), 0));
  ASSERT_EQ(d.size(), 4u);
  EXPECT_EQ(d.edges.size(), 4u);
  EXPECT_EQ(d.vertices[3].layer, 2u);
  EXPECT_TRUE(validate(d).ok());
  // the two middle vertices rejoin, so the top is not a fan head
  EXPECT_TRUE(classify_nodes(d).empty());
}

TEST(Validate, ForbiddenTriangleAndMissingEdge) {
  auto p = projective_of_simple(a3(), 0);
  auto built = build_distributive(p);
  auto tri = make_diagram(p, built.vertices, {{0, 1}, {1, 2}, {0, 2}});
  auto report = validate(tri);
  EXPECT_FALSE(report.ok());
  bool saw_c = false, saw_b = false;
  for (const auto& v : report.violations) {
    if (v.item == 'c') {
      saw_c = true;
      EXPECT_EQ(v.witness, (std::vector<std::size_t>{0, 1, 2}));
    }
    if (v.item == 'b') saw_b = v.witness == std::vector<std::size_t>{0, 2};
  }
  EXPECT_TRUE(saw_c);
  EXPECT_TRUE(saw_b);

  auto sparse = make_diagram(p, built.vertices, {{0, 1}});
  auto r2 = validate(sparse);
  EXPECT_TRUE(r2.ok());
  EXPECT_FALSE(r2.locally_sated);
  EXPECT_EQ(r2.addable_edges, (std::vector<std::pair<std::size_t, std::size_t>>{{1, 2}}));

  // misplaced layer
  auto moved = built.vertices;
  moved[2].layer = 3;
  auto r3 = validate(make_diagram(p, moved, built.edges));
  ASSERT_FALSE(r3.ok());
  EXPECT_EQ(r3.violations.front().item, 'a');
}

TEST(MakeDiagram, RejectsMalformed) {
  auto p = projective_of_simple(a3(), 0);
  auto built = build_distributive(p);
  EXPECT_THROW(make_diagram(p, built.vertices, {{0, 0}}), InputError);
  EXPECT_THROW(make_diagram(p, built.vertices, {{0, 1}, {0, 1}}), InputError);
  EXPECT_THROW(make_diagram(p, built.vertices, {{1, 0}}), InputError);
  EXPECT_THROW(make_diagram(p, built.vertices, {{0, 5}}), InputError);
  auto bad = built.vertices;
  bad[0].constituent.lower = zero_sub(p);  // length 3, not simple
  EXPECT_THROW(make_diagram(p, bad, {}), InputError);
}

TEST(BuildDistributive, RandomModulesValidate) {
  auto sample = distributive_sample(41, 40, 10);
  ASSERT_GE(sample.size(), 20u);
  for (const auto& m : sample) {
    auto d = build_distributive(m);
    EXPECT_EQ(d.size(), m.total_dim());
    auto report = validate(d);
    EXPECT_TRUE(report.ok());
    EXPECT_TRUE(report.locally_sated);
  }
}

TEST(OpenSets, BijectWithSubmodules) {
  auto sample = distributive_sample(42, 40, 12);
  for (const auto& m : sample) {
    auto d = build_distributive(m);
    auto lattice = enumerate_submodules(m);
    auto vis = visible_lattice(d);
    EXPECT_TRUE(vis.closed_under_sum_and_meet);
    auto sorted = vis.members;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(sorted, lattice);
    for (std::size_t i = 0; i < vis.open.size(); ++i)
      for (std::size_t j = 0; j < vis.open.size(); j += 3) {
        auto s = vis.open[i], t = vis.open[j];
        EXPECT_EQ(realize_open(d, s | t), vis.members[i] + vis.members[j]);
        EXPECT_EQ(realize_open(d, s & t), intersect(vis.members[i], vis.members[j]));
      }
    for (auto s : vis.open) {
      EXPECT_TRUE(is_closed(d, d.all() & ~s));
      auto q = realize_closed(d, d.all() & ~s);
      EXPECT_EQ(q.total_dim(), count(d.all() & ~s));
    }
  }
}

TEST(Realizable, AgreesWithBruteForce) {
  auto sample = distributive_sample(43, 60, 12);
  std::size_t checked = 0, negative = 0;
  for (const auto& m : sample) {
    auto d = build_distributive(m);
    auto lattice = enumerate_submodules(m);
    RealizabilityOracle oracle(d, lattice);
    for (VertexSet s = 1; s <= d.all(); ++s) {
      if (!is_connected(d, s)) {
        EXPECT_THROW(realizable(d, s), InputError);
        continue;
      }
      auto r = realizable(d, s);
      EXPECT_EQ(r.realizable, oracle.realizable(s)) << "set " << s;
      ++checked;
      if (!r.realizable) {
        ++negative;
        ASSERT_GE(r.witness.size(), 3u);
        EXPECT_TRUE(s & bit(r.witness.front()));
        EXPECT_TRUE(s & bit(r.witness.back()));
        for (std::size_t k = 1; k + 1 < r.witness.size(); ++k)
          EXPECT_FALSE(s & bit(r.witness[k]));
      } else {
        auto sf = realize_set(d, s);
        EXPECT_EQ(sf.total_dim(), count(s));
      }
    }
  }
  EXPECT_GT(checked, 200u);
  EXPECT_GT(negative, 0u);
}

TEST(Realizable, ForbiddenTriangleAndRadicalLengthTwo) {
  auto p = projective_of_simple(a3(), 0);
  auto built = build_distributive(p);
  auto tri = make_diagram(p, built.vertices, {{0, 1}, {1, 2}, {0, 2}});
  auto r = realizable(tri, bit(0) | bit(2));
  EXPECT_FALSE(r.realizable);
  EXPECT_EQ(r.witness, (std::vector<std::size_t>{0, 1, 2}));
  RealizabilityOracle oracle(tri, enumerate_submodules(p));
  EXPECT_FALSE(oracle.realizable(bit(0) | bit(2)));

  for (const auto& m : distributive_sample(44, 30, 12)) {
    auto d = build_distributive(m);
    for (VertexSet s = 1; s <= d.all(); ++s) {
      if (!is_connected(d, s)) continue;
      std::size_t lo = 99, hi = 0;
      for (auto x : members(s)) {
        lo = std::min(lo, d.vertices[x].layer);
        hi = std::max(hi, d.vertices[x].layer);
      }
      if (hi - lo <= 1) EXPECT_TRUE(realizable(d, s).realizable);
    }
  }
}

TEST(Alternation, ThreeChainMiddleAndOrderIndependence) {
  auto d = build_distributive(projective_of_simple(a3(), 0));
  auto alt = alternating_realize(d, bit(1));
  ASSERT_TRUE(alt.has_value());
  EXPECT_EQ(alt->steps, 2u);
  EXPECT_TRUE(alt->orders_agree);
  EXPECT_TRUE(virt_eq(alt->realized, realize_set(d, bit(1))));
  EXPECT_FALSE(alternating_realize(d, bit(0) | bit(2)).has_value());
  auto open = alternating_realize(d, bit(1) | bit(2));
  ASSERT_TRUE(open.has_value());
  EXPECT_EQ(open->steps, 1u);
  EXPECT_EQ(open->realized.upper, realize_open(d, bit(1) | bit(2)));

  for (const auto& m : distributive_sample(45, 20, 10)) {
    auto g = build_distributive(m);
    for (VertexSet s = 1; s <= g.all(); ++s) {
      auto a = alternating_realize(g, s);
      EXPECT_EQ(a.has_value(), realizable_set(g, s).realizable);
      if (a) {
        EXPECT_TRUE(a->orders_agree);
        EXPECT_TRUE(virt_eq(a->realized, realize_set(g, s)));
      }
    }
  }
}

TEST(VirtualSum, Examples) {
  auto d = build_distributive(projective_of_simple(a3(), 0));
  // A + A = A, nested sums collapse
  EXPECT_EQ(virtual_sum(d, bit(1), bit(1)).reduced_length(), 1u);
  EXPECT_EQ(virtual_sum(d, bit(1), bit(1) | bit(2)).terms, (std::vector<VertexSet>{bit(1) | bit(2)}));
  // top and bottom of a chain stay formal; adding the middle merges them
  auto tb = virtual_sum(d, bit(0), bit(2));
  EXPECT_EQ(tb.reduced_length(), 2u);
  EXPECT_EQ(virtual_sum(d, tb, VirtElement{{bit(1)}}).terms, (std::vector<VertexSet>{7}));
  EXPECT_EQ(common_enclosure(d, bit(0), bit(2)), std::nullopt);
  EXPECT_EQ(common_enclosure(d, 3, 6), std::optional<VertexSet>(2));
  EXPECT_THROW(virtual_sum(d, bit(0) | bit(2), bit(1)), InputError);
}

TEST(VirtualSum, PairwiseFormalTripleRealizable) {
  auto q = three_chains();
  auto m = direct_sum({projective_of_simple(q, 0), projective_of_simple(q, 3),
                       projective_of_simple(q, 6)});
  auto d = build_distributive(m);
  ASSERT_EQ(d.size(), 9u);
  auto v = [&](const char* n) { return bit(vertex_of_type(d, n)); };
  // chain 1 runs a1 > a3 > a2, chain 2 runs a2 > a1 > a3, chain 3 runs a3 > a2 > a1
  VertexSet a1 = v("x1") | v("y2") | v("z3");
  VertexSet a2 = v("z1") | v("x2") | v("y3");
  VertexSet a3 = v("y1") | v("z2") | v("x3");
  for (auto s : {a1, a2, a3}) EXPECT_TRUE(realizable_set(d, s).realizable);
  EXPECT_EQ(virtual_sum(d, a1, a2).reduced_length(), 2u);
  EXPECT_EQ(virtual_sum(d, a1, a3).reduced_length(), 2u);
  EXPECT_EQ(virtual_sum(d, a2, a3).reduced_length(), 2u);
  auto all = reduce(d, {a1, a2, a3});
  EXPECT_EQ(all.reduced_length(), 1u);
  EXPECT_EQ(all.terms.front(), d.all());
}

TEST(ClassifyNodes, FansAndBases) {
  auto down = build_distributive(projective_of_simple(fan_down(), 0));
  auto nodes = classify_nodes(down);
  ASSERT_EQ(nodes.size(), 1u);
  const auto& head = nodes.front();
  EXPECT_TRUE(head.head);
  EXPECT_FALSE(head.basis);
  EXPECT_EQ(head.legs.size(), 2u);
  EXPECT_TRUE(head.consistent);
  for (std::size_t i = 0; i < head.legs.size(); ++i) {
    // a proper leg subset is closed in the fan but realizes no submodule
    EXPECT_TRUE(is_closed(down, head.leg_sets[i]));
    EXPECT_FALSE(is_open(down, head.leg_sets[i]));
    EXPECT_TRUE(is_open(down, head.blunted_leg_sets[i]));
    EXPECT_EQ(realize_closed(down, head.leg_sets[i]).total_dim(), 2u);
  }

  auto up = build_distributive(injective_of_simple(fan_up(), 0));
  auto unodes = classify_nodes(up);
  ASSERT_EQ(unodes.size(), 1u);
  EXPECT_TRUE(unodes.front().basis);
  EXPECT_FALSE(unodes.front().head);
  EXPECT_TRUE(unodes.front().consistent);
  for (auto s : unodes.front().arm_sets) EXPECT_TRUE(is_open(up, s));
}

TEST(OpenSets, CountsAndRealizations) {
  auto p = projective_of_simple(a3(), 0);
  auto chain = build_distributive(p);
  EXPECT_EQ(open_sets(chain).size(), 4u);
  EXPECT_EQ(realize_open(chain, 0), zero_sub(p));
  EXPECT_EQ(realize_open(chain, chain.all()), whole(p));
  EXPECT_EQ(realize_open(chain, bit(2)), socle(p));
  EXPECT_THROW(realize_open(chain, bit(0)), InputError);
  EXPECT_THROW(realize_closed(chain, bit(2)), InputError);
  EXPECT_EQ(visible_lattice(chain).members.size(), loewy_length(p) + 1);
  for (VertexSet s = 0; s <= chain.all(); ++s)
    EXPECT_EQ(is_open(chain, s), is_closed(chain, chain.all() & ~s));

  auto q = make_quiver(2, {"1", "2", "3", "4"}, {});
  auto semi = direct_sum({simple_module(q, 0), simple_module(q, 1), simple_module(q, 2),
                          simple_module(q, 3)});
  auto anti = build_distributive(semi);
  EXPECT_TRUE(anti.edges.empty());
  EXPECT_EQ(open_sets(anti).size(), 16u);
  auto vis = visible_lattice(anti);
  EXPECT_EQ(vis.members.size(), 16u);
  EXPECT_TRUE(vis.closed_under_sum_and_meet);
  // two distinct simples: isolated vertices, and their sum is one constituent
  EXPECT_EQ(virtual_sum(anti, bit(0), bit(1)).reduced_length(), 1u);
}

TEST(Validate, KroneckerFanSuppliedByHand) {
  auto k = kronecker();
  auto p = projective_of_simple(k, 0);  // basis: e, a, b
  auto top = whole(p);
  auto rad = radical(p);
  auto l1 = generated(p, {{1, Vector{1, 0}}});
  auto l2 = generated(p, {{1, Vector{0, 1}}});
  auto z = zero_sub(p);
  auto d = make_diagram(p, {{0, {top, rad}, 0}, {1, {l1, z}, 0}, {1, {l2, z}, 0}}, {{0, 1}, {0, 2}});
  auto report = validate(d);
  EXPECT_TRUE(report.ok());
  EXPECT_TRUE(report.locally_sated);
  auto nodes = classify_nodes(d);
  ASSERT_EQ(nodes.size(), 1u);
  EXPECT_TRUE(nodes.front().head);
  EXPECT_EQ(nodes.front().legs, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(realize_open(d, bit(1) | bit(2)), rad);
}

TEST(Validate, SplitEdgeIsReported) {
  auto q = a2();
  auto m = direct_sum({simple_module(q, 0), simple_module(q, 1)});
  auto s1 = generated(m, {{0, Vector{1}}});
  auto s2 = generated(m, {{1, Vector{1}}});
  auto z = zero_sub(m);
  auto d = make_diagram(m, {{0, {s1, z}, 0}, {1, {s2, z}, 0}}, {{0, 1}});
  auto report = validate(d);
  bool split = false;
  for (const auto& v : report.violations) split = split || v.item == 'b';
  EXPECT_TRUE(split);
}

TEST(VirtualSum, FanArmsAndLawsOnSmallCombinations) {
  auto up = build_distributive(injective_of_simple(fan_up(), 0));
  auto arms = classify_nodes(up).front().arms;
  EXPECT_EQ(virtual_sum(up, bit(arms[0]), bit(arms[1])).reduced_length(), 1u);

  std::size_t ambiguous = 0;
  for (const auto& m : distributive_sample(46, 12, 8)) {
    auto d = build_distributive(m);
    std::vector<VertexSet> real;
    for (VertexSet s = 1; s <= d.all(); ++s)
      if (realizable_set(d, s).realizable) real.push_back(s);
    for (std::size_t i = 0; i < real.size(); i += 2)
      for (std::size_t j = 0; j < real.size(); j += 3)
        for (std::size_t k = 0; k < real.size(); k += 5) {
          auto a = real[i], b = real[j], c = real[k];
          EXPECT_EQ(virtual_sum(d, a, a).terms, std::vector<VertexSet>{a});
          EXPECT_EQ(virtual_sum(d, a, b), virtual_sum(d, b, a));
          // associativity is only meaningful where the flat sum reduces uniquely
          if (reduction_fixpoints(d, {a, b, c}).size() != 1) {
            EXPECT_THROW(reduce(d, {a, b, c}), MathError);
            ++ambiguous;
            continue;
          }
          auto left = virtual_sum(d, virtual_sum(d, a, b), VirtElement{{c}});
          auto right = virtual_sum(d, VirtElement{{a}}, virtual_sum(d, b, c));
          EXPECT_EQ(left, right);
          EXPECT_EQ(left.reduced_length() == 1, realizable_set(d, a | b | c).realizable);
        }
  }
  RecordProperty("ambiguous_triples", static_cast<int>(ambiguous));
}

TEST(VirtualSum, DiamondReducesAmbiguously) {
  auto d = build_distributive(projective_of_simple(square(), 0));
  // vertices: 0 top, 1 and 2 middle, 3 bottom
  auto fix = reduction_fixpoints(d, {bit(1), bit(0), bit(3)});
  EXPECT_EQ(fix.size(), 2u);
  EXPECT_THROW(reduce(d, {bit(1), bit(0), bit(3)}), MathError);
  EXPECT_EQ(virtual_sum(d, virtual_sum(d, bit(1), bit(0)), VirtElement{{bit(3)}}).terms,
            (std::vector<VertexSet>{bit(0) | bit(1), bit(3)}));
}

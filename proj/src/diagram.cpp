#include "virtmod/diagram.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "virtmod/error.hpp"

namespace virtmod::diagram {

using quivrep::radical_of;
using quivrep::zero_sub;

std::vector<std::size_t> members(VertexSet s) {
  std::vector<std::size_t> out;
  while (s) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(s)));
    s &= s - 1;
  }
  return out;
}

std::size_t count(VertexSet s) { return static_cast<std::size_t>(std::popcount(s)); }

VertexSet DiagramGraph::all() const {
  return size() == 64 ? ~VertexSet{0} : bit(size()) - 1;
}

std::vector<std::vector<std::size_t>> DiagramGraph::successors() const {
  std::vector<std::vector<std::size_t>> out(size());
  for (auto [u, w] : edges) out[u].push_back(w);
  return out;
}

std::vector<std::vector<std::size_t>> DiagramGraph::predecessors() const {
  std::vector<std::vector<std::size_t>> out(size());
  for (auto [u, w] : edges) out[w].push_back(u);
  return out;
}

namespace {

VertexSet reach(const std::vector<std::vector<std::size_t>>& adj, std::size_t v) {
  VertexSet seen = bit(v);
  std::vector<std::size_t> stack{v};
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    for (auto y : adj[x])
      if (!(seen & bit(y))) {
        seen |= bit(y);
        stack.push_back(y);
      }
  }
  return seen;
}

std::size_t simple_type(const Subfactor& c) {
  for (std::size_t v = 0; v < c.upper.spaces.size(); ++v)
    if (c.upper.dim(v) != c.lower.dim(v)) return v;
  return 0;
}

SubRep sum_of_uppers(const DiagramGraph& d, VertexSet s) {
  SubRep out = zero_sub(d.module);
  for (auto x : members(s)) out = out + d.vertices[x].constituent.upper;
  return out;
}

/// A directed path u -> ... -> w of length >= 2, if one exists.
std::vector<std::size_t> detour(const std::vector<std::vector<std::size_t>>& succ, std::size_t u,
                                std::size_t w) {
  std::map<std::size_t, std::size_t> parent;
  std::deque<std::size_t> queue;
  for (auto x : succ[u])
    if (x != w && !parent.count(x)) {
      parent[x] = u;
      queue.push_back(x);
    }
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop_front();
    for (auto y : succ[x]) {
      if (y == w) {
        std::vector<std::size_t> path{w, x};
        for (auto z = x; z != u;) {
          z = parent.at(z);
          path.push_back(z);
        }
        std::reverse(path.begin(), path.end());
        return path;
      }
      if (y != u && !parent.count(y)) {
        parent[y] = x;
        queue.push_back(y);
      }
    }
  }
  return {};
}

/// Lower covers (codimension one) of every lattice element.
std::vector<std::vector<std::size_t>> lower_covers(const std::vector<SubRep>& lattice) {
  std::vector<std::vector<std::size_t>> out(lattice.size());
  std::map<std::size_t, std::vector<std::size_t>> by_dim;
  for (std::size_t i = 0; i < lattice.size(); ++i) by_dim[lattice[i].total_dim()].push_back(i);
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    auto dim = lattice[i].total_dim();
    if (dim == 0) continue;
    auto it = by_dim.find(dim - 1);
    if (it == by_dim.end()) continue;
    for (auto j : it->second)
      if (lattice[i].contains(lattice[j])) out[i].push_back(j);
  }
  return out;
}

bool edge_nonsplit_with(const DiagramGraph& d, const std::vector<SubRep>& lattice,
                        const std::vector<std::vector<std::size_t>>& covers, std::size_t u,
                        std::size_t w) {
  const auto& cu = d.vertices[u].constituent;
  const auto& cw = d.vertices[w].constituent;
  for (std::size_t x = 0; x < lattice.size(); ++x) {
    std::optional<SubRep> rad_x;
    for (auto z : covers[x]) {
      if (!vcat::virt_eq({lattice[x], lattice[z]}, cu)) continue;
      for (auto y : covers[z]) {
        if (!vcat::virt_eq({lattice[z], lattice[y]}, cw)) continue;
        if (!rad_x) rad_x = radical_of(d.module, lattice[x]);
        if (!lattice[y].contains(*rad_x)) return true;
      }
    }
  }
  return false;
}

}  // namespace

VertexSet DiagramGraph::below(std::size_t v) const { return reach(successors(), v); }
VertexSet DiagramGraph::above(std::size_t v) const { return reach(predecessors(), v); }

DiagramGraph make_diagram(const Representation& m, std::vector<DiagramVertex> vertices,
                          std::vector<std::pair<std::size_t, std::size_t>> edges) {
  if (vertices.size() > 64) throw InputError("diagrams are limited to 64 vertices");
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    auto& v = vertices[i];
    v.constituent = vcat::normalize(m, v.constituent);
    if (!vcat::is_simple(v.constituent))
      throw InputError("vertex " + std::to_string(i) + " does not carry a simple constituent");
    v.type = simple_type(v.constituent);
  }
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (auto [u, w] : edges) {
    const auto name = "edge " + std::to_string(u) + "->" + std::to_string(w);
    if (u >= vertices.size() || w >= vertices.size()) throw InputError(name + ": unknown vertex");
    if (u == w) throw InputError(name + " is a loop");
    if (!seen.insert({u, w}).second) throw InputError(name + " is repeated");
    if (vertices[u].layer >= vertices[w].layer)
      throw InputError(name + " does not descend in layer");
  }
  std::sort(edges.begin(), edges.end());
  return DiagramGraph{m, std::move(vertices), std::move(edges)};
}

DiagramGraph build_distributive(const Representation& m, std::uint64_t budget) {
  auto lattice = quivrep::enumerate_submodules(m, budget);
  auto report = quivrep::is_distributive(m, lattice);
  if (!report.distributive) throw MathError("module is not distributive");
  auto series = quivrep::radical_series(m);

  struct Irreducible {
    std::size_t layer;
    std::size_t type;
    SubRep j;
    SubRep rad;
  };
  std::vector<Irreducible> irr;
  for (const auto& x : lattice) {
    if (x.is_zero()) continue;
    auto r = radical_of(m, x);
    if (x.total_dim() - r.total_dim() != 1) continue;
    std::size_t layer = 0;
    while (layer + 1 < series.size() && series[layer + 1].contains(x)) ++layer;
    irr.push_back({layer, simple_type(Subfactor{x, r}), x, r});
  }
  if (irr.size() > 64) throw BudgetExceeded("diagram would exceed 64 vertices");
  std::sort(irr.begin(), irr.end(), [](const Irreducible& a, const Irreducible& b) {
    return std::tie(a.layer, a.type, a.j) < std::tie(b.layer, b.type, b.j);
  });

  std::vector<DiagramVertex> vertices;
  for (const auto& i : irr) vertices.push_back({i.layer, Subfactor{i.j, i.rad}, i.type});
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < irr.size(); ++a)
    for (std::size_t b = 0; b < irr.size(); ++b) {
      if (a == b || !irr[a].rad.contains(irr[b].j)) continue;
      bool cover = true;
      for (std::size_t c = 0; c < irr.size() && cover; ++c)
        if (c != a && c != b && irr[a].rad.contains(irr[c].j) && irr[c].rad.contains(irr[b].j))
          cover = false;
      if (cover) edges.emplace_back(a, b);
    }
  return make_diagram(m, std::move(vertices), std::move(edges));
}

Subfactor edge_window(const DiagramGraph& d, std::size_t u, std::size_t w) {
  VertexSet rest = d.below(u) & ~bit(u) & ~bit(w);
  return {d.vertices[u].constituent.upper, sum_of_uppers(d, rest)};
}

bool edge_is_nonsplit(const DiagramGraph& d, const std::vector<SubRep>& lattice, std::size_t u,
                      std::size_t w) {
  return edge_nonsplit_with(d, lattice, lower_covers(lattice), u, w);
}

ValidationReport validate(const DiagramGraph& d, std::uint64_t budget) {
  return validate(d, quivrep::enumerate_submodules(d.module, budget));
}

ValidationReport validate(const DiagramGraph& d, const std::vector<SubRep>& lattice) {
  ValidationReport report;
  auto series = quivrep::radical_series(d.module);
  auto rad_power = [&](std::size_t k) {
    return k < series.size() ? series[k] : zero_sub(d.module);
  };

  for (std::size_t x = 0; x < d.size(); ++x) {
    const auto& v = d.vertices[x];
    auto k = v.layer;
    if (!rad_power(k).contains(v.constituent.upper) ||
        (v.constituent.lower + rad_power(k + 1)).contains(v.constituent.upper))
      report.violations.push_back(
          {'a', {x}, "vertex " + std::to_string(x) + " does not lie in radical layer " +
                         std::to_string(k)});
  }

  auto covers = lower_covers(lattice);
  for (auto [u, w] : d.edges)
    if (!edge_nonsplit_with(d, lattice, covers, u, w))
      report.violations.push_back({'b', {u, w},
                                   "edge " + std::to_string(u) + "->" + std::to_string(w) +
                                       " has no indecomposable length-2 window"});

  auto succ = d.successors();
  for (auto [u, w] : d.edges) {
    auto path = detour(succ, u, w);
    if (!path.empty())
      report.violations.push_back({'c', path,
                                   "edge " + std::to_string(u) + "->" + std::to_string(w) +
                                       " is shadowed by a longer path"});
  }

  std::set<std::pair<std::size_t, std::size_t>> present(d.edges.begin(), d.edges.end());
  for (std::size_t u = 0; u < d.size(); ++u)
    for (std::size_t w = 0; w < d.size(); ++w) {
      if (d.vertices[u].layer >= d.vertices[w].layer || present.count({u, w})) continue;
      auto extended = succ;
      extended[u].push_back(w);
      bool clean = true;
      for (std::size_t a = 0; a < d.size() && clean; ++a)
        for (auto b : extended[a])
          if (!detour(extended, a, b).empty()) {
            clean = false;
            break;
          }
      if (clean && edge_nonsplit_with(d, lattice, covers, u, w))
        report.addable_edges.emplace_back(u, w);
    }
  report.locally_sated = report.addable_edges.empty();
  return report;
}

bool is_open(const DiagramGraph& d, VertexSet s) {
  for (auto [u, w] : d.edges)
    if ((s & bit(u)) && !(s & bit(w))) return false;
  return (s & ~d.all()) == 0;
}

bool is_closed(const DiagramGraph& d, VertexSet s) {
  return (s & ~d.all()) == 0 && is_open(d, d.all() & ~s);
}

VertexSet down_closure(const DiagramGraph& d, VertexSet s) {
  auto succ = d.successors();
  VertexSet out = 0;
  for (auto x : members(s)) out |= reach(succ, x);
  return out;
}

VertexSet up_closure(const DiagramGraph& d, VertexSet s) {
  auto pred = d.predecessors();
  VertexSet out = 0;
  for (auto x : members(s)) out |= reach(pred, x);
  return out;
}

std::vector<VertexSet> open_sets(const DiagramGraph& d) {
  // Deepest vertices first, so each vertex is decided after its successors.
  std::vector<std::size_t> order(d.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
    return d.vertices[a].layer > d.vertices[b].layer;
  });
  auto succ = d.successors();
  std::vector<VertexSet> out;
  std::function<void(std::size_t, VertexSet)> go = [&](std::size_t k, VertexSet s) {
    if (k == order.size()) {
      out.push_back(s);
      return;
    }
    auto v = order[k];
    go(k + 1, s);
    bool allowed = std::all_of(succ[v].begin(), succ[v].end(),
                               [&](std::size_t w) { return (s & bit(w)) != 0; });
    if (allowed) go(k + 1, s | bit(v));
  };
  go(0, 0);
  std::sort(out.begin(), out.end());
  return out;
}

VertexSet factors(const DiagramGraph& d, const SubRep& x) {
  VertexSet out = 0;
  for (std::size_t v = 0; v < d.size(); ++v) {
    const auto& c = d.vertices[v].constituent;
    if ((quivrep::intersect(c.upper, x) + c.lower).total_dim() > c.lower.total_dim())
      out |= bit(v);
  }
  return out;
}

SubRep realize_open(const DiagramGraph& d, VertexSet s) {
  if (!is_open(d, s)) throw InputError("vertex set is not open");
  auto out = sum_of_uppers(d, s);
  if (factors(d, out) != s || out.total_dim() != count(s))
    throw MathError("sum of the constituents does not carry exactly the open set");
  return out;
}

Subfactor realize_closed(const DiagramGraph& d, VertexSet s) {
  if (!is_closed(d, s)) throw InputError("vertex set is not closed");
  return {quivrep::whole(d.module), realize_open(d, d.all() & ~s)};
}

bool is_connected(const DiagramGraph& d, VertexSet s) {
  if (s == 0) return false;
  auto start = static_cast<std::size_t>(std::countr_zero(s));
  VertexSet seen = bit(start);
  std::vector<std::size_t> stack{start};
  while (!stack.empty()) {
    auto x = stack.back();
    stack.pop_back();
    for (auto [u, w] : d.edges) {
      std::size_t other;
      if (u == x) other = w;
      else if (w == x) other = u;
      else continue;
      if ((s & bit(other)) && !(seen & bit(other))) {
        seen |= bit(other);
        stack.push_back(other);
      }
    }
  }
  return seen == s;
}

Realizability realizable_set(const DiagramGraph& d, VertexSet s) {
  if (s & ~d.all()) throw InputError("vertex set mentions unknown vertices");
  auto succ = d.successors();
  for (auto start : members(s)) {
    std::map<std::size_t, std::size_t> parent;
    std::deque<std::size_t> queue;
    for (auto x : succ[start])
      if (!(s & bit(x)) && !parent.count(x)) {
        parent[x] = start;
        queue.push_back(x);
      }
    while (!queue.empty()) {
      auto x = queue.front();
      queue.pop_front();
      for (auto y : succ[x]) {
        if (s & bit(y)) {
          std::vector<std::size_t> path{y, x};
          for (auto z = x; z != start;) {
            z = parent.at(z);
            path.push_back(z);
          }
          std::reverse(path.begin(), path.end());
          return {false, path};
        }
        if (!parent.count(y)) {
          parent[y] = x;
          queue.push_back(y);
        }
      }
    }
  }
  return {};
}

Realizability realizable(const DiagramGraph& d, VertexSet s) {
  if (!is_connected(d, s)) throw InputError("vertex set is empty or not connected");
  return realizable_set(d, s);
}

Subfactor realize_set(const DiagramGraph& d, VertexSet s) {
  if (!realizable_set(d, s).realizable) throw MathError("vertex set is not realizable");
  auto down = down_closure(d, s);
  return {realize_open(d, down), realize_open(d, down & ~s)};
}

std::optional<Alternation> alternating_realize(const DiagramGraph& d, VertexSet s) {
  if (s == 0 || (s & ~d.all())) throw InputError("vertex set is empty or mentions unknown vertices");
  const VertexSet down = down_closure(d, s);
  const VertexSet up = up_closure(d, s);

  struct Run {
    bool reached = false;
    std::size_t steps = 0;
    VertexSet d1 = 0, d2 = 0;
  };
  auto run = [&](bool open_first) {
    Run r;
    r.d1 = d.all();
    bool open_step = open_first;
    std::size_t idle = 0;
    for (std::size_t guard = 0; guard < 2 * d.size() + 2 && idle < 2; ++guard) {
      const VertexSet t = r.d1 & ~r.d2;
      if (t == s) {
        r.reached = true;
        return r;
      }
      VertexSet d1 = r.d1, d2 = r.d2;
      if (open_step)
        d1 = r.d2 | (t & down);
      else
        d2 = r.d2 | (t & ~up);
      if (d1 == r.d1 && d2 == r.d2) {
        ++idle;
      } else {
        idle = 0;
        ++r.steps;
        r.d1 = d1;
        r.d2 = d2;
      }
      open_step = !open_step;
    }
    r.reached = (r.d1 & ~r.d2) == s;
    return r;
  };

  auto a = run(true);
  auto b = run(false);
  if (!a.reached && !b.reached) return std::nullopt;
  auto realize = [&](const Run& r) {
    return Subfactor{realize_open(d, r.d1), realize_open(d, r.d2)};
  };
  Alternation out;
  const Run& best = (a.reached && (!b.reached || a.steps <= b.steps)) ? a : b;
  out.realized = realize(best);
  out.steps = best.steps;
  out.orders_agree = a.reached && b.reached && vcat::virt_eq(realize(a), realize(b));
  return out;
}

VisibleLattice visible_lattice(const DiagramGraph& d) {
  VisibleLattice out;
  out.open = open_sets(d);
  for (auto s : out.open) out.members.push_back(realize_open(d, s));
  std::set<SubRep> present(out.members.begin(), out.members.end());
  out.closed_under_sum_and_meet = present.size() == out.members.size();
  for (std::size_t i = 0; i < out.members.size() && out.closed_under_sum_and_meet; ++i)
    for (std::size_t j = i + 1; j < out.members.size(); ++j)
      if (!present.count(out.members[i] + out.members[j]) ||
          !present.count(quivrep::intersect(out.members[i], out.members[j]))) {
        out.closed_under_sum_and_meet = false;
        break;
      }
  return out;
}

namespace {

std::vector<VertexSet> canonical(std::vector<VertexSet> terms) {
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  return terms;
}

/// Index groups (size >= 2, smallest first) whose union is realizable.
std::vector<std::vector<std::size_t>> mergeable_groups(const DiagramGraph& d,
                                                       const std::vector<VertexSet>& terms,
                                                       bool first_only) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t n = terms.size();
  for (std::size_t size = 2; size <= n; ++size) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
    do {
      std::vector<std::size_t> group;
      VertexSet u = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (pick[i]) {
          group.push_back(i);
          u |= terms[i];
        }
      if (realizable_set(d, u).realizable) {
        out.push_back(group);
        if (first_only) return out;
      }
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return out;
}

std::vector<VertexSet> merge(const std::vector<VertexSet>& terms,
                             const std::vector<std::size_t>& group) {
  std::vector<VertexSet> out;
  VertexSet u = 0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (k < group.size() && group[k] == i) {
      u |= terms[i];
      ++k;
    } else {
      out.push_back(terms[i]);
    }
  }
  out.push_back(u);
  return canonical(std::move(out));
}

}  // namespace

VirtElement reduce(const DiagramGraph& d, std::vector<VertexSet> terms, std::size_t audit_cap) {
  for (auto t : terms)
    if (t == 0 || !realizable_set(d, t).realizable)
      throw InputError("virtual sum term is empty or not realizable");
  terms = canonical(std::move(terms));

  if (terms.size() > audit_cap) {
    for (;;) {
      auto groups = mergeable_groups(d, terms, true);
      if (groups.empty()) return {terms};
      terms = merge(terms, groups.front());
    }
  }

  auto fixpoints = reduction_fixpoints(d, std::move(terms));
  if (fixpoints.size() != 1) throw MathError("virtual sum reduces differently in different orders");
  return fixpoints.front();
}

std::vector<VirtElement> reduction_fixpoints(const DiagramGraph& d, std::vector<VertexSet> terms) {
  for (auto t : terms)
    if (t == 0 || !realizable_set(d, t).realizable)
      throw InputError("virtual sum term is empty or not realizable");
  std::set<std::vector<VertexSet>> visited, fixpoints;
  std::function<void(const std::vector<VertexSet>&)> explore = [&](const auto& state) {
    if (!visited.insert(state).second) return;
    auto groups = mergeable_groups(d, state, false);
    if (groups.empty()) fixpoints.insert(state);
    for (const auto& g : groups) explore(merge(state, g));
  };
  explore(canonical(std::move(terms)));
  std::vector<VirtElement> out;
  for (const auto& f : fixpoints) out.push_back({f});
  return out;
}

VirtElement virtual_sum(const DiagramGraph& d, const VirtElement& a, const VirtElement& b) {
  auto terms = a.terms;
  terms.insert(terms.end(), b.terms.begin(), b.terms.end());
  return reduce(d, std::move(terms));
}

VirtElement virtual_sum(const DiagramGraph& d, VertexSet a, VertexSet b) {
  return reduce(d, {a, b});
}

std::optional<VertexSet> common_enclosure(const DiagramGraph& d, VertexSet a, VertexSet b) {
  if ((a | b) & ~d.all()) throw InputError("vertex set mentions unknown vertices");
  VertexSet c = a & b;
  if (c == 0) return std::nullopt;
  return c;
}

std::vector<NodeClass> classify_nodes(const DiagramGraph& d) {
  auto succ = d.successors();
  auto pred = d.predecessors();
  std::vector<NodeClass> out;

  // Branches whose reach sets are pairwise disjoint.
  auto branches = [](const std::vector<std::size_t>& next,
                     const std::vector<std::vector<std::size_t>>& adj) {
    std::vector<std::pair<std::size_t, VertexSet>> reach_sets;
    for (auto w : next) reach_sets.emplace_back(w, reach(adj, w));
    std::vector<std::pair<std::size_t, VertexSet>> kept;
    for (std::size_t i = 0; i < reach_sets.size(); ++i) {
      bool alone = true;
      for (std::size_t j = 0; j < reach_sets.size(); ++j)
        if (i != j && (reach_sets[i].second & reach_sets[j].second)) alone = false;
      if (alone) kept.push_back(reach_sets[i]);
    }
    return kept;
  };

  for (std::size_t v = 0; v < d.size(); ++v) {
    NodeClass c;
    c.vertex = v;
    auto legs = branches(succ[v], succ);
    auto arms = branches(pred[v], pred);
    c.head = legs.size() >= 2;
    c.basis = arms.size() >= 2;
    if (!c.head && !c.basis) continue;

    VertexSet fan = bit(v), cofan = bit(v);
    for (auto& [w, s] : legs) {
      c.legs.push_back(w);
      c.blunted_leg_sets.push_back(s);
      c.leg_sets.push_back(s | bit(v));
      fan |= s;
    }
    for (auto& [w, s] : arms) {
      c.arms.push_back(w);
      c.blunted_arm_sets.push_back(s);
      c.arm_sets.push_back(s | bit(v));
      cofan |= s;
    }
    auto relatively = [&](VertexSet set, VertexSet within,
                          const std::vector<std::vector<std::size_t>>& adj) {
      for (auto x : members(set))
        if ((reach(adj, x) & within) & ~set) return false;
      return true;
    };
    if (c.head)
      for (std::size_t i = 0; i < c.legs.size(); ++i)
        c.consistent = c.consistent && relatively(c.leg_sets[i], fan, pred) &&
                       relatively(c.blunted_leg_sets[i], fan, succ);
    if (c.basis)
      for (std::size_t i = 0; i < c.arms.size(); ++i)
        c.consistent = c.consistent && relatively(c.arm_sets[i], cofan, succ) &&
                       relatively(c.blunted_arm_sets[i], cofan, pred);
    out.push_back(std::move(c));
  }
  return out;
}

std::string to_dot(const DiagramGraph& d) {
  std::ostringstream os;
  os << "digraph virtmod {\n  rankdir=TB;\n  node [shape=plaintext];\n";
  const auto& names = d.module.quiver().vertices();
  for (std::size_t v = 0; v < d.size(); ++v)
    os << "  v" << v << " [label=\"" << names[d.vertices[v].type] << "@" << d.vertices[v].layer
       << "\"];\n";
  for (auto [u, w] : d.edges) os << "  v" << u << " -> v" << w << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace virtmod::diagram

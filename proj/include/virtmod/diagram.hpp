#pragma once

// Virtual diagrams: layered DAGs whose vertices are simple constituents of a
// module. Open (downward closed) vertex sets realize submodules, closed ones
// quotients; realizability of a vertex set is decided by a path search.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "virtmod/lattice.hpp"
#include "virtmod/representation.hpp"
#include "virtmod/vcat.hpp"

namespace virtmod::diagram {

using quivrep::Representation;
using quivrep::SubRep;
using vcat::Subfactor;

/// Vertex sets are bit masks over vertex ids (at most 64 vertices).
using VertexSet = std::uint64_t;

inline VertexSet bit(std::size_t v) { return VertexSet{1} << v; }
std::vector<std::size_t> members(VertexSet s);
std::size_t count(VertexSet s);

struct DiagramVertex {
  std::size_t layer = 0;
  Subfactor constituent;
  std::size_t type = 0;  // quiver vertex of the simple constituent
};

struct DiagramGraph {
  Representation module;
  std::vector<DiagramVertex> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (upper, lower)

  std::size_t size() const { return vertices.size(); }
  VertexSet all() const;
  std::vector<std::vector<std::size_t>> successors() const;
  std::vector<std::vector<std::size_t>> predecessors() const;
  /// Vertices reachable by directed paths of length >= 0.
  VertexSet below(std::size_t v) const;
  VertexSet above(std::size_t v) const;
};

/// Structural checks only (ids, loops, duplicate edges, layer direction,
/// simple constituents); throws InputError.
DiagramGraph make_diagram(const Representation& m, std::vector<DiagramVertex> vertices,
                          std::vector<std::pair<std::size_t, std::size_t>> edges);

/// Diagram of a distributive module from its join-irreducible submodules:
/// vertex J carries J / rad J in the deepest radical layer containing J,
/// edges are the covers among join-irreducibles. Throws MathError if m is not
/// distributive.
DiagramGraph build_distributive(const Representation& m,
                                std::uint64_t budget = quivrep::kDefaultBudget);

struct Violation {
  char item;  // 'a' vertex placement, 'b' split edge, 'c' forbidden detour
  std::vector<std::size_t> witness;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool locally_sated = true;
  std::vector<std::pair<std::size_t, std::size_t>> addable_edges;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const DiagramGraph& d, std::uint64_t budget = quivrep::kDefaultBudget);
ValidationReport validate(const DiagramGraph& d, const std::vector<SubRep>& lattice);

/// Whether some indecomposable length-2 subfactor has top virtually c(u)
/// and socle virtually c(w).
bool edge_is_nonsplit(const DiagramGraph& d, const std::vector<SubRep>& lattice, std::size_t u,
                      std::size_t w);

/// Canonical length-2 window of an edge u -> w: (V_u, sum of V_x over the
/// vertices strictly below u other than w).
Subfactor edge_window(const DiagramGraph& d, std::size_t u, std::size_t w);

bool is_open(const DiagramGraph& d, VertexSet s);
bool is_closed(const DiagramGraph& d, VertexSet s);
/// All open sets, ascending.
std::vector<VertexSet> open_sets(const DiagramGraph& d);
VertexSet down_closure(const DiagramGraph& d, VertexSet s);
VertexSet up_closure(const DiagramGraph& d, VertexSet s);

/// Sum of the constituents' upper modules; InputError unless s is open.
SubRep realize_open(const DiagramGraph& d, VertexSet s);
/// M / realize_open(complement); InputError unless s is closed.
Subfactor realize_closed(const DiagramGraph& d, VertexSet s);

/// Vertices x whose constituent meets x_sub: (V_x ∩ X) + W_x > W_x.
VertexSet factors(const DiagramGraph& d, const SubRep& x);

bool is_connected(const DiagramGraph& d, VertexSet s);

struct Realizability {
  bool realizable = true;
  /// On failure: a directed path between two vertices of S whose interior
  /// avoids S.
  std::vector<std::size_t> witness;
};

/// For connected s; throws InputError when s is disconnected or empty.
Realizability realizable(const DiagramGraph& d, VertexSet s);
/// Any vertex set: no directed path leaves s and returns to it.
Realizability realizable_set(const DiagramGraph& d, VertexSet s);

/// Realization of a realizable set as (realize_open(↓s), realize_open(↓s \ s)).
Subfactor realize_set(const DiagramGraph& d, VertexSet s);

struct Alternation {
  Subfactor realized;
  std::size_t steps = 0;
  bool orders_agree = false;  // open-first and closed-first results are virtually equal
};

std::optional<Alternation> alternating_realize(const DiagramGraph& d, VertexSet s);

struct VisibleLattice {
  std::vector<VertexSet> open;  // open sets, ascending
  std::vector<SubRep> members;  // realize_open of each open set
  bool closed_under_sum_and_meet = false;
};

VisibleLattice visible_lattice(const DiagramGraph& d);

/// A reduced formal sum of realizable vertex sets, canonically sorted.
struct VirtElement {
  std::vector<VertexSet> terms;
  std::size_t reduced_length() const { return terms.size(); }
  friend bool operator==(const VirtElement&, const VirtElement&) = default;
};

/// Merges any group of terms whose union is realizable, to a fixpoint.
/// Every merge order is explored up to `audit_cap` terms; different
/// outcomes raise MathError.
VirtElement reduce(const DiagramGraph& d, std::vector<VertexSet> terms,
                   std::size_t audit_cap = 6);
/// Every reduced form reachable from `terms` by some merge order.
std::vector<VirtElement> reduction_fixpoints(const DiagramGraph& d, std::vector<VertexSet> terms);
VirtElement virtual_sum(const DiagramGraph& d, const VirtElement& a, const VirtElement& b);
VirtElement virtual_sum(const DiagramGraph& d, VertexSet a, VertexSet b);
/// Intersection, or nullopt for the trivial constituent.
std::optional<VertexSet> common_enclosure(const DiagramGraph& d, VertexSet a, VertexSet b);

struct NodeClass {
  std::size_t vertex = 0;
  bool head = false;   // at least two downward branches
  bool basis = false;  // at least two upward branches
  std::vector<std::size_t> legs;  // targets of downward edges that never rejoin
  std::vector<std::size_t> arms;  // sources of upward edges that never rejoin
  std::vector<VertexSet> leg_sets;          // node plus everything below the leg
  std::vector<VertexSet> blunted_leg_sets;  // the same without the node
  std::vector<VertexSet> arm_sets;
  std::vector<VertexSet> blunted_arm_sets;
  /// Leg sets are closed and blunted legs open relative to the fan (dually for arms).
  bool consistent = true;
  bool combined() const { return head && basis; }
};

std::vector<NodeClass> classify_nodes(const DiagramGraph& d);

/// Graphviz text: one node per vertex labelled "type@layer", edges downward.
std::string to_dot(const DiagramGraph& d);

}  // namespace virtmod::diagram

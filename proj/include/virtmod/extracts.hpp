#pragma once

// Injective hulls and projective covers virtual over a constituent, and the
// injective/projective extracts of simple virtual constituents.

#include <cstdint>
#include <optional>
#include <vector>

#include "virtmod/representation.hpp"
#include "virtmod/vcat.hpp"

namespace virtmod::extracts {

using exactla::Vector;
using quivrep::Hom;
using quivrep::Representation;
using quivrep::SubRep;
using vcat::Subfactor;

/// Homomorphisms x -> y with prescribed values on given vectors, as an
/// affine family over a basis of Hom(x, y).
struct HomFamily {
  std::vector<Hom> basis;
  Vector particular;                   // coefficients
  std::vector<Vector> directions;      // coefficient directions of the homogeneous part
  Hom zero;                            // the zero map x -> y
  Hom at(const Vector& coeffs) const;  // sum c_j basis_j
};

/// post * h(input) = output at the given vertex (post omitted: identity).
struct Constraint {
  std::size_t vertex;
  Vector input;
  Vector output;
  std::optional<exactla::Matrix> post;
};

std::optional<HomFamily> homs_with_values(const Representation& x, const Representation& y,
                                          const std::vector<Constraint>& constraints);

struct RankSearch {
  bool exhaustive = false;  // force a full scan of the affine family
  std::uint64_t budget = std::uint64_t{1} << 24;
};

/// Coefficients of a member of maximal total rank: exhaustive when the
/// family is small or forced, otherwise a seeded greedy pass followed by a
/// one-step certificate (no single direction/scalar change raises the rank).
Vector maximize_rank(const exactla::Field& f, const HomFamily& fam, const RankSearch& opt = {});

struct Hull {
  Representation module;  // direct sum of injective hulls of the socle constituents
  std::vector<std::size_t> socle_vertices;
  Hom embedding;  // window(n) -> module, the identity on the socle
};
Hull hull_over(const Representation& m, const Subfactor& n);

struct Cover {
  Representation module;  // direct sum of projective covers of the head constituents
  std::vector<std::size_t> head_vertices;
  Hom projection;  // module -> window(n), onto
};
Cover cover_over(const Representation& m, const Subfactor& n);

/// N ⊆ K ⊆ L ⊆ M with L/N indecomposable of length 2; A = L/K, B = K/N.
struct Filtration {
  SubRep n, k, l;
  friend bool operator==(const Filtration&, const Filtration&) = default;
};

void check_filtration(const Representation& m, const Filtration& f);

enum class Kind { injective, projective };

struct Extract {
  Kind kind = Kind::injective;
  Subfactor simple;     // B = K/N (injective) or A = L/K (projective)
  Subfactor value;      // quotient M/K' (injective) or submodule G of M (projective)
  std::size_t vertex = 0;  // type of the simple
  /// Position-independent form of the value: its image in I_B (injective)
  /// or the kernel of the lift P_A -> M (projective).
  SubRep canonical;
  Hom witness;  // the maximizing homomorphism
  Filtration filtration;
};

Extract injective_extract(const Representation& m, const Filtration& f, const RankSearch& opt = {});
Extract projective_extract(const Representation& m, const Filtration& f,
                           const RankSearch& opt = {});

/// Filtrations whose B (injective) or A (projective) is virtually s.
std::vector<Filtration> filtrations_through(const Representation& m,
                                            const std::vector<SubRep>& lattice,
                                            const Subfactor& s, Kind kind);

/// Extract over every filtration through s, in filtration order.
std::vector<Extract> extracts_over_filtrations(const Representation& m,
                                               const std::vector<SubRep>& lattice,
                                               const Subfactor& s, Kind kind,
                                               const RankSearch& opt = {});

/// The extract of s; throws MathError when no filtration exists or when two
/// filtrations disagree.
Extract extract_of_simple(const Representation& m, const Subfactor& s, Kind kind,
                          const RankSearch& opt = {});

}  // namespace virtmod::extracts

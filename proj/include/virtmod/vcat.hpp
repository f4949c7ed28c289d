#pragma once

// Virtual constituents of a fixed module: subfactors V/W identified by their
// position in M, virtual equality, the enclosure order, confinement, and
// pillars/colonnades of radical sections.

#include <cstdint>
#include <vector>

#include "virtmod/decompose.hpp"
#include "virtmod/lattice.hpp"
#include "virtmod/representation.hpp"

namespace virtmod::vcat {

using quivrep::Representation;
using quivrep::SubRep;
using quivrep::Window;

/// The subquotient upper/lower of the ambient module.
struct Subfactor {
  SubRep upper;
  SubRep lower;

  std::size_t total_dim() const { return upper.total_dim() - lower.total_dim(); }
  std::vector<std::size_t> dims() const;
  bool is_zero() const { return upper == lower; }

  friend bool operator==(const Subfactor&, const Subfactor&) = default;
  friend auto operator<=>(const Subfactor&, const Subfactor&) = default;
};

/// Validates nesting and arrow-closure (InputError otherwise).
Subfactor make_subfactor(const Representation& m, SubRep upper, SubRep lower);
Subfactor whole_subfactor(const Representation& m);
Window window(const Representation& m, const Subfactor& s);

/// A subfactor given inside a window, collapsed to the ambient module.
Subfactor collapse(const Window& w, const Subfactor& inner);
/// Canonical form; validates and is idempotent.
Subfactor normalize(const Representation& m, const Subfactor& s);

bool is_simple(const Subfactor& s);

/// Single common transpose: with U = Va ∩ Vb, Va = U + Wa, Vb = U + Wb and
/// U ∩ Wa = U ∩ Wb. Throws InputError when the ambients differ.
bool virt_eq(const Subfactor& a, const Subfactor& b);

/// Submodules of M lying between lower and upper.
std::vector<SubRep> interval(const std::vector<SubRep>& lattice, const Subfactor& s);

/// Whether the step from a to its section b = X/Y (lower(a) ⊆ Y ⊆ X ⊆ upper(a))
/// splits: some B' with B' ⊕ Y = X over lower(a) is a direct summand of a.
bool is_split_step(const std::vector<SubRep>& lattice, const Subfactor& a, const Subfactor& b);

/// Bounded search for a chain of non-split steps from a down to a subfactor
/// virtually equal to b.
bool lessdot(const Representation& m, const Subfactor& b, const Subfactor& a, std::size_t depth,
             std::uint64_t budget = quivrep::kDefaultBudget);
bool lessdot(const std::vector<SubRep>& lattice, const Subfactor& b, const Subfactor& a,
             std::size_t depth);

/// section = V/W split as a direct sum of parts M_i/W, with W ⊆ S_i ⊆ M_i.
struct Decomposition {
  Subfactor section;
  std::vector<SubRep> parts;
  std::vector<SubRep> subparts;
};

struct Confinement {
  std::vector<std::size_t> indices;  // J
  Subfactor confined;
};

/// Confinement of N = (x + S)/S, S = sum of the subparts, with respect to d.
Confinement confinement(const Representation& m, const Decomposition& d, const SubRep& x);

/// Projection of x (inside the section) onto the parts indexed by j, along
/// the others, plus the section's lower module.
SubRep project_parts(const Representation& m, const Decomposition& d,
                     const std::vector<std::size_t>& j, const SubRep& x);

/// Indecomposable summands of rad^i M / rad^j M as subfactors of M.
std::vector<Subfactor> pillars(const Representation& m, std::size_t i, std::size_t j,
                               std::uint64_t budget = quivrep::kDefaultBudget);

struct Colonnade {
  std::vector<Subfactor> pillars;
  std::size_t rank() const { return pillars.size(); }
  bool single() const { return pillars.size() == 1; }
};

/// Pillars grouped by isomorphism type, in pillar order.
std::vector<Colonnade> colonnades(const Representation& m, std::size_t i, std::size_t j,
                                  std::uint64_t budget = quivrep::kDefaultBudget);

/// a dominates b: b is virtually a or enclosed by it.
bool dominates(const Representation& m, const Subfactor& a, const Subfactor& b, std::size_t depth,
               std::uint64_t budget = quivrep::kDefaultBudget);

}  // namespace virtmod::vcat

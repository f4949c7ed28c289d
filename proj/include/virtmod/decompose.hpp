#pragma once

// Krull-Schmidt splitting via endomorphism rings, and isomorphism tests.

#include <cstdint>
#include <optional>
#include <vector>

#include "virtmod/lattice.hpp"
#include "virtmod/representation.hpp"

namespace virtmod::quivrep {

/// Indecomposable submodules whose direct sum is m, canonically sorted.
///
/// An endomorphism whose minimal polynomial has two coprime factors splits
/// m by Fitting's lemma. Candidates are the basis endomorphisms, then all of
/// End(m) when it has at most 1024 elements, otherwise 64 seeded random
/// combinations. A module for which no candidate splits is reported
/// indecomposable; for large End(m) this is a randomized verdict.
std::vector<SubRep> decompose(const Representation& m, std::uint64_t budget = kDefaultBudget);

bool is_indecomposable(const Representation& m, std::uint64_t budget = kDefaultBudget);

/// An isomorphism a -> b, if one is found.
std::optional<Hom> find_isomorphism(const Representation& a, const Representation& b,
                                    std::uint64_t budget = kDefaultBudget);
bool is_isomorphic(const Representation& a, const Representation& b,
                   std::uint64_t budget = kDefaultBudget);

/// Endomorphism of m with the given kernel-image Fitting split, if any:
/// returns (ker, im) of a power of a candidate endomorphism.
std::optional<std::pair<SubRep, SubRep>> fitting_split(const Representation& m,
                                                       std::uint64_t budget = kDefaultBudget);

}  // namespace virtmod::quivrep

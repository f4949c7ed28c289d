#pragma once

// Brute-force submodule lattices of desk-scale representations.

#include <cstdint>
#include <optional>
#include <vector>

#include "virtmod/representation.hpp"

namespace virtmod::quivrep {

/// Default cap on the number of candidate vectors, sum over vertices of p^dim.
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

/// Number of candidate vectors the enumeration would visit.
std::uint64_t enumeration_cost(const Representation& m);

/// Every submodule of m, canonically sorted and deduplicated. Built as the
/// join closure of the cyclic submodules. Throws BudgetExceeded.
std::vector<SubRep> enumerate_submodules(const Representation& m,
                                         std::uint64_t budget = kDefaultBudget);

struct DistributivityReport {
  bool distributive = true;
  /// A submodule N for which soc(M/N) has a repeated simple type.
  std::optional<SubRep> witness;
};

/// Square-free socle test over every quotient.
DistributivityReport is_distributive(const Representation& m,
                                     std::uint64_t budget = kDefaultBudget);
DistributivityReport is_distributive(const Representation& m, const std::vector<SubRep>& lattice);

/// The socle of M/N pulled back to M: {x : every arrow maps x into N}.
SubRep socle_over(const Representation& m, const SubRep& n);

}  // namespace virtmod::quivrep

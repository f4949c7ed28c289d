#include "virtmod/lattice.hpp"

#include <deque>
#include <set>

#include "virtmod/error.hpp"

namespace virtmod::quivrep {

std::uint64_t enumeration_cost(const Representation& m) {
  const std::uint64_t p = m.field().p();
  std::uint64_t total = 0;
  for (auto d : m.dims()) {
    std::uint64_t c = 1;
    for (std::size_t i = 0; i < d; ++i) {
      if (c > (std::uint64_t{1} << 62) / p) return UINT64_MAX;
      c *= p;
    }
    total += c;
  }
  return total;
}

namespace {

/// Calls fn on one representative of each line of F_p^d (first nonzero entry 1).
template <class Fn>
void for_each_projective_point(std::uint32_t p, std::size_t d, Fn&& fn) {
  for (std::size_t lead = 0; lead < d; ++lead) {
    Vector x(d, 0);
    x[lead] = 1;
    while (true) {
      fn(x);
      // odometer over the coordinates after the leading one
      std::size_t k = d;
      while (k > lead + 1 && ++x[k - 1] == p) x[--k] = 0;
      if (k == lead + 1) break;
    }
  }
}

}  // namespace

std::vector<SubRep> enumerate_submodules(const Representation& m, std::uint64_t budget) {
  const auto cost = enumeration_cost(m);
  if (cost > budget)
    throw BudgetExceeded("submodule enumeration needs " + std::to_string(cost) +
                         " candidate vectors, budget is " + std::to_string(budget));

  std::set<SubRep> cyclic_set;
  for (std::size_t v = 0; v < m.vertex_count(); ++v)
    for_each_projective_point(m.field().p(), m.dim(v),
                              [&](const Vector& x) { cyclic_set.insert(generated(m, {{v, x}})); });
  const std::vector<SubRep> cyclic(cyclic_set.begin(), cyclic_set.end());

  std::set<SubRep> all{zero_sub(m)};
  std::deque<SubRep> queue;
  for (const auto& c : cyclic)
    if (all.insert(c).second) queue.push_back(c);
  while (!queue.empty()) {
    SubRep x = std::move(queue.front());
    queue.pop_front();
    for (const auto& c : cyclic) {
      if (x.contains(c)) continue;
      SubRep y = x + c;
      if (all.insert(y).second) queue.push_back(std::move(y));
    }
  }
  return {all.begin(), all.end()};
}

SubRep socle_over(const Representation& m, const SubRep& n) {
  SubRep s = whole(m);
  for (std::size_t a = 0; a < m.maps().size(); ++a) {
    const auto& arr = m.quiver().arrow(a);
    s.spaces[arr.source] = exactla::intersect(s.spaces[arr.source],
                                              exactla::preimage(m.map(a), n.spaces[arr.target]));
  }
  return s;
}

DistributivityReport is_distributive(const Representation& m, const std::vector<SubRep>& lattice) {
  for (const auto& n : lattice) {
    SubRep s = socle_over(m, n);
    for (std::size_t v = 0; v < m.vertex_count(); ++v)
      if (s.dim(v) > n.dim(v) + 1) return {false, n};
  }
  return {true, std::nullopt};
}

DistributivityReport is_distributive(const Representation& m, std::uint64_t budget) {
  return is_distributive(m, enumerate_submodules(m, budget));
}

}  // namespace virtmod::quivrep

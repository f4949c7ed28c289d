#include "virtmod/vcat.hpp"

#include <algorithm>
#include <set>

#include "virtmod/error.hpp"

namespace virtmod::vcat {

using quivrep::intersect;
using exactla::Elem;
using exactla::Matrix;
using exactla::Subspace;
using exactla::Vector;

std::vector<std::size_t> Subfactor::dims() const {
  std::vector<std::size_t> d;
  for (std::size_t v = 0; v < upper.spaces.size(); ++v) d.push_back(upper.dim(v) - lower.dim(v));
  return d;
}

Subfactor make_subfactor(const Representation& m, SubRep upper, SubRep lower) {
  if (!quivrep::is_arrow_closed(m, upper) || !quivrep::is_arrow_closed(m, lower))
    throw InputError("subfactor bounds must be submodules");
  if (!upper.contains(lower)) throw InputError("subfactor lower bound is not inside the upper");
  return {std::move(upper), std::move(lower)};
}

Subfactor whole_subfactor(const Representation& m) {
  return {quivrep::whole(m), quivrep::zero_sub(m)};
}

Window window(const Representation& m, const Subfactor& s) {
  return quivrep::sub_quotient(m, s.upper, s.lower);
}

Subfactor collapse(const Window& w, const Subfactor& inner) {
  return {w.to_ambient(inner.upper), w.to_ambient(inner.lower)};
}

Subfactor normalize(const Representation& m, const Subfactor& s) {
  return make_subfactor(m, s.upper, s.lower);
}

bool is_simple(const Subfactor& s) { return s.total_dim() == 1; }

namespace {

void check_same_ambient(const Subfactor& a, const Subfactor& b) {
  const auto& x = a.upper.spaces;
  const auto& y = b.upper.spaces;
  bool ok = x.size() == y.size();
  for (std::size_t v = 0; ok && v < x.size(); ++v) ok = x[v].ambient_dim() == y[v].ambient_dim();
  if (!ok) throw InputError("subfactors live in different ambient modules");
}

}  // namespace

bool virt_eq(const Subfactor& a, const Subfactor& b) {
  check_same_ambient(a, b);
  if (a == b) return true;
  if (a.dims() != b.dims()) return false;
  const SubRep u = intersect(a.upper, b.upper);
  return a.upper == u + a.lower && b.upper == u + b.lower &&
         intersect(u, a.lower) == intersect(u, b.lower);
}

std::vector<SubRep> interval(const std::vector<SubRep>& lattice, const Subfactor& s) {
  std::vector<SubRep> out;
  for (const auto& x : lattice)
    if (s.upper.contains(x) && x.contains(s.lower)) out.push_back(x);
  return out;
}

namespace {

bool split_in(const std::vector<SubRep>& iv, const Subfactor& a, const Subfactor& b) {
  for (const auto& bp : iv) {
    if (!(bp + b.lower == b.upper) || !(intersect(bp, b.lower) == a.lower)) continue;
    for (const auto& c : iv)
      if (bp + c == a.upper && intersect(bp, c) == a.lower) return true;
  }
  return false;
}

bool lessdot_in(const std::vector<SubRep>& lattice, const Subfactor& b, const Subfactor& a,
                std::size_t depth) {
  const std::size_t target = b.total_dim();
  std::vector<Subfactor> frontier{a};
  std::set<Subfactor> seen{a};
  for (std::size_t step = 0; step < depth && !frontier.empty(); ++step) {
    std::vector<Subfactor> next;
    for (const auto& c : frontier) {
      const auto iv = interval(lattice, c);
      for (const auto& x : iv) {
        if (x.total_dim() < c.lower.total_dim() + target) continue;
        for (const auto& y : iv) {
          if (!x.contains(y)) continue;
          Subfactor s{x, y};
          const std::size_t d = s.total_dim();
          if (d < target || d >= c.total_dim()) continue;
          if (d == target) {
            if (virt_eq(s, b) && !split_in(iv, c, s)) return true;
          } else if (step + 1 < depth && !seen.count(s) && !split_in(iv, c, s)) {
            seen.insert(s);
            next.push_back(std::move(s));
          }
        }
      }
    }
    frontier = std::move(next);
  }
  return false;
}

}  // namespace

bool is_split_step(const std::vector<SubRep>& lattice, const Subfactor& a, const Subfactor& b) {
  if (!a.upper.contains(b.upper) || !b.upper.contains(b.lower) || !b.lower.contains(a.lower))
    throw InputError("is_split_step: b is not a section of a");
  return split_in(interval(lattice, a), a, b);
}

bool lessdot(const std::vector<SubRep>& lattice, const Subfactor& b, const Subfactor& a,
             std::size_t depth) {
  check_same_ambient(a, b);
  return lessdot_in(lattice, b, a, depth);
}

bool lessdot(const Representation& m, const Subfactor& b, const Subfactor& a, std::size_t depth,
             std::uint64_t budget) {
  check_same_ambient(a, b);
  // Only submodules between lower(a) and upper(a) matter: enumerate that window.
  const Window w = window(m, a);
  std::vector<SubRep> lattice;
  for (const auto& s : quivrep::enumerate_submodules(w.rep, budget))
    lattice.push_back(w.to_ambient(s));
  return lessdot_in(lattice, b, a, depth);
}

// ---------------------------------------------------------------------------

namespace {

/// Per vertex: the columns of all part complements, then lower's basis.
struct PartBasis {
  std::vector<Matrix> basis;                           // per vertex, columns span upper
  std::vector<std::vector<std::size_t>> part_offset;   // per vertex, start column of each part
  std::vector<std::vector<std::size_t>> part_size;
};

PartBasis part_basis(const Representation& m, const Decomposition& d) {
  const auto& sec = d.section;
  if (d.parts.size() != d.subparts.size())
    throw InputError("invalid decomposition: parts and subparts differ in number");
  for (std::size_t i = 0; i < d.parts.size(); ++i) {
    if (!quivrep::is_arrow_closed(m, d.parts[i]) || !quivrep::is_arrow_closed(m, d.subparts[i]))
      throw InputError("invalid decomposition: parts must be submodules");
    if (!sec.upper.contains(d.parts[i]) || !d.parts[i].contains(d.subparts[i]) ||
        !d.subparts[i].contains(sec.lower))
      throw InputError("invalid decomposition: nesting W ⊆ S_i ⊆ M_i ⊆ V fails");
  }
  PartBasis pb;
  for (std::size_t v = 0; v < m.vertex_count(); ++v) {
    std::vector<Vector> cols;
    std::vector<std::size_t> off, size;
    for (const auto& part : d.parts) {
      auto c = exactla::complement_in(part.spaces[v], sec.lower.spaces[v]);
      off.push_back(cols.size());
      size.push_back(c.dim());
      for (auto& b : c.basis_vectors()) cols.push_back(std::move(b));
    }
    for (auto& b : sec.lower.spaces[v].basis_vectors()) cols.push_back(std::move(b));
    Matrix basis = Matrix::from_vectors(m.field(), cols, m.dim(v)).transpose();
    if (exactla::rank(basis) != cols.size() || cols.size() != sec.upper.dim(v))
      throw InputError("invalid decomposition: parts are not independent or do not span");
    pb.basis.push_back(std::move(basis));
    pb.part_offset.push_back(std::move(off));
    pb.part_size.push_back(std::move(size));
  }
  return pb;
}

SubRep project_with(const Representation& m, const Decomposition& d, const PartBasis& pb,
                    const std::vector<std::size_t>& j, const SubRep& x) {
  if (!d.section.upper.contains(x)) throw InputError("confinement: N leaves the section");
  SubRep out;
  for (std::size_t v = 0; v < m.vertex_count(); ++v) {
    std::vector<Vector> images;
    for (const auto& vec : x.spaces[v].basis_vectors()) {
      auto sol = exactla::solve_affine(pb.basis[v], vec);
      Vector y(m.dim(v), 0);
      for (auto i : j) {
        for (std::size_t k = 0; k < pb.part_size[v][i]; ++k) {
          const Elem c = sol->particular[pb.part_offset[v][i] + k];
          if (c == 0) continue;
          for (std::size_t r = 0; r < y.size(); ++r)
            y[r] = m.field().add(y[r], m.field().mul(c, pb.basis[v](r, pb.part_offset[v][i] + k)));
        }
      }
      images.push_back(std::move(y));
    }
    out.spaces.push_back(Subspace::span(m.field(), m.dim(v), images) + d.section.lower.spaces[v]);
  }
  return out;
}

}  // namespace

SubRep project_parts(const Representation& m, const Decomposition& d,
                     const std::vector<std::size_t>& j, const SubRep& x) {
  return project_with(m, d, part_basis(m, d), j, x);
}

Confinement confinement(const Representation& m, const Decomposition& d, const SubRep& x) {
  const PartBasis pb = part_basis(m, d);
  if (!quivrep::is_arrow_closed(m, x)) throw InputError("confinement: N is not a submodule");
  Confinement out;
  SubRep s_j = d.section.lower;
  for (std::size_t i = 0; i < d.parts.size(); ++i) {
    if (!d.subparts[i].contains(project_with(m, d, pb, {i}, x))) {
      out.indices.push_back(i);
      s_j = s_j + d.subparts[i];
    }
  }
  out.confined = {project_with(m, d, pb, out.indices, x) + s_j, s_j};
  return out;
}

// ---------------------------------------------------------------------------

std::vector<Subfactor> pillars(const Representation& m, std::size_t i, std::size_t j,
                               std::uint64_t budget) {
  if (i >= j) throw InputError("pillars need i < j");
  const auto series = quivrep::radical_series(m);
  auto layer = [&](std::size_t k) { return k < series.size() ? series[k] : series.back(); };
  const Window w = quivrep::sub_quotient(m, layer(i), layer(j));
  std::vector<Subfactor> out;
  for (const auto& part : quivrep::decompose(w.rep, budget))
    out.push_back({w.to_ambient(part), layer(j)});
  return out;
}

std::vector<Colonnade> colonnades(const Representation& m, std::size_t i, std::size_t j,
                                  std::uint64_t budget) {
  std::vector<Colonnade> out;
  std::vector<Representation> types;
  for (auto& p : pillars(m, i, j, budget)) {
    Representation r = window(m, p).rep;
    bool placed = false;
    for (std::size_t k = 0; k < out.size() && !placed; ++k) {
      if (quivrep::is_isomorphic(types[k], r, budget)) {
        out[k].pillars.push_back(p);
        placed = true;
      }
    }
    if (!placed) {
      out.push_back({{p}});
      types.push_back(std::move(r));
    }
  }
  return out;
}

bool dominates(const Representation& m, const Subfactor& a, const Subfactor& b, std::size_t depth,
               std::uint64_t budget) {
  return virt_eq(a, b) || lessdot(m, b, a, depth, budget);
}

}  // namespace virtmod::vcat

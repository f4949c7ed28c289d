#include "virtmod/extracts.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "virtmod/decompose.hpp"
#include "virtmod/error.hpp"
#include "virtmod/lattice.hpp"

namespace virtmod::extracts {

using exactla::Elem;
using exactla::Field;
using exactla::Matrix;
using exactla::Subspace;
using quivrep::QuiverPtr;
using quivrep::Window;

namespace {

Vector unit(std::size_t n, std::size_t i) {
  Vector v(n, 0);
  v[i] = 1;
  return v;
}

Representation zero_module(const QuiverPtr& q) {
  std::vector<std::size_t> dims(q->vertex_count(), 0);
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < q->arrows().size(); ++a) maps.emplace_back(q->field(), 0, 0);
  return Representation(q, dims, maps);
}

Representation sum_or_zero(const QuiverPtr& q, const std::vector<Representation>& parts) {
  return parts.empty() ? zero_module(q) : quivrep::direct_sum(parts);
}

std::size_t vertex_of_simple(const Subfactor& s) {
  const auto d = s.dims();
  for (std::size_t v = 0; v < d.size(); ++v)
    if (d[v]) return v;
  throw InputError("subfactor is zero");
}

}  // namespace

Hom HomFamily::at(const Vector& coeffs) const {
  if (basis.empty()) return zero;
  return quivrep::linear_combination(basis[0].blocks[0].field(), basis, coeffs);
}

std::optional<HomFamily> homs_with_values(const Representation& x, const Representation& y,
                                          const std::vector<Constraint>& constraints) {
  const Field& f = x.field();
  HomFamily fam;
  fam.basis = quivrep::hom_space(x, y);
  for (std::size_t v = 0; v < x.vertex_count(); ++v) fam.zero.blocks.emplace_back(f, y.dim(v), x.dim(v));
  const std::size_t k = fam.basis.size();
  std::vector<Vector> rows;
  Vector rhs;
  for (const auto& c : constraints) {
    std::vector<Vector> values;
    for (const auto& h : fam.basis) {
      Vector val = h.blocks[c.vertex].apply(c.input);
      values.push_back(c.post ? c.post->apply(val) : val);
    }
    const std::size_t len = c.output.size();
    for (std::size_t r = 0; r < len; ++r) {
      Vector row(k);
      for (std::size_t j = 0; j < k; ++j) row[j] = values[j][r];
      rows.push_back(std::move(row));
      rhs.push_back(c.output[r]);
    }
  }
  if (k == 0) {
    for (auto b : rhs)
      if (b) return std::nullopt;
    return fam;
  }
  if (rows.empty()) {
    fam.particular.assign(k, 0);
    for (std::size_t j = 0; j < k; ++j) fam.directions.push_back(unit(k, j));
    return fam;
  }
  auto sol = exactla::solve_affine(Matrix::from_vectors(f, rows, k), rhs);
  if (!sol) return std::nullopt;
  fam.particular = sol->particular;
  fam.directions = sol->homogeneous.basis_vectors();
  return fam;
}

Vector maximize_rank(const Field& f, const HomFamily& fam, const RankSearch& opt) {
  const std::size_t d = fam.directions.size();
  const std::uint32_t p = f.p();
  auto point = [&](const Vector& t) {
    Vector c = fam.particular;
    for (std::size_t i = 0; i < d; ++i)
      if (t[i])
        for (std::size_t j = 0; j < c.size(); ++j)
          c[j] = f.add(c[j], f.mul(t[i], fam.directions[i][j]));
    return c;
  };
  auto rank_at = [&](const Vector& t) { return fam.at(point(t)).rank(); };
  if (d == 0) return fam.particular;

  std::uint64_t size = 1;
  bool small = true;
  for (std::size_t i = 0; i < d && small; ++i) {
    if (size > opt.budget / p) small = false;
    size *= p;
  }
  if (opt.exhaustive && !small)
    throw BudgetExceeded("exhaustive rank search over " + std::to_string(p) + "^" +
                         std::to_string(d) + " homomorphisms exceeds the budget");
  if (opt.exhaustive || (small && size <= 4096)) {
    Vector t(d, 0), best_t = t;
    std::size_t best = rank_at(t);
    for (std::uint64_t n = 1; n < size; ++n) {
      for (std::size_t i = 0; i < d && ++t[i] == p; ++i) t[i] = 0;
      const std::size_t r = rank_at(t);
      if (r > best) best = r, best_t = t;
    }
    return point(best_t);
  }

  std::mt19937_64 rng(0xe7);
  std::uniform_int_distribution<std::uint32_t> coeff(0, p - 1);
  Vector best_t(d, 0);
  std::size_t best = rank_at(best_t);
  for (int s = 0; s < 32; ++s) {
    Vector t(d);
    for (auto& x : t) x = coeff(rng);
    const std::size_t r = rank_at(t);
    if (r > best) best = r, best_t = t;
  }
  std::vector<Elem> scalars;
  for (Elem a = 1; a < p && a <= 16; ++a) scalars.push_back(a);
  for (int s = 0; s < 8 && p > 17; ++s) scalars.push_back(1 + coeff(rng) % (p - 1));
  // greedy improvement until the one-step certificate holds
  for (bool improved = true; improved;) {
    improved = false;
    for (std::size_t i = 0; i < d; ++i)
      for (auto a : scalars) {
        Vector t = best_t;
        t[i] = f.add(t[i], a);
        const std::size_t r = rank_at(t);
        if (r > best) best = r, best_t = t, improved = true;
      }
  }
  return point(best_t);
}

// ---------------------------------------------------------------------------

Hull hull_over(const Representation& m, const Subfactor& n) {
  const Window w = vcat::window(m, n);
  const auto& q = m.quiver_ptr();
  const SubRep soc = quivrep::socle(w.rep);
  Hull h;
  std::vector<Representation> parts;
  std::vector<Constraint> cons;
  std::vector<std::size_t> offset(m.vertex_count(), 0);
  std::vector<std::pair<std::size_t, Vector>> socle_vectors;
  for (std::size_t v = 0; v < m.vertex_count(); ++v)
    for (auto& s : soc.spaces[v].basis_vectors()) socle_vectors.emplace_back(v, std::move(s));
  for (const auto& [v, s] : socle_vectors) {
    parts.push_back(quivrep::injective_of_simple(q, v));
    h.socle_vertices.push_back(v);
  }
  h.module = sum_or_zero(q, parts);
  for (std::size_t k = 0; k < socle_vectors.size(); ++k) {
    const auto v = socle_vectors[k].first;
    cons.push_back({v, socle_vectors[k].second, unit(h.module.dim(v), offset[v]), std::nullopt});
    for (std::size_t u = 0; u < m.vertex_count(); ++u) offset[u] += parts[k].dim(u);
  }
  auto fam = homs_with_values(w.rep, h.module, cons);
  if (!fam) throw MathError("socle embedding does not extend to the injective hull");
  h.embedding = fam->at(fam->particular);
  if (!quivrep::kernel(h.embedding, w.rep).is_zero())
    throw MathError("hull embedding is not injective");
  return h;
}

Cover cover_over(const Representation& m, const Subfactor& n) {
  const Window w = vcat::window(m, n);
  const auto& q = m.quiver_ptr();
  const SubRep rad = quivrep::radical(w.rep);
  Cover c;
  std::vector<Representation> parts;
  std::vector<std::pair<std::size_t, Vector>> tops;
  for (std::size_t v = 0; v < m.vertex_count(); ++v)
    for (auto& t : exactla::complement_in(Subspace::full(m.field(), w.rep.dim(v)), rad.spaces[v])
                       .basis_vectors())
      tops.emplace_back(v, std::move(t));
  for (const auto& [v, t] : tops) {
    parts.push_back(quivrep::projective_of_simple(q, v));
    c.head_vertices.push_back(v);
  }
  c.module = sum_or_zero(q, parts);
  std::vector<Constraint> cons;
  std::vector<std::size_t> offset(m.vertex_count(), 0);
  for (std::size_t k = 0; k < tops.size(); ++k) {
    const auto v = tops[k].first;
    cons.push_back({v, unit(c.module.dim(v), offset[v]), tops[k].second, std::nullopt});
    for (std::size_t u = 0; u < m.vertex_count(); ++u) offset[u] += parts[k].dim(u);
  }
  auto fam = homs_with_values(c.module, w.rep, cons);
  if (!fam) throw MathError("head lifts do not define a cover");
  c.projection = fam->at(fam->particular);
  if (!(quivrep::image(c.projection, w.rep, quivrep::whole(c.module)) == quivrep::whole(w.rep)))
    throw MathError("cover map is not onto");
  return c;
}

// ---------------------------------------------------------------------------

void check_filtration(const Representation& m, const Filtration& f) {
  for (const SubRep* s : {&f.n, &f.k, &f.l})
    if (!quivrep::is_arrow_closed(m, *s)) throw InputError("filtration members must be submodules");
  if (!f.l.contains(f.k) || !f.k.contains(f.n)) throw InputError("filtration is not nested");
  if (f.k.total_dim() != f.n.total_dim() + 1 || f.l.total_dim() != f.k.total_dim() + 1)
    throw InputError("filtration layers K/N and L/K must be simple");
  if (f.n.contains(quivrep::radical_of(m, f.l)))
    throw InputError("L/N splits: it is not an indecomposable of length 2");
}

namespace {

/// Per vertex: matrix taking coordinates of `w` to coordinates of parts[i]
/// (as_module(w, parts[i])), along the other parts.
std::vector<Matrix> summand_projection(const Representation& w, const std::vector<SubRep>& parts,
                                       std::size_t i) {
  std::vector<Window> wins;
  for (const auto& p : parts) wins.push_back(quivrep::as_module(w, p));
  std::vector<Matrix> out;
  for (std::size_t v = 0; v < w.vertex_count(); ++v) {
    const std::size_t dv = w.dim(v);
    Matrix all(w.field(), dv, 0);
    std::size_t offset = 0;
    for (std::size_t k = 0; k < wins.size(); ++k) {
      if (k == i) offset = all.cols();
      all = Matrix::hstack(all, wins[k].lift[v]);
    }
    Matrix proj(w.field(), wins[i].lift[v].cols(), dv);
    if (dv > 0) {
      auto inv = exactla::inverse(all);
      if (!inv) throw MathError("decomposition parts are not complementary");
      for (std::size_t r = 0; r < proj.rows(); ++r)
        for (std::size_t c = 0; c < dv; ++c) proj(r, c) = (*inv)(offset + r, c);
    }
    out.push_back(std::move(proj));
  }
  return out;
}

}  // namespace

Extract injective_extract(const Representation& m, const Filtration& f, const RankSearch& opt) {
  check_filtration(m, f);
  const auto& q = m.quiver_ptr();
  const Window ew = quivrep::sub_quotient(m, f.l, f.n);
  Extract x;
  x.kind = Kind::injective;
  x.filtration = f;
  x.simple = {f.k, f.n};
  x.vertex = vertex_of_simple(x.simple);
  const std::size_t b = x.vertex;
  const Representation ib = quivrep::injective_of_simple(q, b);

  // fixed embedding iota: E -> I_B, socle to the socle vector
  const SubRep soc_e = ew.from_ambient(f.k);
  auto iota_fam = homs_with_values(
      ew.rep, ib, {{b, soc_e.spaces[b].basis_vector(0), unit(ib.dim(b), 0), std::nullopt}});
  if (!iota_fam) throw MathError("E does not embed in the injective hull of its socle");
  const Hom iota = iota_fam->at(iota_fam->particular);

  // Q: the summand of M/N enclosing E
  const Window w = quivrep::sub_quotient(m, quivrep::whole(m), f.n);
  const auto parts = quivrep::decompose(w.rep, opt.budget);
  const SubRep e_in_w = w.from_ambient(f.l);
  const SubRep soc_in_w = w.from_ambient(f.k);
  std::size_t qi = parts.size();
  for (std::size_t i = 0; i < parts.size() && qi == parts.size(); ++i)
    if (parts[i].contains(e_in_w)) qi = i;
  std::vector<Matrix> proj;
  if (qi == parts.size()) {
    for (std::size_t i = 0; i < parts.size() && qi == parts.size(); ++i) {
      auto pr = summand_projection(w.rep, parts, i);
      if (!exactla::image(pr[b], soc_in_w.spaces[b]).is_zero()) {
        qi = i;
        proj = std::move(pr);
      }
    }
  } else {
    proj = summand_projection(w.rep, parts, qi);
  }
  if (qi == parts.size()) throw MathError("no summand of M/N carries the socle of E");
  const Window qw = quivrep::as_module(w.rep, parts[qi]);

  std::vector<Constraint> cons;
  for (std::size_t v = 0; v < m.vertex_count(); ++v)
    for (std::size_t j = 0; j < ew.rep.dim(v); ++j) {
      Vector amb = ew.lift[v].apply(unit(ew.rep.dim(v), j));
      Vector in_q = proj[v].apply(w.project[v].apply(amb));
      cons.push_back({v, in_q, iota.blocks[v].apply(unit(ew.rep.dim(v), j)), std::nullopt});
    }
  auto fam = homs_with_values(qw.rep, ib, cons);
  if (!fam) throw MathError("the embedding of E does not extend over its enclosing summand");
  const Hom phi = fam->at(maximize_rank(m.field(), *fam, opt));
  x.witness = phi;
  x.canonical = quivrep::image(phi, ib, quivrep::whole(qw.rep));

  Hom psi;
  for (std::size_t v = 0; v < m.vertex_count(); ++v) psi.blocks.push_back(phi.blocks[v] * proj[v]);
  x.value = {quivrep::whole(m), w.to_ambient(quivrep::kernel(psi, w.rep))};
  return x;
}

Extract projective_extract(const Representation& m, const Filtration& f, const RankSearch& opt) {
  check_filtration(m, f);
  const auto& q = m.quiver_ptr();
  const Window ew = quivrep::sub_quotient(m, f.l, f.n);
  Extract x;
  x.kind = Kind::projective;
  x.filtration = f;
  x.simple = {f.l, f.k};
  x.vertex = vertex_of_simple(x.simple);
  const std::size_t a = x.vertex;
  const Representation pa = quivrep::projective_of_simple(q, a);

  const SubRep rad_e = quivrep::radical(ew.rep);
  const Vector y =
      exactla::complement_in(Subspace::full(m.field(), ew.rep.dim(a)), rad_e.spaces[a])
          .basis_vector(0);

  const Window lw = quivrep::as_module(m, f.l);
  const auto parts = quivrep::decompose(lw.rep, opt.budget);
  std::vector<Matrix> to_e;
  for (std::size_t v = 0; v < m.vertex_count(); ++v) to_e.push_back(ew.project[v] * lw.lift[v]);
  auto image_in_e = [&](const SubRep& s) {
    SubRep out;
    for (std::size_t v = 0; v < m.vertex_count(); ++v)
      out.spaces.push_back(exactla::image(to_e[v], s.spaces[v]));
    return out;
  };
  std::size_t qi = parts.size();
  for (std::size_t i = 0; i < parts.size() && qi == parts.size(); ++i)
    if (image_in_e(parts[i]) == quivrep::whole(ew.rep)) qi = i;
  for (std::size_t i = 0; i < parts.size() && qi == parts.size(); ++i)
    if (!rad_e.contains(image_in_e(parts[i]))) qi = i;
  if (qi == parts.size()) throw MathError("no summand of L reaches the head of E");
  const Window qw = quivrep::as_module(lw.rep, parts[qi]);

  const Matrix post = to_e[a] * qw.lift[a];
  auto fam = homs_with_values(pa, qw.rep, {{a, unit(pa.dim(a), 0), y, post}});
  if (!fam) throw MathError("the cover map of E does not lift through its summand");
  const Hom theta = fam->at(maximize_rank(m.field(), *fam, opt));
  x.witness = theta;
  x.canonical = quivrep::kernel(theta, pa);
  const SubRep img = quivrep::image(theta, qw.rep, quivrep::whole(pa));
  x.value = {lw.to_ambient(qw.to_ambient(img)), quivrep::zero_sub(m)};
  return x;
}

// ---------------------------------------------------------------------------

std::vector<Filtration> filtrations_through(const Representation& m,
                                            const std::vector<SubRep>& lattice,
                                            const Subfactor& s, Kind kind) {
  std::vector<Filtration> out;
  const std::size_t n = lattice.size();
  // lower covers by codimension one
  std::vector<std::vector<std::size_t>> below(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (lattice[i].total_dim() == lattice[j].total_dim() + 1 && lattice[i].contains(lattice[j]))
        below[i].push_back(j);
  for (std::size_t hi = 0; hi < n; ++hi)
    for (auto lo : below[hi]) {
      const Subfactor pair{lattice[hi], lattice[lo]};
      if (!vcat::virt_eq(pair, s)) continue;
      if (kind == Kind::injective) {
        // pair = K/N; L covers K
        for (std::size_t l = 0; l < n; ++l) {
          if (std::find(below[l].begin(), below[l].end(), hi) == below[l].end()) continue;
          if (lattice[lo].contains(quivrep::radical_of(m, lattice[l]))) continue;
          out.push_back({lattice[lo], lattice[hi], lattice[l]});
        }
      } else {
        // pair = L/K; K covers N
        for (auto nn : below[lo]) {
          if (lattice[nn].contains(quivrep::radical_of(m, lattice[hi]))) continue;
          out.push_back({lattice[nn], lattice[lo], lattice[hi]});
        }
      }
    }
  return out;
}

std::vector<Extract> extracts_over_filtrations(const Representation& m,
                                               const std::vector<SubRep>& lattice,
                                               const Subfactor& s, Kind kind,
                                               const RankSearch& opt) {
  std::vector<Extract> out;
  for (const auto& f : filtrations_through(m, lattice, s, kind))
    out.push_back(kind == Kind::injective ? injective_extract(m, f, opt)
                                          : projective_extract(m, f, opt));
  return out;
}

Extract extract_of_simple(const Representation& m, const Subfactor& s, Kind kind,
                          const RankSearch& opt) {
  if (!vcat::is_simple(s)) throw InputError("extract target must be a simple subfactor");
  const auto lattice = quivrep::enumerate_submodules(m, opt.budget);
  auto all = extracts_over_filtrations(m, lattice, s, kind, opt);
  if (all.empty()) throw MathError("no filtration: the constituent sits in no indecomposable of length 2");
  for (std::size_t i = 1; i < all.size(); ++i) {
    if (all[i].canonical == all[0].canonical) continue;
    std::ostringstream msg;
    msg << "extract depends on the filtration: filtrations 0 and " << i
        << " give extracts of dimension " << all[0].canonical.total_dim() << " and "
        << all[i].canonical.total_dim();
    throw MathError(msg.str());
  }
  return all.front();
}

}  // namespace virtmod::extracts

#include "virtmod/representation.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "virtmod/error.hpp"

namespace virtmod::quivrep {

Representation::Representation(QuiverPtr quiver, std::vector<std::size_t> dims,
                               std::vector<Matrix> maps)
    : quiver_(std::move(quiver)), dims_(std::move(dims)), maps_(std::move(maps)) {
  if (!quiver_) throw InputError("representation without a quiver");
  if (dims_.size() != quiver_->vertex_count())
    throw InputError("representation has " + std::to_string(dims_.size()) +
                     " dimensions for " + std::to_string(quiver_->vertex_count()) + " vertices");
  if (maps_.size() != quiver_->arrows().size())
    throw InputError("representation has " + std::to_string(maps_.size()) + " maps for " +
                     std::to_string(quiver_->arrows().size()) + " arrows");
  for (std::size_t a = 0; a < maps_.size(); ++a) {
    const auto& arr = quiver_->arrow(a);
    if (maps_[a].rows() != dims_[arr.target] || maps_[a].cols() != dims_[arr.source])
      throw InputError("matrix for arrow '" + arr.name + "' has shape " +
                       std::to_string(maps_[a].rows()) + "x" + std::to_string(maps_[a].cols()) +
                       ", expected " + std::to_string(dims_[arr.target]) + "x" +
                       std::to_string(dims_[arr.source]));
    if (!(maps_[a].field() == quiver_->field()))
      throw InputError("matrix for arrow '" + arr.name + "' is over the wrong field");
  }
}

std::size_t Representation::total_dim() const {
  return std::accumulate(dims_.begin(), dims_.end(), std::size_t{0});
}

Matrix Representation::path_map(const Path& p, std::size_t start) const {
  Matrix m = Matrix::identity(field(), dims_[start]);
  for (auto a : p) m = maps_[a] * m;
  return m;
}

std::optional<RelationViolation> validate(const Representation& m) {
  const auto& q = m.quiver();
  for (std::size_t r = 0; r < q.relations().size(); ++r) {
    const auto& rel = q.relations()[r];
    const std::size_t s = q.arrow(rel.front().path.front()).source;
    const std::size_t t = q.arrow(rel.front().path.back()).target;
    Matrix acc(m.field(), m.dim(t), m.dim(s));
    for (const auto& term : rel) acc = acc + m.path_map(term.path, s).scaled(term.coeff);
    if (!acc.is_zero()) return RelationViolation{r, acc};
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

std::size_t SubRep::total_dim() const {
  std::size_t n = 0;
  for (const auto& s : spaces) n += s.dim();
  return n;
}

std::vector<std::size_t> SubRep::dims() const {
  std::vector<std::size_t> d;
  for (const auto& s : spaces) d.push_back(s.dim());
  return d;
}

bool SubRep::contains(const SubRep& other) const {
  for (std::size_t v = 0; v < spaces.size(); ++v)
    if (!spaces[v].contains(other.spaces[v])) return false;
  return true;
}

std::strong_ordering operator<=>(const SubRep& a, const SubRep& b) {
  return std::lexicographical_compare_three_way(a.spaces.begin(), a.spaces.end(),
                                                b.spaces.begin(), b.spaces.end());
}

SubRep zero_sub(const Representation& m) {
  SubRep s;
  for (auto d : m.dims()) s.spaces.push_back(Subspace::zero(m.field(), d));
  return s;
}

SubRep whole(const Representation& m) {
  SubRep s;
  for (auto d : m.dims()) s.spaces.push_back(Subspace::full(m.field(), d));
  return s;
}

bool is_arrow_closed(const Representation& m, const SubRep& s) {
  if (s.spaces.size() != m.vertex_count()) return false;
  for (std::size_t v = 0; v < m.vertex_count(); ++v)
    if (s.spaces[v].ambient_dim() != m.dim(v)) return false;
  for (std::size_t a = 0; a < m.maps().size(); ++a) {
    const auto& arr = m.quiver().arrow(a);
    if (!s.spaces[arr.target].contains(exactla::image(m.map(a), s.spaces[arr.source])))
      return false;
  }
  return true;
}

SubRep operator+(const SubRep& a, const SubRep& b) {
  SubRep s;
  for (std::size_t v = 0; v < a.spaces.size(); ++v) s.spaces.push_back(a.spaces[v] + b.spaces[v]);
  return s;
}

SubRep intersect(const SubRep& a, const SubRep& b) {
  SubRep s;
  for (std::size_t v = 0; v < a.spaces.size(); ++v)
    s.spaces.push_back(exactla::intersect(a.spaces[v], b.spaces[v]));
  return s;
}

SubRep generated(const Representation& m,
                 const std::vector<std::pair<std::size_t, Vector>>& gens) {
  const auto& q = m.quiver();
  std::vector<std::vector<Vector>> basis(m.vertex_count());
  SubRep s = zero_sub(m);
  std::deque<std::pair<std::size_t, Vector>> queue(gens.begin(), gens.end());
  while (!queue.empty()) {
    auto [v, x] = std::move(queue.front());
    queue.pop_front();
    if (s.spaces[v].contains(x)) continue;
    basis[v].push_back(x);
    s.spaces[v] = Subspace::span(m.field(), m.dim(v), basis[v]);
    for (std::size_t a = 0; a < q.arrows().size(); ++a)
      if (q.arrow(a).source == v) queue.emplace_back(q.arrow(a).target, m.map(a).apply(x));
  }
  return s;
}

SubRep closure(const Representation& m, const SubRep& s) {
  std::vector<std::pair<std::size_t, Vector>> gens;
  for (std::size_t v = 0; v < s.spaces.size(); ++v)
    for (auto& b : s.spaces[v].basis_vectors()) gens.emplace_back(v, std::move(b));
  return generated(m, gens);
}

SubRep radical_of(const Representation& m, const SubRep& s) {
  SubRep r = zero_sub(m);
  for (std::size_t a = 0; a < m.maps().size(); ++a) {
    const auto& arr = m.quiver().arrow(a);
    r.spaces[arr.target] =
        r.spaces[arr.target] + exactla::image(m.map(a), s.spaces[arr.source]);
  }
  return r;
}

SubRep radical(const Representation& m) { return radical_of(m, whole(m)); }

namespace {

/// {x in M : every arrow maps x into `inner`}.
SubRep arrow_preimage(const Representation& m, const SubRep& inner) {
  SubRep s = whole(m);
  for (std::size_t a = 0; a < m.maps().size(); ++a) {
    const auto& arr = m.quiver().arrow(a);
    s.spaces[arr.source] = exactla::intersect(
        s.spaces[arr.source], exactla::preimage(m.map(a), inner.spaces[arr.target]));
  }
  return s;
}

}  // namespace

SubRep socle(const Representation& m) { return arrow_preimage(m, zero_sub(m)); }

std::vector<SubRep> radical_series(const Representation& m) {
  std::vector<SubRep> series{whole(m)};
  while (!series.back().is_zero()) series.push_back(radical_of(m, series.back()));
  return series;
}

std::vector<SubRep> socle_series(const Representation& m) {
  std::vector<SubRep> series{zero_sub(m)};
  const std::size_t n = m.total_dim();
  while (series.back().total_dim() < n) series.push_back(arrow_preimage(m, series.back()));
  return series;
}

std::size_t loewy_length(const Representation& m) { return radical_series(m).size() - 1; }

// ---------------------------------------------------------------------------

SubRep Window::to_ambient(const SubRep& inner) const {
  SubRep s;
  for (std::size_t v = 0; v < lift.size(); ++v)
    s.spaces.push_back(lower.spaces[v] + exactla::image(lift[v], inner.spaces[v]));
  return s;
}

SubRep Window::from_ambient(const SubRep& outer) const {
  SubRep s;
  for (std::size_t v = 0; v < project.size(); ++v) {
    if (!upper.spaces[v].contains(outer.spaces[v]))
      throw InputError("from_ambient: subspace leaves the window");
    s.spaces.push_back(exactla::image(project[v], outer.spaces[v]));
  }
  return s;
}

Window sub_quotient(const Representation& m, const SubRep& v, const SubRep& w) {
  if (!is_arrow_closed(m, v) || !is_arrow_closed(m, w))
    throw InputError("sub_quotient: inputs must be submodules");
  if (!v.contains(w)) throw InputError("sub_quotient: lower submodule is not contained in upper");
  const Field& f = m.field();
  Window win{v, w, {}, {}, {}};
  std::vector<std::size_t> dims;
  for (std::size_t x = 0; x < m.vertex_count(); ++x) {
    Subspace comp = exactla::complement_in(v.spaces[x], w.spaces[x]);
    Matrix select(f, comp.dim(), m.dim(x));
    for (std::size_t i = 0; i < comp.dim(); ++i) select(i, comp.pivots()[i]) = 1;
    win.lift.push_back(comp.basis().transpose());
    win.project.push_back(select * w.spaces[x].reducer());
    dims.push_back(comp.dim());
  }
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < m.maps().size(); ++a) {
    const auto& arr = m.quiver().arrow(a);
    maps.push_back(win.project[arr.target] * m.map(a) * win.lift[arr.source]);
  }
  win.rep = Representation(m.quiver_ptr(), std::move(dims), std::move(maps));
  return win;
}

// ---------------------------------------------------------------------------

Representation simple_module(const QuiverPtr& q, std::size_t v) {
  std::vector<std::size_t> dims(q->vertex_count(), 0);
  dims.at(v) = 1;
  std::vector<Matrix> maps;
  for (const auto& a : q->arrows()) maps.emplace_back(q->field(), dims[a.target], dims[a.source]);
  return Representation(q, dims, std::move(maps));
}

Representation projective_of_simple(const QuiverPtr& q, std::size_t v) {
  const std::size_t nv = q->vertex_count();
  std::vector<std::size_t> dims(nv);
  for (std::size_t w = 0; w < nv; ++w) dims[w] = q->block(v, w).dim();
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < q->arrows().size(); ++a) {
    const auto& arr = q->arrow(a);
    const auto& src = q->block(v, arr.source);
    const auto& dst = q->block(v, arr.target);
    Matrix m(q->field(), dst.dim(), src.dim());
    for (std::size_t j = 0; j < src.dim(); ++j) {
      Path p = src.paths[src.basis[j]];
      p.push_back(a);
      auto col = dst.residue_of(p);
      for (std::size_t i = 0; i < col.size(); ++i) m(i, j) = col[i];
    }
    maps.push_back(std::move(m));
  }
  return Representation(q, std::move(dims), std::move(maps));
}

Representation injective_of_simple(const QuiverPtr& q, std::size_t v) {
  const std::size_t nv = q->vertex_count();
  std::vector<std::size_t> dims(nv);
  for (std::size_t w = 0; w < nv; ++w) dims[w] = q->block(w, v).dim();
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < q->arrows().size(); ++a) {
    const auto& arr = q->arrow(a);
    const auto& src = q->block(arr.source, v);  // paths source -> v
    const auto& dst = q->block(arr.target, v);  // paths target -> v
    // prepend: dst -> src, q |-> a.q ; the arrow acts by its transpose
    Matrix prepend(q->field(), src.dim(), dst.dim());
    for (std::size_t j = 0; j < dst.dim(); ++j) {
      Path p{a};
      const auto& tail = dst.paths[dst.basis[j]];
      p.insert(p.end(), tail.begin(), tail.end());
      auto col = src.residue_of(p);
      for (std::size_t i = 0; i < col.size(); ++i) prepend(i, j) = col[i];
    }
    maps.push_back(prepend.transpose());
  }
  return Representation(q, std::move(dims), std::move(maps));
}

Representation direct_sum(const std::vector<Representation>& parts) {
  if (parts.empty()) throw InputError("direct_sum of no modules");
  const auto& q = parts.front().quiver_ptr();
  const std::size_t nv = q->vertex_count();
  std::vector<std::size_t> dims(nv, 0);
  for (const auto& p : parts)
    for (std::size_t v = 0; v < nv; ++v) dims[v] += p.dim(v);
  std::vector<Matrix> maps;
  for (std::size_t a = 0; a < q->arrows().size(); ++a) {
    const auto& arr = q->arrow(a);
    Matrix m(q->field(), dims[arr.target], dims[arr.source]);
    std::size_t r0 = 0, c0 = 0;
    for (const auto& p : parts) {
      const auto& b = p.map(a);
      for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) m(r0 + i, c0 + j) = b(i, j);
      r0 += b.rows();
      c0 += b.cols();
    }
    maps.push_back(std::move(m));
  }
  return Representation(q, std::move(dims), std::move(maps));
}

// ---------------------------------------------------------------------------

std::size_t Hom::rank() const {
  std::size_t r = 0;
  for (const auto& b : blocks) r += exactla::rank(b);
  return r;
}

bool Hom::is_zero() const {
  return std::all_of(blocks.begin(), blocks.end(), [](const Matrix& b) { return b.is_zero(); });
}

std::vector<Hom> hom_space(const Representation& m, const Representation& n) {
  if (m.quiver_ptr() != n.quiver_ptr() && !(m.field() == n.field()))
    throw InputError("hom_space: modules over different algebras");
  const Field& f = m.field();
  const std::size_t nv = m.vertex_count();
  std::vector<std::size_t> offset(nv + 1, 0);
  for (std::size_t v = 0; v < nv; ++v) offset[v + 1] = offset[v] + n.dim(v) * m.dim(v);
  const std::size_t unknowns = offset[nv];
  auto var = [&](std::size_t v, std::size_t r, std::size_t c) {
    return offset[v] + r * m.dim(v) + c;
  };

  std::vector<Vector> rows;
  for (std::size_t a = 0; a < m.maps().size(); ++a) {
    const auto& arr = m.quiver().arrow(a);
    const std::size_t s = arr.source, t = arr.target;
    const Matrix& ma = m.map(a);
    const Matrix& na = n.map(a);
    // (N_a f_s - f_t M_a)(i, j) = 0
    for (std::size_t i = 0; i < n.dim(t); ++i) {
      for (std::size_t j = 0; j < m.dim(s); ++j) {
        Vector row(unknowns, 0);
        for (std::size_t k = 0; k < n.dim(s); ++k)
          row[var(s, k, j)] = f.add(row[var(s, k, j)], na(i, k));
        for (std::size_t k = 0; k < m.dim(t); ++k)
          row[var(t, i, k)] = f.sub(row[var(t, i, k)], ma(k, j));
        rows.push_back(std::move(row));
      }
    }
  }
  Subspace sol = rows.empty() ? Subspace::full(f, unknowns)
                              : exactla::kernel(Matrix::from_vectors(f, rows, unknowns));
  std::vector<Hom> basis;
  for (std::size_t b = 0; b < sol.dim(); ++b) {
    Hom h;
    for (std::size_t v = 0; v < nv; ++v) {
      Matrix blk(f, n.dim(v), m.dim(v));
      for (std::size_t r = 0; r < n.dim(v); ++r)
        for (std::size_t c = 0; c < m.dim(v); ++c) blk(r, c) = sol.basis()(b, var(v, r, c));
      h.blocks.push_back(std::move(blk));
    }
    basis.push_back(std::move(h));
  }
  return basis;
}

bool is_homomorphism(const Representation& m, const Representation& n, const Hom& f) {
  if (f.blocks.size() != m.vertex_count()) return false;
  for (std::size_t a = 0; a < m.maps().size(); ++a) {
    const auto& arr = m.quiver().arrow(a);
    if (!(n.map(a) * f.blocks[arr.source] == f.blocks[arr.target] * m.map(a))) return false;
  }
  return true;
}

Hom compose(const Hom& g, const Hom& f) {
  Hom h;
  for (std::size_t v = 0; v < f.blocks.size(); ++v) h.blocks.push_back(g.blocks[v] * f.blocks[v]);
  return h;
}

Hom identity_hom(const Representation& m) {
  Hom h;
  for (auto d : m.dims()) h.blocks.push_back(Matrix::identity(m.field(), d));
  return h;
}

Hom linear_combination(const Field& f, const std::vector<Hom>& basis, const Vector& coeffs) {
  if (basis.empty()) throw InputError("linear_combination of an empty basis");
  Hom h;
  for (const auto& b : basis.front().blocks) h.blocks.emplace_back(f, b.rows(), b.cols());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (coeffs[k] == 0) continue;
    for (std::size_t v = 0; v < h.blocks.size(); ++v)
      h.blocks[v] = h.blocks[v] + basis[k].blocks[v].scaled(coeffs[k]);
  }
  return h;
}

SubRep image(const Hom& f, const Representation& codomain, const SubRep& s) {
  SubRep out;
  for (std::size_t v = 0; v < codomain.vertex_count(); ++v)
    out.spaces.push_back(exactla::image(f.blocks[v], s.spaces[v]));
  return out;
}

SubRep kernel(const Hom& f, const Representation& domain) {
  SubRep out;
  for (std::size_t v = 0; v < domain.vertex_count(); ++v)
    out.spaces.push_back(exactla::kernel(f.blocks[v]));
  return out;
}

}  // namespace virtmod::quivrep

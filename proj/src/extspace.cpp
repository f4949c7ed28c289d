#include "virtmod/extspace.hpp"

#include <algorithm>

#include "virtmod/error.hpp"

namespace virtmod::extspace {

using exactla::Matrix;
using exactla::Subspace;

namespace {

Vector unit(std::size_t n, std::size_t i) {
  Vector v(n, 0);
  v[i] = 1;
  return v;
}

/// Position of a path in the residue basis of block(from, to).
std::size_t basis_position(const quivrep::BoundQuiver& q, std::size_t from, std::size_t to,
                           const quivrep::Path& p) {
  const auto& b = q.block(from, to);
  for (std::size_t j = 0; j < b.basis.size(); ++j)
    if (b.paths[b.basis[j]] == p) return j;
  throw MathError("path " + q.path_name(p) + " is not a residue basis element");
}

void check_length(const ExtFrame& f, const ExtVector& e) {
  if (e.coeffs.size() != f.m())
    throw InputError("extension vector has " + std::to_string(e.coeffs.size()) +
                     " coefficients, frame has m = " + std::to_string(f.m()));
}

void check_nonsplit(const ExtFrame& f, const ExtVector& e) {
  check_length(f, e);
  if (e.is_split()) throw MathError("the split class has no non-split realization");
}

}  // namespace

ExtFrame build_frame(const QuiverPtr& q, std::size_t c, std::size_t a) {
  if (c >= q->vertex_count() || a >= q->vertex_count()) throw InputError("unknown simple");
  ExtFrame f;
  f.quiver = q;
  f.c = c;
  f.a = a;
  f.p = quivrep::projective_of_simple(q, c);
  f.i = quivrep::injective_of_simple(q, a);
  f.arrows = q->arrows_between(c, a);
  for (auto arrow : f.arrows)
    f.summands.push_back(unit(f.p.dim(a), basis_position(*q, c, a, {arrow})));
  f.rad = quivrep::radical(f.p);
  f.rad2 = quivrep::radical_of(f.p, f.rad);
  f.n_pre = f.rad;
  f.n_pre.spaces[a] = f.rad2.spaces[a];
  return f;
}

std::size_t ext1_dimension(const QuiverPtr& q, std::size_t c, std::size_t a) {
  auto p = quivrep::projective_of_simple(q, c);
  auto rad = quivrep::radical(p);
  auto layer = quivrep::sub_quotient(p, rad, quivrep::radical_of(p, rad));
  return quivrep::hom_space(layer.rep, quivrep::simple_module(q, a)).size();
}

bool ExtVector::is_split() const {
  for (auto c : coeffs)
    if (c) return false;
  return true;
}

ExtVector make_vector(const ExtFrame& f, std::vector<std::int64_t> coeffs) {
  if (coeffs.size() != f.m())
    throw InputError("extension vector needs " + std::to_string(f.m()) + " coefficients");
  ExtVector e;
  for (auto c : coeffs) e.coeffs.push_back(f.field().reduce(c));
  return e;
}

ExtVector ext_sum(const ExtFrame& f, const ExtVector& x, const ExtVector& y) {
  check_length(f, x);
  check_length(f, y);
  ExtVector out;
  for (std::size_t k = 0; k < f.m(); ++k) out.coeffs.push_back(f.field().add(x.coeffs[k], y.coeffs[k]));
  return out;
}

ExtVector act_left(const ExtFrame& f, Elem alpha, const ExtVector& e) {
  check_length(f, e);
  ExtVector out = e;
  alpha = f.field().reduce(alpha);
  for (auto& c : out.coeffs) c = f.field().mul(alpha, c);
  out.history.push_back({Side::left, alpha});
  return out;
}

ExtVector act_right(const ExtFrame& f, const ExtVector& e, Elem gamma) {
  check_length(f, e);
  ExtVector out = e;
  gamma = f.field().reduce(gamma);
  for (auto& c : out.coeffs) c = f.field().mul(c, gamma);
  out.history.push_back({Side::right, gamma});
  return out;
}

namespace {

Subspace kernel_of_row(const ExtFrame& f, const ExtVector& e) {
  Matrix row(f.field(), 1, f.m());
  for (std::size_t k = 0; k < f.m(); ++k) row(0, k) = e.coeffs[k];
  return exactla::kernel(row);
}

/// sum_k x_k A_k inside P at vertex a.
Vector combine(const ExtFrame& f, const Vector& x) {
  Vector out(f.p.dim(f.a), 0);
  for (std::size_t k = 0; k < f.m(); ++k)
    for (std::size_t r = 0; r < out.size(); ++r)
      out[r] = f.field().add(out[r], f.field().mul(x[k], f.summands[k][r]));
  return out;
}

}  // namespace

Subfactor support(const ExtFrame& f, const ExtVector& e) {
  check_nonsplit(f, e);
  const Subspace ker = kernel_of_row(f, e);
  std::vector<bool> pivot(f.m(), false);
  for (auto p : ker.pivots()) pivot[p] = true;
  SubRep upper = f.rad2;
  std::vector<Vector> vecs;
  for (std::size_t k = 0; k < f.m(); ++k)
    if (!pivot[k]) vecs.push_back(f.summands[k]);
  for (const auto& v : f.rad2.spaces[f.a].basis_vectors()) vecs.push_back(v);
  upper.spaces[f.a] = Subspace::span(f.field(), f.p.dim(f.a), vecs);
  return vcat::make_subfactor(f.p, upper, f.rad2);
}

QuotientRealization realize_as_quotient(const ExtFrame& f, const ExtVector& e) {
  check_nonsplit(f, e);
  std::vector<Vector> vecs = f.n_pre.spaces[f.a].basis_vectors();
  for (const auto& k : kernel_of_row(f, e).basis_vectors()) vecs.push_back(combine(f, k));
  SubRep l = f.n_pre;
  l.spaces[f.a] = Subspace::span(f.field(), f.p.dim(f.a), vecs);
  if (!quivrep::is_arrow_closed(f.p, l)) throw MathError("realization kernel is not a submodule");
  return {l, vcat::make_subfactor(f.p, quivrep::whole(f.p), l)};
}

SubRep realize_in_injective(const ExtFrame& f, const ExtVector& e) {
  check_nonsplit(f, e);
  const auto& q = *f.quiver;
  Vector x(f.i.dim(f.c), 0);
  for (std::size_t k = 0; k < f.m(); ++k)
    x[basis_position(q, f.c, f.a, {f.arrows[k]})] = e.coeffs[k];
  Vector soc = unit(f.i.dim(f.a), basis_position(q, f.a, f.a, {}));
  return quivrep::generated(f.i, {{f.c, x}, {f.a, soc}});
}

PropClass prop_class(const ExtFrame& f, const ExtVector& e, Side side) {
  check_nonsplit(f, e);
  PropClass pc{side, e.coeffs};
  Elem lead = 0;
  for (auto c : pc.point)
    if (c) {
      lead = c;
      break;
    }
  const Elem inv = f.field().inv(lead);
  for (auto& c : pc.point) c = f.field().mul(c, inv);
  return pc;
}

std::vector<PropClass> enumerate_classes(const ExtFrame& f, Side side) {
  std::vector<PropClass> out;
  const std::size_t m = f.m();
  const auto p = f.field().p();
  for (std::size_t lead = 0; lead < m; ++lead) {
    std::vector<Elem> x(m, 0);
    x[lead] = 1;
    while (true) {
      out.push_back({side, x});
      std::size_t k = m;
      while (k > lead + 1 && ++x[k - 1] == p) x[--k] = 0;
      if (k == lead + 1) break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Pullback pullback_u(const ExtFrame& f) {
  if (f.m() == 0) throw MathError("no arrows: every extension splits");
  Pullback out{quivrep::sub_quotient(f.p, quivrep::whole(f.p), f.n_pre)};
  const auto rad_u = quivrep::radical(out.u.rep);
  out.rad_is_sigma_a = rad_u == out.u.from_ambient(f.rad) && rad_u.total_dim() == f.m() &&
                       rad_u.dim(f.a) == f.m();
  // kernel of P -> (+)_k E_k is the intersection of the L_k; the image lies in
  // the fiber product over S_c, which has dimension 1 + m
  SubRep meet = quivrep::whole(f.p);
  for (std::size_t k = 0; k < f.m(); ++k) {
    ExtVector ek;
    ek.coeffs.assign(f.m(), 0);
    ek.coeffs[k] = 1;
    meet = quivrep::intersect(meet, realize_as_quotient(f, ek).kernel);
  }
  out.subdirect = meet == f.n_pre && out.u.rep.total_dim() == 1 + f.m();
  return out;
}

Extension realize_extension(const ExtFrame& f, const ExtVector& e) {
  const auto r = realize_as_quotient(f, e);
  const Window w = vcat::window(f.p, r.e);
  const Field& fld = f.field();
  std::size_t j = 0;
  while (e.coeffs[j] == 0) ++j;
  Extension x{w.rep, {}, {}};
  auto sa = quivrep::simple_module(f.quiver, f.a);
  auto sc = quivrep::simple_module(f.quiver, f.c);
  for (std::size_t v = 0; v < f.p.vertex_count(); ++v)
    x.iota.blocks.emplace_back(fld, w.rep.dim(v), sa.dim(v));
  Vector image = w.project[f.a].apply(f.summands[j]);
  const Elem inv = fld.inv(e.coeffs[j]);
  for (std::size_t r2 = 0; r2 < image.size(); ++r2) x.iota.blocks[f.a](r2, 0) = fld.mul(image[r2], inv);

  auto tops = quivrep::hom_space(w.rep, sc);
  if (tops.size() != 1) throw MathError("realized extension does not have simple head");
  Vector ec = w.project[f.c].apply(unit(f.p.dim(f.c), basis_position(*f.quiver, f.c, f.c, {})));
  const Elem val = tops[0].blocks[f.c].apply(ec)[0];
  x.pi.blocks = tops[0].blocks;
  for (auto& b : x.pi.blocks) b = b.scaled(fld.inv(val));
  if (!quivrep::is_homomorphism(sa, x.e, x.iota) || !quivrep::is_homomorphism(x.e, sc, x.pi))
    throw MathError("realized extension maps are not homomorphisms");
  return x;
}

ExtVector read_class(const ExtFrame& f, const Extension& x) {
  auto y = exactla::solve_affine(x.pi.blocks[f.c], Vector{1});
  if (!y) throw MathError("pi is not surjective at the head vertex");
  ExtVector out;
  for (auto arrow : f.arrows) {
    Vector z = x.e.map(arrow).apply(y->particular);
    auto t = exactla::solve_affine(x.iota.blocks[f.a], z);
    if (!t) throw MathError("arrow image leaves the image of iota");
    out.coeffs.push_back(t->particular.at(0));
  }
  return out;
}

ExtVector yoneda_roundtrip(const ExtFrame& f, const ExtVector& e) {
  return read_class(f, realize_extension(f, e));
}

}  // namespace virtmod::extspace

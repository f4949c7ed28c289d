#include "virtmod/decompose.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "virtmod/error.hpp"

namespace virtmod::quivrep {

namespace {

// Dense univariate polynomials over F_p, lowest degree first, no trailing zeros.
using Poly = std::vector<Elem>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

Poly poly_sub(const Field& f, Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.sub(a[i], b[i]);
  trim(a);
  return a;
}

Poly poly_mul(const Field& f, const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = f.add(c[i + j], f.mul(a[i], b[j]));
  trim(c);
  return c;
}

/// (quotient, remainder) of a by nonzero b.
std::pair<Poly, Poly> poly_divmod(const Field& f, Poly a, const Poly& b) {
  if (degree(a) < degree(b)) return {{}, a};
  Poly q(a.size() - b.size() + 1, 0);
  const Elem lead_inv = f.inv(b.back());
  for (int i = degree(a) - degree(b); i >= 0; --i) {
    const Elem c = f.mul(a[i + b.size() - 1], lead_inv);
    q[i] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) a[i + j] = f.sub(a[i + j], f.mul(c, b[j]));
  }
  trim(a);
  trim(q);
  return {q, a};
}

Poly poly_mod(const Field& f, const Poly& a, const Poly& b) { return poly_divmod(f, a, b).second; }

Poly monic(const Field& f, Poly a) {
  if (a.empty()) return a;
  const Elem inv = f.inv(a.back());
  for (auto& c : a) c = f.mul(c, inv);
  return a;
}

Poly poly_gcd(const Field& f, Poly a, Poly b) {
  while (!b.empty()) {
    Poly r = poly_mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, a);
}

Poly powmod(const Field& f, Poly base, std::uint64_t e, const Poly& mod) {
  Poly result{1};
  base = poly_mod(f, base, mod);
  while (e) {
    if (e & 1) result = poly_mod(f, poly_mul(f, result, base), mod);
    base = poly_mod(f, poly_mul(f, base, base), mod);
    e >>= 1;
  }
  return result;
}

/// Block-diagonal view of an endomorphism: the list of per-vertex blocks.
using Blocks = std::vector<Matrix>;

Vector flatten(const Blocks& b) {
  Vector out;
  for (const auto& m : b) out.insert(out.end(), m.data().begin(), m.data().end());
  return out;
}

Blocks identity_blocks(const Representation& m) { return identity_hom(m).blocks; }

Blocks multiply(const Blocks& a, const Blocks& b) {
  Blocks c;
  for (std::size_t v = 0; v < a.size(); ++v) c.push_back(a[v] * b[v]);
  return c;
}

Blocks evaluate(const Representation& m, const Poly& h, const Blocks& x) {
  const Field& f = m.field();
  Blocks acc;
  for (auto d : m.dims()) acc.emplace_back(f, d, d);
  const Blocks id = identity_blocks(m);
  for (int i = degree(h); i >= 0; --i) {
    acc = multiply(acc, x);
    for (std::size_t v = 0; v < acc.size(); ++v) acc[v] = acc[v] + id[v].scaled(h[i]);
  }
  return acc;
}

Poly minimal_polynomial(const Representation& m, const Blocks& x) {
  const Field& f = m.field();
  std::vector<Vector> powers{flatten(identity_blocks(m))};
  Blocks cur = identity_blocks(m);
  const std::size_t len = powers.front().size();
  while (true) {
    cur = multiply(cur, x);
    Vector target = flatten(cur);
    // Solve sum c_i X^i = X^k with the powers as columns.
    Matrix a = Matrix::from_vectors(f, powers, len).transpose();
    if (auto sol = exactla::solve_affine(a, target)) {
      Poly mu(powers.size() + 1, 0);
      for (std::size_t i = 0; i < powers.size(); ++i) mu[i] = f.neg(sol->particular[i]);
      mu.back() = 1;
      return mu;
    }
    powers.push_back(std::move(target));
  }
}

/// A proper factor h of a squarefree g all of whose irreducible factors have
/// degree d (equal-degree splitting). Randomized, deterministic seed.
Poly equal_degree_split(const Field& f, const Poly& g, int d, std::mt19937_64& rng) {
  const std::uint32_t p = f.p();
  std::uniform_int_distribution<std::uint32_t> coeff(0, p - 1);
  for (int attempt = 0; attempt < 512; ++attempt) {
    Poly a(static_cast<std::size_t>(degree(g)), 0);
    for (auto& c : a) c = coeff(rng);
    trim(a);
    if (degree(a) < 1) continue;
    Poly h = poly_gcd(f, a, g);
    if (degree(h) > 0 && degree(h) < degree(g)) return h;
    Poly t;
    if (p == 2) {
      // trace a + a^2 + ... + a^(2^(d-1))
      Poly term = poly_mod(f, a, g);
      t = term;
      for (int i = 1; i < d; ++i) {
        term = poly_mod(f, poly_mul(f, term, term), g);
        Poly neg = poly_sub(f, {}, term);
        t = poly_sub(f, t, neg);
      }
    } else {
      // norm-like product a * a^p * ... * a^(p^(d-1)), raised to (p-1)/2
      Poly term = poly_mod(f, a, g);
      Poly prod = term;
      for (int i = 1; i < d; ++i) {
        term = powmod(f, term, p, g);
        prod = poly_mod(f, poly_mul(f, prod, term), g);
      }
      t = poly_sub(f, powmod(f, prod, (p - 1) / 2, g), Poly{1});
    }
    h = poly_gcd(f, t, g);
    if (degree(h) > 0 && degree(h) < degree(g)) return h;
  }
  throw MathError("equal-degree factorization did not converge");
}

/// A polynomial h such that h(x) is neither nilpotent nor invertible when the
/// minimal polynomial mu has two distinct irreducible factors.
std::optional<Poly> coprime_factor(const Field& f, const Poly& mu, std::mt19937_64& rng) {
  const Poly x{0, 1};
  Poly xp = x;
  for (int d = 1; d <= degree(mu); ++d) {
    xp = powmod(f, xp, f.p(), mu);
    Poly g = poly_gcd(f, mu, poly_sub(f, xp, x));
    if (degree(g) <= 0) continue;
    if (degree(g) > d) return equal_degree_split(f, g, d, rng);
    // g is the only irreducible factor of degree d: check whether mu is a power of it.
    Poly rest = mu;
    while (true) {
      auto [q, r] = poly_divmod(f, rest, g);
      if (!r.empty()) break;
      rest = std::move(q);
    }
    if (degree(rest) > 0) return g;
    return std::nullopt;
  }
  return std::nullopt;
}

struct Split {
  SubRep kernel;
  SubRep image;
};

std::optional<Split> try_split(const Representation& m, const Blocks& x, std::mt19937_64& rng) {
  const Field& f = m.field();
  const Poly mu = minimal_polynomial(m, x);
  auto h = coprime_factor(f, mu, rng);
  if (!h) return std::nullopt;
  Blocks y = evaluate(m, *h, x);
  Blocks power = y;
  for (std::size_t k = 1; k < std::max<std::size_t>(m.total_dim(), 1); ++k) power = multiply(power, y);
  Hom hp{power};
  Split s{kernel(hp, m), image(hp, m, whole(m))};
  if (s.kernel.is_zero() || s.image.is_zero()) return std::nullopt;
  return s;
}

/// Calls fn on candidate coefficient vectors for a space of dimension k;
/// stops when fn returns true.
template <class Fn>
bool for_each_candidate(const Field& f, std::size_t k, std::uint64_t budget, std::mt19937_64& rng,
                        Fn&& fn) {
  const std::uint32_t p = f.p();
  for (std::size_t i = 0; i < k; ++i) {
    Vector c(k, 0);
    c[i] = 1;
    if (fn(c)) return true;
  }
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < k && size <= budget; ++i) size *= p;
  if (size <= std::min<std::uint64_t>(budget, 1024)) {
    // small: scan everything
    Vector c(k, 0);
    for (std::uint64_t n = 0; n < size; ++n) {
      if (fn(c)) return true;
      for (std::size_t i = 0; i < k && ++c[i] == p; ++i) c[i] = 0;
    }
    return false;
  }
  std::uniform_int_distribution<std::uint32_t> coeff(0, p - 1);
  for (int t = 0; t < 64; ++t) {
    Vector c(k);
    for (auto& e : c) e = coeff(rng);
    if (fn(c)) return true;
  }
  return false;
}

void decompose_into(const Representation& m, std::uint64_t budget, std::mt19937_64& rng,
                    std::vector<SubRep>& out, const std::function<SubRep(const SubRep&)>& to_top) {
  if (m.total_dim() == 0) return;
  const auto end = hom_space(m, m);
  std::optional<Split> split;
  for_each_candidate(m.field(), end.size(), budget, rng, [&](const Vector& c) {
    split = try_split(m, linear_combination(m.field(), end, c).blocks, rng);
    return split.has_value();
  });
  if (!split) {
    out.push_back(to_top(whole(m)));
    return;
  }
  for (const SubRep* part : {&split->kernel, &split->image}) {
    Window w = as_module(m, *part);
    decompose_into(w.rep, budget, rng, out,
                   [&](const SubRep& s) { return to_top(w.to_ambient(s)); });
  }
}

}  // namespace

std::optional<std::pair<SubRep, SubRep>> fitting_split(const Representation& m,
                                                       std::uint64_t budget) {
  if (m.total_dim() == 0) return std::nullopt;
  std::mt19937_64 rng(0x5eed);
  const auto end = hom_space(m, m);
  std::optional<Split> split;
  for_each_candidate(m.field(), end.size(), budget, rng, [&](const Vector& c) {
    split = try_split(m, linear_combination(m.field(), end, c).blocks, rng);
    return split.has_value();
  });
  if (!split) return std::nullopt;
  return std::make_pair(split->kernel, split->image);
}

std::vector<SubRep> decompose(const Representation& m, std::uint64_t budget) {
  std::mt19937_64 rng(0x5eed);
  std::vector<SubRep> out;
  decompose_into(m, budget, rng, out, [](const SubRep& s) { return s; });
  std::sort(out.begin(), out.end());
  return out;
}

bool is_indecomposable(const Representation& m, std::uint64_t budget) {
  return m.total_dim() > 0 && !fitting_split(m, budget);
}

namespace {

bool invertible(const Hom& h) {
  for (const auto& b : h.blocks)
    if (b.rows() != b.cols() || exactla::rank(b) != b.rows()) return false;
  return true;
}

std::optional<Hom> iso_between_indecomposables(const Representation& a, const Representation& b,
                                               std::uint64_t budget, std::mt19937_64& rng) {
  if (a.dims() != b.dims()) return std::nullopt;
  const auto basis = hom_space(a, b);
  if (basis.empty()) return a.total_dim() == 0 ? std::optional<Hom>(Hom{}) : std::nullopt;
  std::optional<Hom> found;
  for_each_candidate(a.field(), basis.size(), budget, rng, [&](const Vector& c) {
    Hom h = linear_combination(a.field(), basis, c);
    if (invertible(h)) found = std::move(h);
    return found.has_value();
  });
  return found;
}

}  // namespace

std::optional<Hom> find_isomorphism(const Representation& a, const Representation& b,
                                    std::uint64_t budget) {
  if (a.dims() != b.dims()) return std::nullopt;
  std::mt19937_64 rng(0x150);
  if (auto h = iso_between_indecomposables(a, b, budget, rng)) return h;
  // Match indecomposable summands, then assemble a block isomorphism.
  const auto da = decompose(a, budget);
  const auto db = decompose(b, budget);
  if (da.size() != db.size() || da.size() < 2) return std::nullopt;
  std::vector<Window> wa, wb;
  for (const auto& s : da) wa.push_back(as_module(a, s));
  for (const auto& s : db) wb.push_back(as_module(b, s));
  std::vector<bool> used(db.size(), false);
  Hom total;
  for (std::size_t v = 0; v < a.vertex_count(); ++v)
    total.blocks.emplace_back(a.field(), b.dim(v), a.dim(v));
  for (std::size_t i = 0; i < wa.size(); ++i) {
    bool matched = false;
    for (std::size_t j = 0; j < wb.size() && !matched; ++j) {
      if (used[j]) continue;
      auto h = iso_between_indecomposables(wa[i].rep, wb[j].rep, budget, rng);
      if (!h) continue;
      used[j] = matched = true;
      // a -> summand i coordinates -> summand j coordinates -> b. The
      // projection onto summand i is along the other summands.
      for (std::size_t v = 0; v < a.vertex_count(); ++v) {
        // coordinates of a_v in the basis made of all summand lifts
        Matrix all_lifts = wa[0].lift[v];
        for (std::size_t k = 1; k < wa.size(); ++k)
          all_lifts = Matrix::hstack(all_lifts, wa[k].lift[v]);
        if (all_lifts.cols() == 0) continue;
        auto inv = exactla::inverse(all_lifts);
        if (!inv) throw MathError("decomposition summands are not complementary");
        std::size_t offset = 0;
        for (std::size_t k = 0; k < i; ++k) offset += wa[k].lift[v].cols();
        Matrix coord(a.field(), wa[i].lift[v].cols(), a.dim(v));
        for (std::size_t r = 0; r < coord.rows(); ++r)
          for (std::size_t c = 0; c < coord.cols(); ++c) coord(r, c) = (*inv)(offset + r, c);
        total.blocks[v] = total.blocks[v] + wb[j].lift[v] * h->blocks[v] * coord;
      }
    }
    if (!matched) return std::nullopt;
  }
  if (!is_homomorphism(a, b, total) || !invertible(total))
    throw MathError("assembled isomorphism failed verification");
  return total;
}

bool is_isomorphic(const Representation& a, const Representation& b, std::uint64_t budget) {
  return find_isomorphism(a, b, budget).has_value();
}

}  // namespace virtmod::quivrep

#include <gtest/gtest.h>

#include "test_support.hpp"
#include "virtmod/error.hpp"
#include "virtmod/extracts.hpp"
#include "virtmod/extspace.hpp"

using namespace vt;
using namespace virtmod::quivrep;
using namespace virtmod::extracts;
using virtmod::vcat::Subfactor;
using virtmod::vcat::whole_subfactor;

namespace {

SubRep line_at(const Representation& m, std::size_t v, Vector x) { return generated(m, {{v, x}}); }

}  // namespace

TEST(HullOver, Examples) {
  auto k = kronecker();
  auto s2 = simple_module(k, 1);
  auto h = hull_over(s2, whole_subfactor(s2));
  EXPECT_EQ(h.module.dims(), injective_of_simple(k, 1).dims());
  EXPECT_EQ(h.socle_vertices, (std::vector<std::size_t>{1}));

  auto f = virtmod::extspace::build_frame(k, 0, 1);
  auto e1 = virtmod::extspace::realize_as_quotient(f, virtmod::extspace::make_vector(f, {1, 0}));
  auto he = hull_over(f.p, e1.e);
  EXPECT_EQ(he.module.dims(), (std::vector<std::size_t>{2, 1}));
  auto img = image(he.embedding, he.module, whole(virtmod::vcat::window(f.p, e1.e).rep));
  EXPECT_EQ(img.dims(), (std::vector<std::size_t>{1, 1}));

  auto p = projective_of_simple(k, 0);
  auto hr = hull_over(p, {radical(p), zero_sub(p)});
  EXPECT_EQ(hr.socle_vertices, (std::vector<std::size_t>{1, 1}));
  EXPECT_EQ(hr.module.dims(), (std::vector<std::size_t>{4, 2}));
  // P1 itself embeds in I2 ⊕ I2
  auto hp = hull_over(p, whole_subfactor(p));
  EXPECT_TRUE(kernel(hp.embedding, p).is_zero());
  EXPECT_TRUE(is_homomorphism(p, hp.module, hp.embedding));
}

TEST(CoverOver, Examples) {
  auto k = kronecker();
  auto p = projective_of_simple(k, 0);
  auto c = cover_over(p, whole_subfactor(p));
  EXPECT_EQ(c.module, p);
  EXPECT_EQ(c.head_vertices, (std::vector<std::size_t>{0}));
  auto m = rep(k, {2, 1}, {{{1, 0}}, {{0, 1}}});  // an injective I2
  auto ci = cover_over(m, whole_subfactor(m));
  EXPECT_EQ(ci.head_vertices, (std::vector<std::size_t>{0, 0}));
  EXPECT_TRUE(is_homomorphism(ci.module, m, ci.projection));
}

TEST(InjectiveExtract, Examples) {
  auto k = kronecker();
  // M = E of length 2: the extract is M
  auto e = rep(k, {1, 1}, {{{1}}, {{0}}});
  Filtration fe{zero_sub(e), socle(e), whole(e)};
  auto xe = injective_extract(e, fe);
  EXPECT_EQ(xe.value, (Subfactor{whole(e), zero_sub(e)}));
  EXPECT_EQ(xe.canonical.total_dim(), 2u);

  // M = P1, E = P1 / A2-line, B = S2
  auto p = projective_of_simple(k, 0);
  auto a2line = line_at(p, 1, {0, 1});
  Filtration fp{a2line, radical(p), whole(p)};
  auto xp = injective_extract(p, fp);
  EXPECT_EQ(xp.value, (Subfactor{whole(p), a2line}));
  EXPECT_EQ(xp.canonical.dims(), (std::vector<std::size_t>{1, 1}));

  // uniserial over A3, E = top two layers: the extract is the whole depth-2 window
  auto u = projective_of_simple(a3(), 0);
  auto r = radical_series(u);
  auto xu = injective_extract(u, {r[2], r[1], r[0]});
  EXPECT_EQ(xu.value, (Subfactor{r[0], r[2]}));
  EXPECT_EQ(xu.canonical.total_dim(), 2u);
  // socle filtration: the whole uniserial
  auto xs = injective_extract(u, {r[3], r[2], r[1]});
  EXPECT_EQ(xs.value, (Subfactor{r[0], r[3]}));
  EXPECT_EQ(xs.canonical.total_dim(), 3u);
  EXPECT_THROW(injective_extract(u, {r[3], r[1], r[0]}), InputError);
}

TEST(ProjectiveExtract, Examples) {
  auto k = kronecker();
  auto e = rep(k, {1, 1}, {{{1}}, {{0}}});
  auto xe = projective_extract(e, {zero_sub(e), socle(e), whole(e)});
  EXPECT_EQ(xe.value, (Subfactor{whole(e), zero_sub(e)}));
  // the default extension E1 as its own module
  auto f = virtmod::extspace::build_frame(k, 0, 1);
  auto e1 = virtmod::vcat::window(
                f.p, virtmod::extspace::realize_as_quotient(f, virtmod::extspace::make_vector(f, {1, 0})).e)
                .rep;
  auto x1 = projective_extract(e1, {zero_sub(e1), socle(e1), whole(e1)});
  EXPECT_EQ(x1.value, whole_subfactor(e1));
  // inside P1 the head S1 extends to all of P1
  auto p = projective_of_simple(k, 0);
  auto xp = projective_extract(p, {line_at(p, 1, {1, 0}), radical(p), whole(p)});
  EXPECT_EQ(xp.value, whole_subfactor(p));
  EXPECT_TRUE(xp.canonical.is_zero());
  // uniserial A3, E = bottom two layers: a depth-2 quotient of P2
  auto u = projective_of_simple(a3(), 0);
  auto r = radical_series(u);
  auto xu = projective_extract(u, {r[3], r[2], r[1]});
  EXPECT_EQ(xu.value, (Subfactor{r[1], r[3]}));
  EXPECT_EQ(xu.vertex, 1u);
}

TEST(ExtractOfSimple, Examples) {
  auto u = projective_of_simple(a3(), 0);
  auto r = radical_series(u);
  auto inj = extract_of_simple(u, {r[2], r[3]}, Kind::injective);
  EXPECT_EQ(inj.value, whole_subfactor(u));
  auto proj = extract_of_simple(u, {r[0], r[1]}, Kind::projective);
  EXPECT_EQ(proj.value, whole_subfactor(u));
  auto k = kronecker();
  auto iso = rep(k, {1, 1}, {});
  EXPECT_THROW(extract_of_simple(iso, {line_at(iso, 0, {1}), zero_sub(iso)}, Kind::projective),
               MathError);
  EXPECT_THROW(extract_of_simple(iso, whole_subfactor(iso), Kind::projective), InputError);
}

TEST(ExtractOfSimple, IndecomposableWithSimpleEnd) {
  std::mt19937_64 rng(41);
  for (auto q : {kronecker(), a3(), square()}) {
    for (int t = 0; t < 12; ++t) {
      auto m = random_module(q, rng, 6);
      auto lat = enumerate_submodules(m);
      for (std::size_t i = 0; i < lat.size(); ++i)
        for (std::size_t j = 0; j < lat.size(); ++j) {
          if (lat[i].total_dim() != lat[j].total_dim() + 1 || !lat[i].contains(lat[j])) continue;
          Subfactor s{lat[i], lat[j]};
          for (auto kind : {Kind::injective, Kind::projective}) {
            for (const auto& x : extracts_over_filtrations(m, lat, s, kind)) {
              auto w = virtmod::vcat::window(m, x.value).rep;
              EXPECT_TRUE(is_indecomposable(w));
              if (kind == Kind::injective) {
                EXPECT_EQ(socle(w).total_dim(), 1u);
              } else {
                EXPECT_EQ(w.total_dim() - radical(w).total_dim(), 1u);
              }
              // the extract encloses E = L/N
              auto e = virtmod::vcat::window(m, {x.filtration.l, x.filtration.n}).rep;
              EXPECT_GE(w.total_dim(), e.total_dim());
            }
          }
        }
    }
  }
}

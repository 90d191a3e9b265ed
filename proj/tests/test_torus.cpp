#include <gtest/gtest.h>

#include "qtt/sampling.hpp"
#include "qtt/torus.hpp"

using namespace qtt;

namespace {

// random balanced exponent vector, by rejection
Expo random_expo(Sampler& s, const TriangulationData& t, int range = 3) {
  Expo k(t.num_edges);
  do {
    for (auto& x : k) x = s.integer(-range, range);
  } while (!t.balanced(k));
  return k;
}

}  // namespace

TEST(WeilPetersson, SearchPinsOneForm) {
  for (int N : {3, 5, 7}) {
    RootContext ctx(N);
    auto r = derive_wp_D1(ctx);
    EXPECT_EQ(r.candidates_before_sign, 2);
    EXPECT_EQ(r.candidates_after_sign, 1);
    const auto& t = *r.tri;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) EXPECT_EQ(t.form(i, j), -t.form(j, i));
    // H_p and H_del are central
    for (int e = 0; e < 4; ++e) {
      Expo x(4, 0);
      x[e] = 1;
      EXPECT_EQ(t.pair(d1::Hp, x), 0);
      EXPECT_EQ(t.pair(d1::Hdel, x), 0);
    }
    EXPECT_EQ(std::abs(t.pair(d1::Z134, d1::X1)), 2);
    // the form does not depend on N
    EXPECT_TRUE(t.same_as(*delta1(RootContext(3))));
  }
}

TEST(TorusElement, WeylProductRule) {
  RootContext ctx(5);
  auto tri = delta1(ctx);
  Sampler s(1);
  for (int i = 0; i < 50; ++i) {
    Expo a = random_expo(s, *tri), b = random_expo(s, *tri);
    auto p = TorusElement::monomial(tri, 5, a) * TorusElement::monomial(tri, 5, b);
    Expo ab(4);
    for (int e = 0; e < 4; ++e) ab[e] = a[e] + b[e];
    auto want = TorusElement::monomial(tri, 5, ab, ExactScalar::omega_pow(5, tri->pair(a, b)));
    EXPECT_TRUE((p - want).is_zero());
    EXPECT_TRUE((weyl_product(TorusElement::monomial(tri, 5, a), TorusElement::monomial(tri, 5, b)) - want).is_zero());
  }
}

TEST(TorusElement, AssociativeAndDistributive) {
  RootContext ctx(3);
  auto tri = delta1(ctx);
  Sampler s(2);
  auto rnd = [&] {
    TorusElement x(tri, 3);
    for (int t = 0; t < 3; ++t)
      x += TorusElement::monomial(tri, 3, random_expo(s, *tri, 1), ExactScalar::omega_pow(3, s.integer(0, 2), s.integer(-2, 2)));
    return x;
  };
  for (int i = 0; i < 10; ++i) {
    auto a = rnd(), b = rnd(), c = rnd();
    EXPECT_TRUE(((a * b) * c - a * (b * c)).is_zero());
    EXPECT_TRUE((a * (b + c) - a * b - a * c).is_zero());
  }
}

TEST(TorusElement, ExactZeroAgreesWithNumericValue) {
  // omega + omega^2 + 1 = 0 at N = 3 is a genuine identity, not a cancellation of equal terms
  RootContext ctx(3);
  auto tri = delta1(ctx);
  auto z = TorusElement::scalar(tri, 3, ExactScalar::omega_pow(3, 0) + ExactScalar::omega_pow(3, 1) + ExactScalar::omega_pow(3, 2));
  EXPECT_TRUE(z.is_zero());
  auto nz = TorusElement::scalar(tri, 3, ExactScalar::omega_pow(3, 0) + ExactScalar::omega_pow(3, 1));
  EXPECT_FALSE(nz.is_zero());
}

TEST(TorusElement, CentralElementsCommute) {
  RootContext ctx(5);
  auto tri = delta1(ctx);
  auto c = central_elements(tri, 5);
  for (int e = 1; e <= 4; ++e) {
    auto x = TorusElement::monomial(tri, 5, d1::X(e));
    EXPECT_TRUE(commutes(c.Hp[0], x));
    EXPECT_TRUE(commutes(c.Hdel, x));
  }
}

TEST(Lattice, CoordinatesRoundTrip) {
  RootContext ctx(3);
  auto tri = delta1(ctx);
  Sampler s(4);
  int ok = 0;
  for (int i = 0; i < 40; ++i) {
    Expo k = random_expo(s, *tri);
    try {
      auto c = lattice_coords(*tri, k);
      Expo back(4, 0);
      for (size_t g = 0; g < c.size(); ++g)
        for (int e = 0; e < 4; ++e) back[e] += c[g] * tri->generator_lattice[g][e];
      EXPECT_EQ(back, k);
      ++ok;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), "NotInGeneratorLattice");
    }
  }
  EXPECT_GT(ok, 0);
  EXPECT_NO_THROW(lattice_coords(*tri, d1::X(2)));
}

TEST(GlueChain, EmbeddingIsMultiplicative) {
  RootContext ctx(3);
  Sampler s(8);
  for (int n : {2, 3}) {
    auto g = glue_chain(ctx, n);
    EXPECT_EQ(g.Dn->num_edges, 3 * n + 1);
    EXPECT_EQ(int(g.Dn->punctures.size()), n);
    for (int i = 0; i < 20; ++i) {
      auto a = TorusElement::monomial(g.Dn, 3, random_expo(s, *g.Dn));
      auto b = TorusElement::monomial(g.Dn, 3, random_expo(s, *g.Dn));
      EXPECT_TRUE((g.embed(a * b) - g.embed(a) * g.embed(b)).is_zero());
    }
  }
}

TEST(GlueChain, PuncturesAreCentral) {
  RootContext ctx(5);
  auto g = glue_chain(ctx, 2);
  auto c = central_elements(g.Dn, 5);
  for (int e = 0; e < 7; ++e) {
    Expo k(7, 0);
    k[e] = 2;
    auto x = TorusElement::monomial(g.Dn, 5, k);
    for (auto& hp : c.Hp) EXPECT_TRUE(commutes(hp, x)) << e;
    EXPECT_TRUE(commutes(c.Hdel, x)) << e;
  }
}

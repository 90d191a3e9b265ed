#include <gtest/gtest.h>

#include <numeric>

#include "qtt/scalars.hpp"
#include "qtt/sampling.hpp"

using namespace qtt;

namespace {
const double kPi = std::acos(-1.0);

// q = exp(-8 pi i k / N), written out independently of RootContext
cplx q_direct(int N, int k, double n) { return std::polar(1.0, -8.0 * kPi * k * n / N); }
}  // namespace

TEST(RootContext, ConventionsFromOmega) {
  for (int N : {3, 5, 7, 9}) {
    RootContext ctx(N);
    EXPECT_NEAR(std::abs(ctx.A - std::pow(ctx.omega, -2)), 0, 1e-14);
    EXPECT_NEAR(std::abs(ctx.q - std::pow(ctx.omega, -4)), 0, 1e-14);
    EXPECT_NEAR(std::abs(std::pow(ctx.q, N) - 1.0), 0, 1e-12);
  }
}

TEST(RootContext, RejectsEvenOrNonCoprime) {
  EXPECT_THROW(RootContext(4), Error);
  EXPECT_THROW(RootContext(9, 3), Error);
  EXPECT_NO_THROW(RootContext(9, 2));
}

TEST(RootContext, LargeExponentsReduceExactly) {
  RootContext ctx(7, 3);
  EXPECT_NEAR(std::abs(ctx.omega_pow(7LL * 1000003 + 2) - ctx.omega_pow(2)), 0, 1e-15);
  EXPECT_NEAR(std::abs(ctx.q_pow(-123456789) - q_direct(7, 3, -123456789 % 7)), 0, 1e-12);
}

TEST(QInt, EndpointsAndSymmetry) {
  for (int N : {3, 5, 7}) {
    RootContext ctx(N);
    EXPECT_NEAR(std::abs(qint(ctx, 0)), 0, 1e-14);
    EXPECT_NEAR(std::abs(qint(ctx, 1) - 1.0), 0, 1e-14);
    EXPECT_NEAR(std::abs(qint(ctx, N)), 0, 1e-12);  // [N] = 0 at a primitive root
    for (int n = -N; n <= N; ++n) EXPECT_NEAR(std::abs(qint(ctx, -n) + qint(ctx, n)), 0, 1e-12);
  }
}

TEST(QInt, MatchesClosedFormSine) {
  // [n] = sin(n theta) / sin(theta) with q = e^(i theta)
  for (int N : {3, 5, 7}) {
    RootContext ctx(N, 1);
    double theta = -4.0 * 2.0 * kPi / N;
    for (int n = 1; n < N; ++n) EXPECT_NEAR(std::abs(qint(ctx, n) - std::sin(n * theta) / std::sin(theta)), 0, 1e-12);
  }
}

TEST(QFact, UndefinedAtN) {
  RootContext ctx(5);
  EXPECT_NEAR(std::abs(qfact(ctx, 0) - 1.0), 0, 1e-15);
  EXPECT_NEAR(std::abs(qfact(ctx, 3) - qint(ctx, 1) * qint(ctx, 2) * qint(ctx, 3)), 0, 1e-13);
  EXPECT_THROW(qfact(ctx, 5), Error);
  EXPECT_THROW(qfact(ctx, -1), Error);
}

TEST(Chebyshev, CosineIdentity) {
  Sampler s(11);
  for (int n : {0, 1, 2, 3, 5, 7}) {
    for (int i = 0; i < 10; ++i) {
      cplx th = s.gaussian() * 0.7;
      EXPECT_NEAR(std::abs(chebyshev_T(n, 2.0 * std::cos(th)) - 2.0 * std::cos(double(n) * th)), 0, 1e-9);
    }
  }
  EXPECT_THROW(chebyshev_T(-1, 1.0), Error);
}

TEST(ExpQ, ZeroAndSquareZero) {
  RootContext ctx(5);
  EXPECT_NEAR((exp_q_truncated(ctx, Mat::Zero(3, 3)) - identity(3)).norm(), 0, 1e-15);
  Mat X = Mat::Zero(4, 4);
  X(0, 3) = cplx(0.3, 2.0);
  EXPECT_NEAR((exp_q_truncated(ctx, X) - identity(4) - X).norm(), 0, 1e-14);
}

TEST(ExpQ, SeriesOracle) {
  // term by term against [n]! built from the sine form
  for (int N : {3, 5}) {
    RootContext ctx(N);
    Sampler s(3);
    Mat X = Mat::Zero(N, N);
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) X(i, j) = s.gaussian();
    Mat want = identity(N), pw = identity(N);
    cplx fact = 1.0;
    for (int n = 1; n < N; ++n) {
      pw = pw * X;
      fact *= (std::pow(ctx.q, n) - std::pow(ctx.q, -n)) / (ctx.q - 1.0 / ctx.q);
      want += std::pow(ctx.q, n * (n - 1) / 2.0) / fact * pw;
    }
    EXPECT_LT((exp_q_truncated(ctx, X) - want).norm(), 1e-12);
  }
}

TEST(Roots, NthRootsAreDistinctAndPrincipalFirst) {
  Sampler s(5);
  for (int N : {3, 5, 7}) {
    RootContext ctx(N);
    for (int t = 0; t < 20; ++t) {
      cplx z = s.nonzero(3.0);
      auto r = nth_roots(ctx, z);
      ASSERT_EQ(int(r.size()), N);
      EXPECT_NEAR(std::abs(r[0] - principal_root(ctx, z)), 0, 1e-13);
      EXPECT_NEAR(std::abs(r[0] - std::exp(std::log(z) / double(N))), 0, 1e-13);
      for (int i = 0; i < N; ++i) {
        EXPECT_NEAR(std::abs(std::pow(r[i], N) - z), 0, 1e-11 * std::abs(z));
        for (int j = i + 1; j < N; ++j) EXPECT_GT(std::abs(r[i] - r[j]), 1e-6);
      }
    }
  }
}

TEST(Roots, QPowerHalfIsA) {
  for (int N : {3, 5, 7, 9, 11})
    for (int k : {1, 2}) {
      if (std::gcd(k, N) != 1) continue;
      RootContext ctx(N, k);
      EXPECT_NEAR(std::abs(q_power(ctx, 0.5) - ctx.A), 0, 1e-13) << N << " " << k;
      for (int n = -4; n <= 4; ++n) EXPECT_NEAR(std::abs(q_power(ctx, double(n)) - ctx.q_pow(n)), 0, 1e-12);
    }
}

TEST(Matrices, KronAndDetRoot) {
  Sampler s(9);
  Mat a(2, 2), b(3, 3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) a(i, j) = s.gaussian();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b(i, j) = s.gaussian();
  Mat k = kron(a, b);
  EXPECT_NEAR(std::abs(k(1 * 3 + 2, 0 * 3 + 1) - a(1, 0) * b(2, 1)), 0, 1e-15);
  Mat n = k / det_root(k);
  EXPECT_NEAR(std::abs(n.determinant() - 1.0), 0, 1e-10);
  EXPECT_NEAR((mat_pow(a, 3) - a * a * a).norm(), 0, 1e-12);
  EXPECT_NEAR(std::abs(scalar_of(identity(3) * cplx(2, 1), 1e-12, "test") - cplx(2, 1)), 0, 1e-15);
  EXPECT_THROW(scalar_of(a, 1e-12, "test"), Error);
}

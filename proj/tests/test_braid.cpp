#include <gtest/gtest.h>

#include "qtt/braid.hpp"

using namespace qtt;

namespace {

const StandardModuleSpec kV1{{1.3, 0.2}, {0.8, 0.3}, {1.1, -0.2}, {0.9, 0.1}};
const StandardModuleSpec kV2{{0.7, -0.4}, {1.2, -0.1}, {0.95, 0.3}, {1.05, -0.15}};
const StandardModuleSpec kV3{{1.1, 0.5}, {0.9, -0.2}, {1.2, 0.1}, {0.8, -0.3}};
const StandardModuleSpec kV4{{0.9, -0.3}, {1.15, 0.25}, {1.05, 0.2}, {0.85, 0.05}};

// c with a = c b, and the relative residual
std::pair<cplx, double> proportional(const Mat& a, const Mat& b) {
  Eigen::Index r, c;
  b.cwiseAbs().maxCoeff(&r, &c);
  cplx k = a(r, c) / b(r, c);
  return {k, (a - k * b).norm() / a.norm()};
}

// op moved to act from the initial chain to itself
Mat closed_up(const RootContext& ctx, const BraidEvaluation& e, const std::vector<StandardModuleSpec>& init) {
  return realign_Dn(ChainModule(ctx, e.final_modules), ChainModule(ctx, init)).Psi * e.op;
}

}  // namespace

TEST(BraidWord, SignedRoundTrip) {
  auto w = BraidWord::from_signed(3, {1, -2, 1, -2});
  EXPECT_EQ(w.to_signed(), (std::vector<int>{1, -2, 1, -2}));
  EXPECT_EQ(w.then(BraidWord::from_signed(3, {2})).to_signed(), (std::vector<int>{1, -2, 1, -2, 2}));
  EXPECT_THROW(BraidWord::from_signed(2, {2}), Error);
  EXPECT_THROW(BraidWord::from_signed(2, {0}), Error);
  EXPECT_EQ(knot_word("trefoil").to_signed(), (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(knot_word("figure_eight").strands, 3);
  EXPECT_THROW(knot_word("hopf"), Error);
}

TEST(EvaluateBraid, EmptyWordIsIdentity) {
  RootContext ctx(3);
  auto e = evaluate_braid(ctx, {BraidWord::from_signed(2, {}), {kV1, kV2}, {}});
  EXPECT_LT((e.op - identity(9)).norm(), 1e-15);
}

TEST(EvaluateBraid, SingleLetterIsClosedFormula) {
  RootContext ctx(3);
  auto e = evaluate_braid(ctx, {BraidWord::from_signed(2, {1}), {kV1, kV2}, {}});
  auto R = closed_formula_R(ctx, kV1, kV2);
  EXPECT_LT((e.op - R.matrix).norm(), 1e-12);
  ASSERT_EQ(e.final_modules.size(), 2u);
  EXPECT_EQ(e.final_modules[0].x1, R.dst1.x1);
}

TEST(EvaluateBraid, CrossingThenInverseIsScalar) {
  for (int N : {3, 5}) {
    RootContext ctx(N);
    auto e = evaluate_braid(ctx, {BraidWord::from_signed(2, {1, -1}), {kV1, kV2}, {}});
    auto [c, res] = proportional(closed_up(ctx, e, {kV1, kV2}), identity(N * N));
    EXPECT_LT(res, 1e-8);
    EXPECT_NEAR(std::abs(c), 1.0, 1e-8);
  }
}

TEST(EvaluateBraid, BraidRelationUpToRootOfUnity) {
  for (int N : {3, 5}) {
    RootContext ctx(N);
    std::vector<StandardModuleSpec> m{kV1, kV2, kV3};
    auto a = evaluate_braid(ctx, {BraidWord::from_signed(3, {1, 2, 1}), m, {}});
    auto b = evaluate_braid(ctx, {BraidWord::from_signed(3, {2, 1, 2}), m, {}});
    // both words end on isomorphic colourings
    Mat Psi = realign_Dn(ChainModule(ctx, a.final_modules), ChainModule(ctx, b.final_modules)).Psi;
    Psi /= det_root(Psi);
    auto [c, res] = proportional(Psi * a.op, b.op);
    EXPECT_LT(res, 1e-6);
    EXPECT_LT(std::abs(std::pow(c, N * N) - 1.0), 1e-5);
  }
}

TEST(EvaluateBraid, FarCommutativity) {
  RootContext ctx(3);
  std::vector<StandardModuleSpec> m{kV1, kV2, kV3, kV4};
  auto a = evaluate_braid(ctx, {BraidWord::from_signed(4, {1, 3}), m, {}});
  auto b = evaluate_braid(ctx, {BraidWord::from_signed(4, {3, 1}), m, {}});
  EXPECT_LT((a.op - b.op).norm() / a.op.norm(), 1e-10);
}

TEST(EvaluateBraid, Functoriality) {
  RootContext ctx(3);
  std::vector<StandardModuleSpec> m{kV1, kV2, kV3};
  auto ab = evaluate_braid(ctx, {BraidWord::from_signed(3, {1, 2}), m, {}});
  auto a = evaluate_braid(ctx, {BraidWord::from_signed(3, {1}), m, {}});
  auto b = evaluate_braid(ctx, {BraidWord::from_signed(3, {2}), a.final_modules, {}});
  EXPECT_LT((ab.op - b.op * a.op).norm() / ab.op.norm(), 1e-12);
  EXPECT_LT((embed_pair(Mat::Identity(9, 9), 2, 3, 3) - identity(27)).norm(), 1e-15);
}

TEST(Closure, CyclicPivotTraceVanishes) {
  for (int N : {3, 5}) {
    RootContext ctx(N);
    std::vector<StandardModuleSpec> m{kV1};
    EXPECT_NEAR(std::abs(pivotal_closure(ctx, identity(N), m, m)), 0, 1e-12);
    // sum_i q^2i over a full period
    Mat P = PivotalData::pivot(ctx, standard_rep(ctx, kV1));
    EXPECT_NEAR(std::abs(P.trace()), 0, 1e-12 * P.norm());
    EXPECT_NEAR(std::abs(pivotal_closure(ctx, identity(N), m, m, false) - double(N)), 0, 1e-12);
  }
}

TEST(EvaluateBraid, SquareRootBranchChangesOnlyAPhase) {
  const int N = 3;
  RootContext ctx(N);
  std::vector<StandardModuleSpec> m{kV1, kV2};
  ColoredBraid a{BraidWord::from_signed(2, {1}), m, {}}, b = a;
  b.overrides[0].sroot = 1;
  auto ea = evaluate_braid(ctx, a), eb = evaluate_braid(ctx, b);
  Mat Psi = realign_Dn(ChainModule(ctx, eb.final_modules), ChainModule(ctx, ea.final_modules)).Psi;
  Psi /= det_root(Psi);
  auto [c, res] = proportional(Psi * eb.op, ea.op);
  EXPECT_LT(res, 1e-8);
  EXPECT_LT(std::abs(std::pow(c, N * N) - 1.0), 1e-6);
}

TEST(Closure, MismatchedCharactersThrow) {
  RootContext ctx(3);
  try {
    pivotal_closure(ctx, identity(3), {kV1}, {kV2});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), "CharacterMismatch");
  }
}

class Smoke : public ::testing::TestWithParam<std::pair<int, const char*>> {};

TEST_P(Smoke, RoutesAgree) {
  auto [N, knot] = GetParam();
  RootContext ctx(N);
  auto r = jones_smoke(ctx, knot);
  EXPECT_TRUE(r.ok()) << r.abs_mismatch << " " << r.phase_rou << " " << r.open_abs_mismatch << " "
                      << r.open_phase_rou;
  // full closures of this colouring vanish, open values do not (except nothing to open for one strand)
  EXPECT_LT(std::abs(r.oracle), 1e-8);
  EXPECT_GT(std::abs(r.oracle_open), 1e-3);
}

INSTANTIATE_TEST_SUITE_P(Knots, Smoke,
                         ::testing::Values(std::pair{3, "unknot"}, std::pair{3, "trefoil"},
                                           std::pair{3, "figure_eight"}, std::pair{5, "trefoil"}));

TEST(SmokeValues, TrefoilOpenModulus) {
  RootContext ctx(3);
  EXPECT_NEAR(std::abs(jones_smoke(ctx, "trefoil").oracle_open), 4.0, 1e-8);
}

#include <gtest/gtest.h>

#include "dynlforge/catalog.hpp"
#include "dynlforge/errors.hpp"
#include "dynlforge/gauge.hpp"
#include "dynlforge/lcan.hpp"

using namespace dynlforge;

namespace {

class PerSetup : public ::testing::TestWithParam<std::string> {};

}  // namespace

TEST_P(PerSetup, CanonicalResidualsVanish) {
  const QuasiBialgebra g = catalog_get(GetParam());
  const DoubleAlgebra d(g);
  const LEvaluator l = lcan_evaluator(d);
  for (const VecD& p : ball_grid(g.nl(), 0.8, 6, 17)) {
    const LValue v = lcan_eval(d, p);
    EXPECT_LE(v.skew_residual, 1e-10);
    EXPECT_LE(v.normalization_residual, 1e-10);
    EXPECT_LE(cdybe_residual(d, l, p), 1e-8);
    for (int a = 0; a < g.nl(); ++a) EXPECT_LE(equivariance_residual(d, l, p, VecD::Unit(g.nl(), a)), 1e-8);
    EXPECT_LE(ode_residual(d, l, p), 1e-8);
    EXPECT_LE(pmadtau_residuals(d, l, p, 3, 5).max(), 1e-8);
  }
}

TEST_P(PerSetup, VanishesAtOrigin) {
  const QuasiBialgebra g = catalog_get(GetParam());
  const DoubleAlgebra d(g);
  EXPECT_EQ(max_abs(lcan_matrix(d, VecD(VecD::Zero(g.nl())))), 0.0);
}

TEST_P(PerSetup, KAtOriginIsMinusHalfProjection) {
  const QuasiBialgebra g = catalog_get(GetParam());
  const DoubleAlgebra d(g);
  const int nl = g.nl(), N = 2 * g.n();
  const KRSOperators ops = krs_operators(d, VecD::Zero(nl));
  MatD expected = MatD::Zero(nl, N);
  expected.leftCols(nl) = -0.5 * MatD::Identity(nl, nl);
  EXPECT_LE(max_abs(MatD(ops.K - expected)), 1e-15);
  const VecD alpha = VecD::Ones(nl);
  EXPECT_LE((ops.K * d.s_embed(alpha)).norm(), 1e-15);
}

TEST_P(PerSetup, RecursionJetMatchesSeriesJet) {
  const QuasiBialgebra g = catalog_get(GetParam());
  const DoubleAlgebra d(g);
  const LEvaluator l = lcan_evaluator(d);
  const VecD p0 = ball_grid(g.nl(), 0.7, 1, 9)[0];
  const LJet a = lcan_jets(d, p0, 8), b = evaluator_jet(l, p0, 8);
  for (int k = 0; k <= 8; ++k) EXPECT_LE(max_abs(MatD(a.jet.coeffs[k] - b.jet.coeffs[k])), 1e-12) << k;
}

TEST_P(PerSetup, GaugePreservesResidualsAndNormalizationRecoversJet) {
  const QuasiBialgebra g = catalog_get(GetParam());
  const DoubleAlgebra d(g);
  const LEvaluator l = lcan_evaluator(d);
  SplitMix64 rng(23);
  const PolyMap sigma = random_equivariant_polymap(g, 2, 3, rng, 0.3);
  const LEvaluator gl = gauged_evaluator(g, l, sigma);
  const VecD p = ball_grid(g.nl(), 0.6, 1, 4)[0];
  EXPECT_LE(cdybe_residual(d, gl, p), 1e-7);
  EXPECT_LE(equivariance_residual(d, gl, p, VecD::Unit(g.nl(), 0)), 1e-7);
  const GaugeNormalization gn = gauge_normalize_jets(g, gl, p, 4);
  const LJet ref = lcan_jets(d, p, 4);
  for (int k = 0; k <= 4; ++k) EXPECT_LE(max_abs(MatD(gn.normalized.jet.coeffs[k] - ref.jet.coeffs[k])), 1e-9);
}

TEST_P(PerSetup, TwistShiftsByConstant) {
  const QuasiBialgebra g = catalog_get(GetParam());
  const DoubleAlgebra d(g);
  SplitMix64 rng(31);
  const MatD t = 0.25 * rng.skew(g.n());
  const DoubleAlgebra dt(twist(g, t));
  const LEvaluator lt = lcan_evaluator(d).plus_constant(MatD(-t));
  for (const VecD& p : ball_grid(g.nl(), 0.6, 3, 2)) EXPECT_LE(cdybe_residual(dt, lt, p), 1e-9);
}

TEST_P(PerSetup, GroupCocycleMatchesKroneckerReference) {
  const QuasiBialgebra g = catalog_get(GetParam());
  SplitMix64 rng(8);
  const VecD x = 0.5 * rng.normal_vector(g.n());
  EXPECT_LE(max_abs(MatD(group_cocycle<double>(g, x) - group_cocycle_kron(g, x))), 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Catalog, PerSetup, ::testing::ValuesIn(catalog_names()),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (char& c : s)
                             if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
                           return s;
                         });

TEST(LMatrix, PerturbedCdybeIsDetected) {
  const QuasiBialgebra g = catalog_get("so3-quadratic-AM");
  const DoubleAlgebra d(g);
  MatD c = MatD::Zero(g.n(), g.n());
  c(0, 1) = 0.1;
  c(1, 0) = -0.1;
  const LEvaluator l = lcan_evaluator(d).plus_constant(c);
  VecD p(3);
  p << 0.3, -0.1, 0.2;
  EXPECT_GT(cdybe_residual(d, l, p), 1e-3);
}

TEST(LMatrix, ConditioningRadiusFindsSo3Pole) {
  const DoubleAlgebra d(catalog_get("so3-quadratic-AM"));
  const double r = conditioning_radius(d, 1);
  EXPECT_GT(r, 5.5);
  EXPECT_LT(r, 2 * M_PI + 0.05);
}

TEST(LMatrix, OutsideDomainIsReported) {
  const DoubleAlgebra d(catalog_get("so3-quadratic-AM"));
  VecD p(3);
  p << 2 * M_PI, 0.0, 0.0;
  EXPECT_THROW(lcan_matrix(d, p), OutsideAnalyticDomain);
}

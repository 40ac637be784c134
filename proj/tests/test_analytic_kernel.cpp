#include <gtest/gtest.h>

#include <cmath>

#include "dynlforge/derivative.hpp"
#include "dynlforge/errors.hpp"
#include "dynlforge/linalg.hpp"
#include "dynlforge/rng.hpp"
#include "dynlforge/series.hpp"

using namespace dynlforge;

TEST(AnalyticKernel, DualNumbersDifferentiateExactly) {
  const Dual1 x = Dual1::variable(0.7);
  const Dual1 y = x * x * x / (x + 1.0);
  const double v = 0.7;
  EXPECT_NEAR(y.d, (3 * v * v * (v + 1) - v * v * v) / ((v + 1) * (v + 1)), 1e-15);
}

TEST(AnalyticKernel, ExpmMatchesScalarExponentialOnDiagonal) {
  MatD a = MatD::Zero(3, 3);
  a.diagonal() << 0.5, -1.0, 2.0;
  const MatD e = expm(a);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(e(i, i), std::exp(a(i, i)), 1e-13 * std::exp(a(i, i)));
}

TEST(AnalyticKernel, PhiFunctionsSatisfyRecurrence) {
  SplitMix64 rng(5);
  MatD a(4, 4);
  for (int i = 0; i < 16; ++i) a(i / 4, i % 4) = 0.5 * rng.normal();
  const PhiSet<double> ph = phi_functions(a);
  const MatD I = MatD::Identity(4, 4);
  EXPECT_LE(max_abs(MatD(a * ph.phi1 + I - ph.phi0)), 1e-13);
  EXPECT_LE(max_abs(MatD(a * ph.phi2 + I - ph.phi1)), 1e-13);
  EXPECT_LE(max_abs(MatD(phi_func(a, 2) - ph.phi2)), 1e-13);
  EXPECT_THROW(phi_func(a, 3), std::invalid_argument);
}

TEST(AnalyticKernel, SeriesArithmeticAndReciprocal) {
  auto layout = SeriesLayout::get(1, 8);
  const Series t = Series::variable(layout, 0);
  const Series one = Series::constant(layout, 1.0);
  const Series inv = one / (one - t);  // geometric series
  for (int k = 0; k <= 8; ++k) EXPECT_DOUBLE_EQ(inv.coeff(std::vector<int>{k}), 1.0);
  const Series sq = (one + t) * (one + t);
  EXPECT_DOUBLE_EQ(sq.coeff(std::vector<int>{1}), 2.0);
  EXPECT_DOUBLE_EQ(sq.coeff(std::vector<int>{3}), 0.0);
}

TEST(AnalyticKernel, NilpotentSeriesExponentialIsExact) {
  auto layout = SeriesLayout::get(1, 12);
  const Series t = Series::variable(layout, 0);
  Mat<Series> a = zeros<Series>(1, 1);
  a(0, 0) = t;
  const Mat<Series> e = expm(a);
  double fact = 1.0;
  for (int k = 0; k <= 12; ++k) {
    if (k > 0) fact *= k;
    EXPECT_NEAR(e(0, 0).coeff(std::vector<int>{k}), 1.0 / fact, 1e-18);
  }
}

TEST(AnalyticKernel, SolveBlockRefusesIllConditionedSystems) {
  MatD a = MatD::Identity(2, 2);
  a(1, 1) = 1e-12;
  EXPECT_THROW(solve_block<double>(a, MatD::Identity(2, 2)), OutsideAnalyticDomain);
  a(1, 1) = 0.5;
  EXPECT_LE(max_abs(MatD(a * solve_block<double>(a, MatD::Identity(2, 2)) - MatD::Identity(2, 2))), 1e-15);
}

TEST(AnalyticKernel, DualDerivativeAgreesWithFiniteDifferences) {
  auto f = [](const auto& p) {
    using T = typename std::decay_t<decltype(p)>::Scalar;
    Mat<T> m = zeros<T>(2, 2);
    m(0, 0) = p(0) * p(1);
    m(0, 1) = p(0) * p(0);
    m(1, 0) = T(1) / (p(1) + 2.0);
    return expm(m);
  };
  VecD p(2), dir(2);
  p << 0.3, -0.2;
  dir << 1.0, 0.5;
  const MatD exact = dir_derivative(f, p, dir);
  const MatD fd = fd_derivative([&](const VecD& q) { return f(q); }, p, dir);
  EXPECT_LE(max_abs(MatD(exact - fd)), 1e-9);
}

TEST(AnalyticKernel, SplitMixIsDeterministic) {
  SplitMix64 a(42), b(42);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
  SplitMix64 c(0);
  EXPECT_EQ(c.next(), 0xE220A8397B1DCDAFULL);
}

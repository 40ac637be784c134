#include <gtest/gtest.h>

#include <cmath>

#include "dynlforge/catalog.hpp"
#include "dynlforge/errors.hpp"

using namespace dynlforge;

TEST(Catalog, UnknownNameThrows) { EXPECT_THROW(catalog_get("sl4-whatever"), UnknownName); }

TEST(Catalog, EvTwistVariantsParse) {
  EXPECT_NO_THROW(catalog_get("sl2-ev-twist(alpha,0.5)"));
  EXPECT_NO_THROW(catalog_get("sl2-ev-twist(none,+1)"));
  EXPECT_NO_THROW(catalog_get("sl2-ev-twist(none,-1)"));
  EXPECT_THROW(catalog_get("sl2-ev-twist(beta,1)"), UnknownName);
}

TEST(Catalog, SeriesCoefficients) {
  const ScalarSeries c = scalar_series("cothm", 8);
  EXPECT_EQ(c.series.at(1), Rational(1, 3));
  EXPECT_EQ(c.series.at(3), Rational(-1, 45));
  EXPECT_EQ(c.series.at(2), Rational(0));
  const ScalarSeries t = scalar_series("tanh", 40);
  EXPECT_EQ(t.series.at(3), Rational(-1, 3));
  EXPECT_NEAR(t.evaluate(0.2), std::tanh(0.2), 1e-9);
}

TEST(Catalog, ScalarOdeSystemsAreExact) {
  for (const char* s : {"FGH", "FGHstar", "ev_coth", "ev_l", "ev_l_reflected"})
    EXPECT_TRUE(scalar_ode_residual(s, 24).zero()) << s;
}

TEST(Catalog, GivenEvOdesDoNotHold) {
  EXPECT_FALSE(scalar_ode_residual("ev_coth_given", 24).zero());
  EXPECT_FALSE(scalar_ode_residual("ev_l_given", 24).zero());
}

TEST(Catalog, SupportPatterns) {
  for (const char* s : {"F", "G", "H", "Fstar", "Gstar", "Hstar"}) {
    const ScalarSeries f = scalar_series(s, 32);
    EXPECT_GT(f.support_mod, 0) << s;
    EXPECT_TRUE(f.support_holds()) << s;
  }
}

TEST(Catalog, SeriesMemoizationIsConsistent) {
  const ScalarSeries a = scalar_series("F", 20), b = scalar_series("F", 20);
  for (int k = 0; k <= 20; ++k) EXPECT_EQ(a.series.at(k), b.series.at(k));
}

TEST(Catalog, EvMatrixShape) {
  const MatD r = ev_r_matrix(0.4, 1.0);
  const double t = 1.0 / std::tanh(0.35);
  EXPECT_NEAR(r(2, 1), -t / 4.0, 1e-15);
  EXPECT_NEAR(r(1, 2), t / 4.0, 1e-15);
  EXPECT_EQ(r(0, 0), 0.0);
}

TEST(Catalog, ExactSeriesArithmetic) {
  const ParamSeries e = series_exp(10), em = series_exp(10, -1);
  const ParamSeries one = e * em;
  EXPECT_EQ(one.at(0), Rational(1));
  for (int k = 1; k < 10; ++k) EXPECT_EQ(one.at(k), Rational(0));
  const ParamSeries s = series_sin(12), c = series_cos(12);
  const ParamSeries pyth = s * s + c * c - ParamSeries::constant(12, Rational(1));
  EXPECT_TRUE(pyth.is_zero());
}

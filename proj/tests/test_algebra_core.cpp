#include <gtest/gtest.h>

#include "dynlforge/catalog.hpp"
#include "dynlforge/double_algebra.hpp"
#include "dynlforge/errors.hpp"
#include "dynlforge/rng.hpp"

using namespace dynlforge;

TEST(AlgebraCore, CatalogSetupsBuildValidDoubles) {
  for (const auto& name : catalog_names()) {
    const QuasiBialgebra g = catalog_get(name);
    const DoubleAlgebra d = build_double(g);
    EXPECT_LE(d.jacobi_residual(), 1e-10) << name;
    EXPECT_LE(d.invariance_residual(), 1e-10) << name;
    EXPECT_TRUE(validate(g).ok()) << name;
  }
}

TEST(AlgebraCore, ExtractOfCanonicalSplittingIsIdentity) {
  for (const auto& name : catalog_names()) {
    const QuasiBialgebra g = catalog_get(name);
    const DoubleAlgebra d(g);
    const int n = g.n();
    const MatD I = MatD::Identity(2 * n, 2 * n);
    const QuasiBialgebra back = extract_from_splitting(d, {MatD(I.leftCols(n)), MatD(I.rightCols(n)), g.nl()});
    EXPECT_LE(tensor_distance(back, g), 1e-12) << name;
  }
}

TEST(AlgebraCore, SetupJsonRoundTrip) {
  for (const auto& name : catalog_names()) {
    const QuasiBialgebra g = catalog_get(name);
    const std::string text = setup_to_json(g);
    const QuasiBialgebra back = load_setup(text);
    EXPECT_EQ(tensor_distance(back, g), 0.0) << name;
    EXPECT_EQ(setup_to_json(back), text) << name;
  }
}

TEST(AlgebraCore, CorruptedAntisymmetryIsStructureError) {
  QuasiBialgebra g = catalog_get("sl2-cartan");
  g.c(0, 1, 1) = 3.0;
  try {
    validate(g);
    FAIL() << "expected StructureError";
  } catch (const StructureError& e) {
    EXPECT_EQ(e.residual(), "antisymmetry");
  }
}

TEST(AlgebraCore, RandomPhiBreaksDoubleJacobi) {
  QuasiBialgebra g = catalog_get("heisenberg-degenerate");
  SplitMix64 rng(11);
  add_wedge3(g.phi, 2, 3, 4, rng.normal());
  add_wedge3(g.phi, 1, 2, 3, rng.normal());
  EXPECT_THROW(validate(g), StructureError);
  EXPECT_THROW(build_double(g), AxiomError);
}

TEST(AlgebraCore, MalformedJsonIsParseError) {
  EXPECT_THROW(load_setup("{\"dim_l\": 1"), ParseError);
  EXPECT_THROW(load_setup("[1, 2]"), ParseError);
  EXPECT_THROW(load_setup("{\"dim_m\": 2}"), ParseError);
}

TEST(AlgebraCore, TwistByZeroIsIdentityAndComposes) {
  const QuasiBialgebra g = catalog_get("sl2-cartan");
  const int n = g.n();
  EXPECT_LE(tensor_distance(twist(g, MatD::Zero(n, n)), g), 1e-14);
  SplitMix64 rng(3);
  const MatD t1 = 0.4 * rng.skew(n), t2 = 0.3 * rng.skew(n);
  EXPECT_LE(tensor_distance(twist(twist(g, t1), t2), twist(g, MatD(t1 + t2))), 1e-12);
}

TEST(AlgebraCore, OppositeIsAnInvolution) {
  for (const auto& name : catalog_names()) {
    const QuasiBialgebra g = catalog_get(name);
    EXPECT_EQ(tensor_distance(opposite(opposite(g)), g), 0.0) << name;
  }
}

TEST(AlgebraCore, OppositeConjugatesBrackets) {
  // [h, e] = 2e; e lies in m, so the conjugated bracket keeps the sign.
  const QuasiBialgebra op = opposite(catalog_get("sl2-cartan"));
  EXPECT_DOUBLE_EQ(op.c(0, 1, 1), 2.0);
}

TEST(AlgebraCore, CatalogIsBidynamical) {
  for (const auto& name : catalog_names()) {
    const QuasiBialgebra g = catalog_get(name);
    EXPECT_TRUE(is_bidynamical(g, 1e-10)) << name;
  }
}

TEST(AlgebraCore, ToleranceScaleFromEnvironment) {
  ::setenv("DYNLFORGE_TOL_SCALE", "10", 1);
  EXPECT_DOUBLE_EQ(tolerance_scale(), 10.0);
  ::setenv("DYNLFORGE_TOL_SCALE", "garbage", 1);
  EXPECT_DOUBLE_EQ(tolerance_scale(), 1.0);
  ::unsetenv("DYNLFORGE_TOL_SCALE");
  EXPECT_DOUBLE_EQ(tolerance_scale(), 1.0);
}

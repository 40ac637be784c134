#include <gtest/gtest.h>

#include <cmath>

#include "dynlforge/catalog.hpp"
#include "dynlforge/duality.hpp"
#include "dynlforge/errors.hpp"

using namespace dynlforge;

namespace {

class DualitySetup : public ::testing::TestWithParam<std::string> {
 protected:
  void SetUp() override {
    g = catalog_get(GetParam());
    d = std::make_unique<DoubleAlgebra>(g);
    l = lcan_evaluator(*d);
    p = ball_grid(g.nl(), 0.7, 1, 13)[0];
  }
  QuasiBialgebra g;
  std::unique_ptr<DoubleAlgebra> d;
  LEvaluator l;
  VecD p;
};

std::string param_name(const ::testing::TestParamInfo<std::string>& info) {
  std::string s = info.param;
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
  return s;
}

}  // namespace

TEST_P(DualitySetup, VertexBracketMatchesTwistedDoubleBracket) {
  SplitMix64 rng(1);
  const int n = g.n();
  for (int s = 0; s < 4; ++s) {
    const auto x = make_vertex_element(*d, p, rng.normal_vector(g.nl()), rng.normal_vector(g.nm()));
    const auto y = make_vertex_element(*d, p, rng.normal_vector(g.nl()), rng.normal_vector(g.nm()));
    const auto b = vertex_bracket(*d, l, p, x, y);
    const VecD o = vertex_bracket_twisted(*d, l(p), x.in_double(n), y.in_double(n));
    EXPECT_LE((b.in_double(n) - o).norm(), 1e-10);
  }
}

TEST_P(DualitySetup, VertexIsoPreservesBracketAndInverts) {
  SplitMix64 rng(2);
  const int n = g.n();
  const auto x = make_vertex_element(*d, p, rng.normal_vector(g.nl()), rng.normal_vector(g.nm()));
  const auto y = make_vertex_element(*d, p, rng.normal_vector(g.nl()), rng.normal_vector(g.nm()));
  const auto px = vertex_iso(*d, l, p, x), py = vertex_iso(*d, l, p, y);
  const auto pb = vertex_iso(*d, l, p, vertex_bracket(*d, l, p, x, y));
  EXPECT_LE((pb.in_double(n) - d->bracket(px.in_double(n), py.in_double(n))).norm(), 1e-9);
  EXPECT_LE((vertex_iso_inv(*d, p, px).in_double(n) - x.in_double(n)).norm(), 1e-10);
}

TEST_P(DualitySetup, FlatnessAndLemma) {
  const FlatnessResiduals fr = flatness_residual(*d, l, p);
  EXPECT_LE(fr.flat1, 1e-9);
  EXPECT_LE(fr.flat2, 1e-9);
  EXPECT_LE(fr.lemma_uh, 1e-10);
}

TEST_P(DualitySetup, TrivializationFormsAgreeAndReduceAtOrigin) {
  SplitMix64 rng(3);
  const int n = g.n(), nl = g.nl(), nm = g.nm();
  VecD x0 = VecD::Zero(2 * n);
  x0.head(nl) = rng.normal_vector(nl);
  x0.tail(nm) = rng.normal_vector(nm);
  const VecD alpha = rng.normal_vector(nl);
  const NUElement a = trivialize(*d, p, alpha, x0), b = trivialize_with_l(*d, l, p, alpha, x0);
  EXPECT_LE((a.z - b.z).norm(), 1e-10);
  EXPECT_LE((a.xi - b.xi).norm(), 1e-10);
  const VecD zero = VecD::Zero(nl);
  const NUElement t0 = trivialize(*d, zero, alpha, x0);
  EXPECT_LE((t0.z + x0.head(nl)).norm(), 1e-15);
  VecD expected = d->s_embed(alpha).tail(n) - x0.tail(n);
  EXPECT_LE((t0.xi - expected).norm(), 1e-15);
}

TEST_P(DualitySetup, TrivializationIsAlgebroidMorphism) {
  SplitMix64 rng(4);
  const SectionPoly s1 = random_section(*d, 2, rng), s2 = random_section(*d, 2, rng);
  EXPECT_LE(algebroid_morphism_residual(*d, l, s1, s2, p).max(), 1e-8);
  EXPECT_GT(algebroid_morphism_residual(*d, l, s1, s2, p, true).max(), 1e-2);
}

TEST_P(DualitySetup, DoubleDualIsOpposite) {
  const DualData dd = dual_over_l(g);
  EXPECT_LE(dd.iso_residual, 1e-12);
  EXPECT_LE(tensor_distance(dual_over_l(dd.gstar).gstar, opposite(g)), 1e-10);
}

TEST_P(DualitySetup, LinkAndFunctoriality) {
  const LinkResult r = link_residual(g, p);
  EXPECT_LE(r.link, 1e-8);
  EXPECT_LE(r.functoriality, 1e-9);
  EXPECT_LE(r.cocycle_consistency, 1e-10);
}

TEST_P(DualitySetup, RmxRelationHoldsWithMinusSign) {
  const RmxRelation r = rmx_relation(g);
  EXPECT_LE(r.minus, 1e-12);
  EXPECT_NEAR(r.plus, 1.0, 1e-12);
}

TEST_P(DualitySetup, DoubleBidynTwistKillsCobracket) {
  const DoubleBidyn b = double_bidyn(g);
  EXPECT_TRUE(b.g2.bidynamical);
  const QuasiBialgebra tw = twist(b.g2, MatD(-b.rmx));
  for (const MatD& w : tw.w) EXPECT_LE(max_abs(w), 1e-12);
}

INSTANTIATE_TEST_SUITE_P(Catalog, DualitySetup, ::testing::ValuesIn(catalog_names()), param_name);

TEST(Duality, NonMemberIsRejected) {
  const QuasiBialgebra g = catalog_get("so3-quadratic-AM");
  const DoubleAlgebra d(g);
  const LEvaluator l = lcan_evaluator(d);
  VecD p(3);
  p << 0.4, 0.1, -0.3;
  VertexElement x = make_vertex_element(d, p, VecD::Unit(3, 0), VecD(0));
  x.xi(1) += 0.5;
  EXPECT_THROW(vertex_bracket(d, l, p, x, x), MembershipError);
}

TEST(Duality, QuadraticCaseIsSelfDual) {
  const QuasiBialgebra g = catalog_get("so3-quadratic-AM");
  EXPECT_LE(tensor_distance(dual_over_l(g).gstar, g), 1e-12);
}

TEST(Duality, NonBidynamicalDualIsRefused) {
  QuasiBialgebra g = catalog_get("sl2-cartan");
  g.w[0](1, 2) = 0.5;
  g.w[0](2, 1) = -0.5;
  EXPECT_THROW(dual_over_l(g), NotBidynamical);
}

TEST(Duality, EvDualEntryIsShiftedCoth) {
  const QuasiBialgebra g = catalog_get("sl2-ev-twist");
  const DoubleAlgebra ds(dual_over_l(g).gstar);
  const double t = 1.0 / std::tanh(0.25);
  for (double p : {0.3, -0.8, 1.5}) {
    const MatD L = lcan_matrix(ds, VecD(VecD::Constant(1, p)));
    EXPECT_NEAR(L(1, 2), 4.0 / (1.0 / std::tanh(-p / 4.0) - t), 1e-12) << p;
    EXPECT_NEAR(L(2, 1), -L(1, 2), 1e-15);
  }
}

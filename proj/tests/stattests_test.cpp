#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "bobench/rng.hpp"
#include "bobench/stattests.hpp"

namespace bobench {
namespace {

using V = std::vector<double>;

TEST(Midranks, Ties) {
  EXPECT_EQ(midranks(V{3, 1, 2}), (V{3, 1, 2}));
  EXPECT_EQ(midranks(V{1, 1, 2, 2, 2}), (V{1.5, 1.5, 4, 4, 4}));
}

TEST(MannWhitneyExact, Enumeration) {
  // Only one of C(6,3) = 20 rank assignments puts {4,5,6} on the b side.
  EXPECT_DOUBLE_EQ(mann_whitney_exact(V{4, 5, 6}, V{1, 2, 3}), 1.0 / 20.0);
  EXPECT_DOUBLE_EQ(mann_whitney_exact(V{1, 2, 3}, V{4, 5, 6}), 1.0);
  EXPECT_DOUBLE_EQ(mann_whitney_exact(V{2}, V{1}), 0.5);
  EXPECT_DOUBLE_EQ(mann_whitney_exact(V{1}, V{2}), 1.0);
  EXPECT_GE(mann_whitney_exact(V{1, 1}, V{1, 1}), 0.5);
  EXPECT_THROW(mann_whitney_exact(V(8, 1.0), V(7, 2.0)), std::invalid_argument);
}

TEST(MannWhitney, SeparatedSamples) {
  TestOutcome r = mann_whitney(V{1, 2, 3}, V{4, 5, 6}, 0.05);
  EXPECT_EQ(r.u_a, 0.0);
  EXPECT_EQ(r.u_b, 9.0);
  // z = (9 - 4.5 - 0.5) / sqrt(5.25)
  EXPECT_NEAR(r.p_b_greater, 1.0 - normal_cdf(4.0 / std::sqrt(5.25)), 1e-15);
  EXPECT_EQ(r.direction, Direction::BGreater);
  TestOutcome s = mann_whitney(V{4, 5, 6}, V{1, 2, 3}, 0.05);
  EXPECT_EQ(s.u_a, 9.0);
  EXPECT_EQ(s.u_b, 0.0);
  EXPECT_EQ(s.direction, Direction::AGreater);
}

TEST(MannWhitney, AllTied) {
  TestOutcome r = mann_whitney(V{1, 1, 1}, V{1, 1, 1}, 0.05);
  EXPECT_EQ(r.direction, Direction::NoDifference);
  EXPECT_EQ(r.p_one_sided, 0.5);
  EXPECT_EQ(r.u_a + r.u_b, 9.0);
}

TEST(MannWhitney, Errors) {
  EXPECT_THROW(mann_whitney(V{}, V{1}, 0.05), std::invalid_argument);
  EXPECT_THROW(mann_whitney(V{1}, V{2}, 0.0), std::invalid_argument);
  EXPECT_THROW(mann_whitney(V{1}, V{2}, 0.6), std::invalid_argument);
}

TEST(MannWhitney, WideSeparationAtThirtyIsHighlySignificant) {
  V a, b;
  for (int i = 0; i < 30; ++i) {
    a.push_back(100.0 + i);
    b.push_back(static_cast<double>(i));
  }
  TestOutcome r = mann_whitney(a, b, 0.0005);
  EXPECT_EQ(r.direction, Direction::AGreater);
  EXPECT_LT(r.p_one_sided, 1e-4);
}

TEST(MannWhitney, Properties) {
  Rng rng(77);
  for (int k = 0; k < 500; ++k) {
    V a(2 + rng.below(10)), b(2 + rng.below(10));
    for (double& v : a) v = static_cast<double>(rng.below(5));
    for (double& v : b) v = static_cast<double>(rng.below(5));
    const double alpha = 0.05;
    TestOutcome ab = mann_whitney(a, b, alpha);
    TestOutcome ba = mann_whitney(b, a, alpha);
    EXPECT_DOUBLE_EQ(ab.u_a + ab.u_b, static_cast<double>(a.size() * b.size()));
    EXPECT_EQ(ab.u_a, ba.u_b);
    if (ab.direction == Direction::AGreater) EXPECT_EQ(ba.direction, Direction::BGreater);
    if (ab.direction == Direction::BGreater) EXPECT_EQ(ba.direction, Direction::AGreater);
    if (ab.direction != Direction::NoDifference) EXPECT_LT(ab.p_one_sided, alpha);

    V scaled_a = a, scaled_b = b;
    const double lambda = 0.1 + rng.uniform() * 10.0;
    for (double& v : scaled_a) v *= lambda;
    for (double& v : scaled_b) v *= lambda;
    EXPECT_EQ(mann_whitney(scaled_a, scaled_b, alpha), ab);

    V shifted = a;
    for (double& v : shifted) v += 0.5 + rng.uniform();
    EXPECT_GE(mann_whitney(shifted, b, alpha).u_a, ab.u_a);
  }
}

TEST(WelchT, DirectionAndSymmetry) {
  V a{5.1, 5.3, 4.9, 5.2, 5.0}, b{1.0, 1.2, 0.9, 1.1, 1.05};
  TestOutcome r = welch_t(a, b, 0.01);
  EXPECT_EQ(r.direction, Direction::AGreater);
  EXPECT_EQ(welch_t(b, a, 0.01).direction, Direction::BGreater);
  EXPECT_EQ(welch_t(V{1, 1}, V{1, 1}, 0.01).direction, Direction::NoDifference);
  EXPECT_NEAR(r.p_a_greater + r.p_b_greater, 1.0, 1e-12);
}

TEST(FamilyWiseBound, Values) {
  const double v = family_wise_bound(0.0005, 7);
  EXPECT_NEAR(v, 0.010447665876572559, 1e-15);
  EXPECT_LE(v, 0.0105);
  EXPECT_DOUBLE_EQ(family_wise_bound(0.03, 2), 0.03);
  EXPECT_EQ(family_wise_bound(0.0, 5), 0.0);
}

TEST(NormalFunctions, Values) {
  EXPECT_DOUBLE_EQ(normal_cdf(0.0), 0.5);
  EXPECT_NEAR(normal_pdf(0.0), 0.3989422804014327, 1e-16);
  EXPECT_NEAR(normal_cdf(1.959963984540054), 0.975, 1e-12);
}

}  // namespace
}  // namespace bobench

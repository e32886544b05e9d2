#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "slcyl/verify.hpp"

using namespace slcyl;

namespace {

CVec pt(double x, double y) {
  CVec p(2);
  p.set(0, {x, y});
  p.set(1, {1.0, 0.0});
  return p;
}

const Model& model() {
  static const Model m = Model::make(LawlorParams::normalized({1.0, 1.0, 1.0}), 2, 1.5, 32.0);
  return m;
}

}  // namespace

TEST(Hausdorff, Basics) {
  const std::vector<CVec> a{pt(0, 0), pt(1, 0)};
  const std::vector<CVec> b{pt(0, 0), pt(1, 0), pt(3, 0)};
  EXPECT_EQ(directed_hausdorff(a, b), 0.0);
  EXPECT_DOUBLE_EQ(directed_hausdorff(b, a), 2.0);
  EXPECT_DOUBLE_EQ(hausdorff(a, b), 2.0);
  EXPECT_EQ(hausdorff(a, a), 0.0);
}

TEST(Census, TwoClusters) {
  // two rays at unit distance from the axis, far apart
  std::vector<CVec> pts;
  for (int i = 0; i < 50; ++i) {
    const double x = 1.0 + 0.02 * i;
    pts.push_back(pt(x, 0.0));
    pts.push_back(pt(-x, 0.0));
  }
  const auto c = connectivity_census(pts);
  EXPECT_EQ(c.components, 2u);
  EXPECT_EQ(c.sizes.size(), 2u);
  EXPECT_GT(c.epsilon, 0.0);
}

TEST(Census, SingleChain) {
  std::vector<CVec> pts;
  for (int i = 0; i < 80; ++i) pts.push_back(pt(std::cos(0.05 * i), std::sin(0.05 * i)));
  EXPECT_EQ(connectivity_census(pts).components, 1u);
}

TEST(Census, ConeSlicesAreTwoComponents) {
  CensusGrid grid;
  grid.u_values = {std::ldexp(1.0, -7)};
  grid.directions = 60;
  grid.ratio = 1.3;
  EXPECT_EQ(connectivity_census(census_points_cone(model(), grid)).components, 2u);
}

TEST(Probe, ConeIsItsOwnTangentCone) {
  // exact forward distance; the reverse distance is the sampling resolution
  // and shrinks as the shell sample grows
  const auto& p = model().neck;
  const auto shell_of = [&](std::size_t count) {
    return [&p, count](double rho, std::uint64_t seed) {
      std::vector<CVec> out;
      for (const auto& c : sample_cone_shell(p.n(), rho, 2 * rho, count, seed)) out.push_back(cone_point(p, c));
      return out;
    };
  };
  const std::vector<double> scales{1.0 / 64, 1.0 / 256};
  const auto coarse = tangent_cone_probe(p, shell_of(500), scales, 200, 3);
  const auto fine = tangent_cone_probe(p, shell_of(8000), scales, 200, 3);
  for (std::size_t i = 0; i < scales.size(); ++i) {
    EXPECT_LT(coarse.forward[i], 1e-12);
    EXPECT_LT(fine.forward[i], 1e-12);
    EXPECT_LT(fine.distances[i], 0.7 * coarse.distances[i]);
  }
}

TEST(Probe, RejectsBadScales) {
  EXPECT_ANY_THROW(tangent_cone_probe(model(), {1.0 / 128, 1.0 / 64}, 100, 1));
  EXPECT_ANY_THROW(tangent_cone_probe(model(), {1.0, 1.0 / 64}, 100, 1));
}

TEST(Collapse, X2StaysNearAxis) {
  for (double rho : {1.0 / 128, 1.0 / 1024}) {
    const auto c = x2_collapse(model(), rho, 200, 4);
    EXPECT_GT(c.count, 50u);
    EXPECT_LE(c.max_ratio, 1.0 + 1e-9);
    EXPECT_LE(c.max_rescaled_r, std::pow(2.0, 1.5) * std::sqrt(rho) * (1 + 1e-9));
  }
}

TEST(Suite, RejectsConfig) {
  SuiteConfig bad_a;
  bad_a.a = 1;
  auto r = run_suite(bad_a);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_EQ(r.checks[0].id, 0);
  EXPECT_FALSE(r.all_pass());
  EXPECT_NE(r.checks[0].detail.find("a > 1"), std::string::npos);

  SuiteConfig bad_b;
  bad_b.b = 2.0;
  r = run_suite(bad_b);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_NE(r.checks[0].detail.find("b in (1, a)"), std::string::npos);
}

TEST(Suite, RejectsShallowSweep) {
  SuiteConfig cfg;
  cfg.depth = 20;
  const auto r = run_suite(cfg);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_NE(r.checks[0].detail.find("depth"), std::string::npos);
}

TEST(Suite, SelectedChecksAreDeterministic) {
  SuiteConfig cfg;
  cfg.only = {1, 6, 8};
  const auto r1 = run_suite(cfg), r2 = run_suite(cfg);
  ASSERT_EQ(r1.checks.size(), 3u);
  EXPECT_TRUE(r1.all_pass());
  EXPECT_EQ(r1.json(), r2.json());
  EXPECT_EQ(r1.summary_csv(), r2.summary_csv());
}

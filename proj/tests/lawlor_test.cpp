#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "slcyl/errors.hpp"
#include "slcyl/lawlor.hpp"
#include "slcyl/sphere.hpp"

using namespace slcyl;

namespace {

// 1/4 int dt / sqrt(t^4 + 3t^2 + 3), 30-digit quadrature
constexpr double kA111 = 0.607162661971895403;
// a = (1/2, 1, 1)
constexpr double kA_half = 0.75288811386095646;
// angles of a = (1, 2, 3)
constexpr double kTheta123[3] = {0.64811610307097707, 1.0726858967468448, 1.4207906537719714};

const LawlorParams& sym() {
  static const LawlorParams p({1.0, 1.0, 1.0});
  return p;
}

}  // namespace

TEST(LawlorP, Values) {
  EXPECT_DOUBLE_EQ(sym().P(0.0), 3.0);
  EXPECT_DOUBLE_EQ(sym().P(1.0), 7.0);
  EXPECT_DOUBLE_EQ(sym().P(2.0), 31.0);
}

TEST(LawlorParams, Rejects) {
  EXPECT_THROW(LawlorParams({1.0, 1.0}), ArgumentError);
  EXPECT_THROW(LawlorParams({1.0, 0.0, 1.0}), ArgumentError);
  EXPECT_THROW(LawlorParams::from_target_angles({1.0, 1.0, 1.0}), ArgumentError);
}

TEST(LawlorAngles, Symmetric) {
  for (double t : sym().theta()) EXPECT_NEAR(t, std::numbers::pi / 3, 1e-10);
  EXPECT_NEAR(sym().A(), kA111, 1e-12);
  EXPECT_DOUBLE_EQ(sym().cinf(1), -sym().A());
  EXPECT_DOUBLE_EQ(sym().cinf(2), sym().A());
}

TEST(LawlorAngles, Asymmetric) {
  const auto th = lawlor_angles({1.0, 2.0, 3.0});
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(th[k], kTheta123[k], 1e-10);
  const auto p = LawlorParams::normalized({1.0, 2.0, 3.0});
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(p.theta()[k], kTheta123[k], 1e-10);
  EXPECT_NEAR(LawlorParams({0.5, 1.0, 1.0}).A(), kA_half, 1e-11);
}

TEST(LawlorAngles, TargetRecovery) {
  const auto p = LawlorParams::from_target_angles({0.9, 1.0, 1.2416});
  EXPECT_NEAR(p.theta()[0], 0.9, 1e-9);
  EXPECT_NEAR(p.theta()[1], 1.0, 1e-9);
  EXPECT_NEAR(std::accumulate(p.theta().begin(), p.theta().end(), 0.0), std::numbers::pi, 1e-9);
  EXPECT_NEAR(*std::max_element(p.a().begin(), p.a().end()), 1.0, 1e-14);
}

TEST(LawlorPsi, Ends) {
  const auto p = LawlorParams::normalized({1.0, 2.0, 3.0});
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_NEAR(p.psi(k, -1e6), 0.0, 1e-9);
    EXPECT_NEAR(p.psi(k, 1e6), p.theta()[k], 1e-9);
    EXPECT_NEAR(p.psi(k, 0.7), psi_quadrature(p, k, 0.7), 1e-10);
    EXPECT_NEAR(p.psi(k, -2.5), psi_quadrature(p, k, -2.5), 1e-10);
  }
}

TEST(LawlorBeta, LimitsAndQuadrature) {
  EXPECT_NEAR(sym().beta(-1e7), -kA111, 1e-7);
  EXPECT_NEAR(sym().beta(1e7), kA111, 1e-7);
  for (double y : {-3.0, -0.2, 0.0, 0.4, 5.0}) EXPECT_NEAR(sym().beta(y), beta_quadrature(sym(), y), 1e-10);
}

TEST(LawlorNeck, SpecialLagrangian) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> N;
  std::vector<double> s{N(rng), N(rng), N(rng)};
  const NeckChart c{0.3, normalized(s)};
  EXPECT_NEAR(wrap_angle_mod_pi(lagrangian_angle(neck_frame(sym(), c))), 0.0, 1e-10);
}

TEST(LawlorNeck, AsymptoticToFirstPlane) {
  const NeckChart c{-1e6, {1.0, 0.0, 0.0}};
  const auto z = embed_neck(sym(), c);
  EXPECT_NEAR(std::arg(z.z(0)), 0.0, 1e-9);
}

TEST(LawlorGraph, DecaysToZero) {
  const std::vector<double> s{0.6, 0.0, 0.8};
  const double L = sym().graphical_radius();
  const double g1 = neck_graph_potential(sym(), ConePoint{1, s, L}).g;
  const double g2 = neck_graph_potential(sym(), ConePoint{1, s, 64 * L}).g;
  EXPECT_LT(std::abs(g2), std::abs(g1));
  // g ~ r^{2-n}
  EXPECT_NEAR(g2 / g1, 1.0 / 64, 0.1 / 64);
  EXPECT_THROW(neck_graph_potential(sym(), ConePoint{1, s, 0.5 * L}), DomainError);
}

TEST(LawlorGraph, GradientDecayRate) {
  const auto dirs = sphere_points(3, 128);
  const double L = sym().graphical_radius();
  std::vector<double> lr, ls;
  for (int k = 0; k <= 6; ++k) {
    double sup = 0.0;
    for (int m = 1; m <= 2; ++m)
      for (const auto& s : dirs)
        sup = std::max(sup, neck_graph_potential(sym(), ConePoint{m, s, L * std::ldexp(1.0, k)}).grad.norm());
    lr.push_back(std::log(L * std::ldexp(1.0, k)));
    ls.push_back(std::log(sup));
  }
  const double slope = (ls.back() - ls.front()) / (lr.back() - lr.front());
  EXPECT_NEAR(slope, -2.0, 0.1);
}

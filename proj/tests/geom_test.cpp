#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "slcyl/errors.hpp"
#include "slcyl/geom.hpp"
#include "slcyl/quadrature.hpp"

using namespace slcyl;

namespace {

CVec basis(std::size_t dim, std::size_t idx) {
  std::vector<double> c(2 * dim, 0.0);
  c[idx] = 1.0;
  return CVec(dim, c);
}

}  // namespace

TEST(Symplectic, Pairings) {
  EXPECT_DOUBLE_EQ(symplectic_form(basis(2, 0), basis(2, 1)), 1.0);
  EXPECT_DOUBLE_EQ(symplectic_form(basis(2, 0), basis(2, 2)), 0.0);
  std::mt19937_64 rng(7);
  std::normal_distribution<double> N;
  std::vector<double> c(6);
  for (double& x : c) x = N(rng);
  const CVec v(3, c);
  EXPECT_DOUBLE_EQ(symplectic_form(v, v), 0.0);
}

TEST(Liouville, Evaluations) {
  EXPECT_DOUBLE_EQ(liouville_form(basis(1, 0), basis(1, 1)), 0.5);
  EXPECT_DOUBLE_EQ(liouville_form(CVec(1), basis(1, 1)), 0.0);
}

TEST(LagrangianAngle, RealBasisIsZero) {
  std::vector<CVec> v;
  for (std::size_t j = 0; j < 4; ++j) v.push_back(basis(4, 2 * j));
  EXPECT_NEAR(lagrangian_angle(Frame(v)), 0.0, 1e-15);
}

TEST(LagrangianAngle, PlanePairSumsToPi) {
  const double th[3] = {0.9, 1.0, std::numbers::pi - 1.9};
  std::vector<CVec> v;
  for (std::size_t k = 0; k < 3; ++k) {
    CVec e(4);
    e.set(k, std::polar(1.0, th[k]));
    v.push_back(e);
  }
  v.push_back(basis(4, 6));
  EXPECT_NEAR(wrap_angle_mod_pi(lagrangian_angle(Frame(v))), 0.0, 1e-12);
}

TEST(LagrangianAngle, PhaseShift) {
  const double alpha = 0.4;
  std::vector<CVec> v;
  for (std::size_t j = 0; j < 3; ++j) v.push_back(basis(3, 2 * j));
  v[1].set(1, std::polar(1.0, alpha));
  EXPECT_NEAR(lagrangian_angle(Frame(v)), alpha, 1e-14);
}

TEST(LagrangianAngle, DegenerateFrameThrows) {
  std::vector<CVec> v{basis(2, 0), basis(2, 0)};
  EXPECT_THROW(lagrangian_angle(Frame(v)), DegenerateFrameError);
}

TEST(PullbackResidual, FlatPlaneIsZero) {
  const ChartMap plane = [](std::span<const double> p) {
    CVec q(2);
    q.set(0, {p[0], 0.0});
    q.set(1, {p[1], 0.0});
    return q;
  };
  const double p[2] = {0.3, -0.7};
  EXPECT_LE(pullback_residual(plane, p, 1e-3), 1e-14);
}

TEST(PullbackResidual, NonClosedFormIsPositive) {
  // graph of y1 dx2 over R^2
  const ChartMap graph = [](std::span<const double> p) {
    CVec q(2);
    q.set(0, {p[0], 0.0});
    q.set(1, {p[1], p[0]});
    return q;
  };
  const double p[2] = {0.2, 0.5};
  const double r1 = pullback_residual(graph, p, 1e-2), r2 = pullback_residual(graph, p, 1e-4);
  EXPECT_GT(r1, 0.1);
  EXPECT_NEAR(r1, r2, 1e-8);
}

TEST(FdJet, Polynomial) {
  const ScalarField f = [](std::span<const double> x) { return x[0] * x[0]; };
  const double p[1] = {0.0};
  const auto j = fd_jet(f, p, 2, 1e-3);
  EXPECT_NEAR(j.hessian(0, 0), 2.0, 1e-8);
  EXPECT_NEAR(j.gradient(0), 0.0, 1e-12);
}

TEST(FdJet, ConstantHasNoDerivatives) {
  const ScalarField f = [](std::span<const double>) { return 3.5; };
  const double p[2] = {1.0, 2.0};
  const auto j = fd_jet(f, p, 3, 1e-2);
  EXPECT_DOUBLE_EQ(j.value, 3.5);
  EXPECT_EQ(j.gradient.norm(), 0.0);
  EXPECT_EQ(j.hessian.norm(), 0.0);
  for (const auto& t : j.third) EXPECT_EQ(t.norm(), 0.0);
}

TEST(FdJet, DomainViolationThrows) {
  const ScalarField f = [](std::span<const double> x) { return std::sqrt(x[0]); };
  const DomainPredicate pos = [](std::span<const double> x) { return x[0] > 0.0; };
  const double p[1] = {1e-4};
  EXPECT_THROW(fd_jet(f, p, 1, 1e-3, pos), DomainError);
}

TEST(Quadrature, InfiniteRange) {
  const auto r = integrate([](double t) { return 1.0 / (1.0 + t * t); }, -INFINITY, INFINITY);
  EXPECT_NEAR(r.value, std::numbers::pi, 1e-12);
}

TEST(Richardson, RemovesLeadingTerm) {
  const auto est = [](double h) { return 1.0 + 3.0 * h * h; };
  EXPECT_NEAR(richardson(est(0.1), est(0.05)), 1.0, 1e-14);
}

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "slcyl/assembly.hpp"
#include "slcyl/errors.hpp"
#include "slcyl/sampling.hpp"
#include "slcyl/sphere.hpp"

using namespace slcyl;

namespace {

const Model& model() {
  static const Model m = Model::make(LawlorParams::normalized({1.0, 1.0, 1.0}), 2, 1.5, 32.0);
  return m;
}

const std::vector<double> kSigma{0.6, 0.0, 0.8};

}  // namespace

TEST(Profile, Rejects) {
  EXPECT_THROW(SmoothingProfile::make(1, 1.5, 4.0, 32.0), ArgumentError);
  EXPECT_THROW(SmoothingProfile::make(2, 2.0, 4.0, 32.0), ArgumentError);
  EXPECT_THROW(SmoothingProfile::make(2, 1.0, 4.0, 32.0), ArgumentError);
}

TEST(Cutoff, Endpoints) {
  const Cutoff chi;
  EXPECT_EQ(chi.value(1.0), 1.0);
  EXPECT_EQ(chi.value(0.5), 1.0);
  EXPECT_EQ(chi.value(2.0), 0.0);
  EXPECT_NEAR(chi.value(1.5), 0.5, 1e-15);
  EXPECT_EQ(chi.d1(0.9), 0.0);
}

TEST(Embedding, UnitSlice) {
  const NeckChart c{0.4, kSigma};
  const auto p = embed_X0(model().neck, 2, c, 1.0);
  const auto q = embed_neck(model().neck, c);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(p.z(k), q.z(k));
  EXPECT_EQ(p.z(3), cplx(1.0, 0.0));
}

TEST(Embedding, X0IsNotLagrangian) {
  const ChartMap f = [](std::span<const double> q) {
    return embed_X0(model().neck, 2, NeckChart{q[0], normalized({q[1], q[2], 1.0})}, q[3]);
  };
  const double p[4] = {0.3, 0.2, -0.1, 0.5};
  const double r1 = pullback_residual(f, p, 1e-3), r2 = pullback_residual(f, p, 5e-4);
  EXPECT_GT(r2, 1e-3);
  EXPECT_NEAR(r1, r2, 0.05 * r2);
}

TEST(Embedding, X2IsLagrangian) {
  const ChartMap f = [](std::span<const double> q) {
    return embed_X2(model().neck, 2, NeckChart{q[0], normalized({q[1], q[2], 1.0})}, q[3]);
  };
  const double p[4] = {0.3, 0.2, -0.1, 0.5};
  EXPECT_LT(pullback_residual(f, p, 1e-4), 1e-6);
}

TEST(Embedding, ClosedFormAngle) {
  const NeckChart c{-0.7, kSigma};
  for (double u : {0.02, -0.1, 0.3}) {
    const double raw = x2_angle_raw(model().neck, 2, c, u);
    const double closed = x2_angle_closed(model().neck, 2, c, u);
    EXPECT_NEAR(wrap_angle_mod_pi(raw - closed), 0.0, 1e-10);
  }
}

TEST(Potential, VanishesAtAxisSlice) {
  EXPECT_EQ(potential_G(model(), CylinderPoint{1, kSigma, 0.3, 0.0}), 0.0);
}

TEST(Potential, FarFieldLimit) {
  const double u = 0.01;
  const double G = potential_G(model(), CylinderPoint{2, kSigma, 1e4 * std::pow(u, 2), u});
  EXPECT_NEAR(G / std::pow(u, 4), -model().neck.cinf(2), 1e-3);
}

TEST(Interpolant, BandEnds) {
  const double u = 1.0 / 64;
  const double ub = std::pow(u, 1.5);
  const CylinderPoint lo{1, kSigma, ub, u}, hi{1, kSigma, 2 * ub, u};
  EXPECT_NEAR(interpolant_I(model(), lo), potential_G(model(), lo), 1e-18);
  EXPECT_NEAR(interpolant_I(model(), hi), eval_phi(model().phi, 1, 2 * ub, u, 0).value, 1e-18);
  EXPECT_THROW(interpolant_I(model(), CylinderPoint{1, kSigma, 3 * ub, u}), DomainError);
}

TEST(GraphOverPlanes, ZeroIsIdentity) {
  const PotentialField zero = [](int, const Eigen::VectorXd& x, double) {
    CartesianJet j;
    j.grad = Eigen::VectorXd::Zero(x.size() + 1);
    return j;
  };
  const CylinderPoint p{2, kSigma, 0.4, -0.2};
  EXPECT_LT(distance(graph_over_plane_pair(model().neck, zero, p), cone_point(model().neck, p)), 1e-15);
  EXPECT_THROW(graph_over_plane_pair(model().neck, zero, p, ConeKind::General), UnsupportedConeError);
}

TEST(GraphOverPlanes, PhiGraphIsLagrangian) {
  const PotentialField f = [](int m, const Eigen::VectorXd& x, double u) {
    return eval_phi_cartesian(model().phi, m, x, u);
  };
  const ChartMap F = [&](std::span<const double> q) {
    const Eigen::Vector3d x(q[0], q[1], q[2]);
    return graph_over_plane_pair(model().neck, f, CylinderPoint{2, normalized({q[0], q[1], q[2]}), x.norm(), q[3]});
  };
  const double p[4] = {0.01, 0.005, -0.003, 0.01};
  EXPECT_LT(pullback_residual(F, p, 1e-4), 1e-7);
}

TEST(Assembly, Regions) {
  EXPECT_EQ(assemble_X(model(), CylinderPoint{1, kSigma, 0.01, 0.0}).region, Region::X1);
  const double u = 1.0 / 64, ub = std::pow(u, 1.5);
  EXPECT_EQ(assemble_X(model(), CylinderPoint{1, kSigma, 1.5 * ub, u}).region, Region::Band);
  EXPECT_EQ(assemble_X(model(), CylinderPoint{1, kSigma, 0.7 * ub, u}).region, Region::X2);
  EXPECT_THROW(assemble_X(model(), CylinderPoint{1, kSigma, 1e-6, u}), DomainError);
  EXPECT_THROW(assemble_X(model(), CylinderPoint{1, kSigma, 0.05, 0.0}), DomainError);
}

TEST(Assembly, ContinuousAcrossBand) {
  const double u = 1.0 / 64, ub = std::pow(u, 1.5);
  for (double t : {1.0, 2.0}) {
    const auto a = assemble_X(model(), CylinderPoint{1, kSigma, t * ub * (1 - 1e-9), u}).point;
    const auto b = assemble_X(model(), CylinderPoint{1, kSigma, t * ub * (1 + 1e-9), u}).point;
    EXPECT_LT(distance(a, b), 1e-8 * ub);
  }
}

TEST(Cancellation, ConstantCancels) {
  const double g5 = cancellation_gap(model(), std::ldexp(1.0, -5));
  const double g10 = cancellation_gap(model(), std::ldexp(1.0, -10));
  EXPECT_LT(g10, 0.2 * g5);
}

TEST(Cancellation, UncancelledControlDoesNotDecay) {
  const double c5 = cancellation_gap(model(), std::ldexp(1.0, -5), 64, true);
  const double c10 = cancellation_gap(model(), std::ldexp(1.0, -10), 64, true);
  EXPECT_GT(c10, 0.5 * c5);
  EXPECT_GT(c10, 0.1);
}

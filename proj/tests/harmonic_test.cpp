#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "slcyl/geom.hpp"
#include "slcyl/harmonic.hpp"

using namespace slcyl;

TEST(HarmonicCoeffs, Oracles) {
  EXPECT_EQ(harmonic_coeffs(1, 3), (std::vector<Rational>{Rational(-1, 3)}));
  EXPECT_EQ(harmonic_coeffs(2, 3), (std::vector<Rational>{Rational(-2), Rational(1, 5)}));
  EXPECT_EQ(harmonic_coeffs(2, 4), (std::vector<Rational>{Rational(-3, 2), Rational(1, 8)}));
}

TEST(HarmonicCoeffs, ExactLaplacianVanishes) {
  for (int a = 1; a <= 8; ++a)
    for (int n = 3; n <= 6; ++n) EXPECT_TRUE(cylinder_laplacian(phi_polynomial(a, n), n).is_zero()) << a << ' ' << n;
}

TEST(HarmonicPhi, ExactValue) {
  const auto poly = HarmonicPoly::make(2, 3, {1.0, 1.0});
  EXPECT_EQ(eval_phi_exact(poly, Rational(1), Rational(1), Rational(1)), Rational(4, 5));
  EXPECT_NEAR(eval_phi(poly, 1, 1.0, 1.0, 0).value, 0.8, 1e-15);
}

TEST(HarmonicPhi, PlaneMode) {
  const auto p = HarmonicPoly::plane_mode(3);
  EXPECT_EQ(p.a, 1);
  EXPECT_NEAR(eval_phi(p, 1, 3.0, 2.0, 0).value, 4.0 - 3.0, 1e-14);
}

TEST(HarmonicPhi, FiniteDifferenceLaplacian) {
  const auto poly = HarmonicPoly::make(3, 3, {-0.6, 0.6});
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  for (int t = 0; t < 10; ++t) {
    const double p[4] = {U(rng), U(rng), U(rng), U(rng)};
    const ScalarField f = [&](std::span<const double> q) {
      return eval_phi_cartesian(poly, 1, Eigen::Vector3d(q[0], q[1], q[2]), q[3]).value;
    };
    const double r1 = fd_jet(f, p, 2, 1e-2).hessian.trace();
    const double r2 = fd_jet(f, p, 2, 5e-3).hessian.trace();
    EXPECT_LT(std::abs(r2), 1e-3);
    if (std::abs(r1) > 1e-9) EXPECT_NEAR(r1 / r2, 4.0, 0.5);
  }
}

TEST(HarmonicPhi, CartesianMatchesPolar) {
  const auto poly = HarmonicPoly::make(2, 3, {-0.6, 0.6});
  const Eigen::Vector3d x(0.3, -0.4, 0.0);
  const auto j = eval_phi_cartesian(poly, 2, x, 0.7);
  const auto q = eval_phi(poly, 2, 0.5, 0.7, 2);
  EXPECT_NEAR(j.value, q.value, 1e-14);
  EXPECT_NEAR(j.grad[3], q.u, 1e-14);
  EXPECT_NEAR(j.grad.head(3).norm(), std::abs(q.r), 1e-14);
  EXPECT_NEAR(j.hess.trace(), 0.0, 1e-12);
}

TEST(DegreeSet, GapIsEmpty) {
  for (int n = 3; n <= 6; ++n) {
    EXPECT_TRUE(degree_set(LinkSpec{n, LinkKind::UnitSphere, {}}, 2.0 - n, 0.0).empty());
    EXPECT_TRUE(degree_set(LinkSpec{n, LinkKind::PairOfUnitSpheres, {}}, 2.0 - n, 0.0).empty());
  }
  EXPECT_TRUE(degree_set(LinkSpec{3, LinkKind::UnitSphere, {}}, -1.0, 0.0).empty());
}

TEST(DegreeSet, QuadraticRoots) {
  const auto ds = degree_set(LinkSpec{3, LinkKind::ExplicitEigenvalues, {2.0}}, -10.0, 10.0);
  ASSERT_EQ(ds.size(), 2u);
  EXPECT_NEAR(ds[0].d, -2.0, 1e-14);
  EXPECT_NEAR(ds[1].d, 1.0, 1e-14);
}

TEST(DegreeSet, SphereMultiplicity) {
  EXPECT_EQ(sphere_multiplicity(0, 3), 1u);
  EXPECT_EQ(sphere_multiplicity(1, 3), 3u);
  EXPECT_EQ(sphere_multiplicity(2, 3), 5u);
  EXPECT_EQ(sphere_multiplicity(2, 4), 9u);
}

#include <cmath>

#include <gtest/gtest.h>

#include "slcyl/errors.hpp"
#include "slcyl/weighted.hpp"

using namespace slcyl;

namespace {

const LawlorParams& neck() {
  static const LawlorParams p = LawlorParams::normalized({1.0, 1.0, 1.0});
  return p;
}

}  // namespace

TEST(WeightSpec, Rejects) {
  EXPECT_THROW((WeightSpec{3, 0.5, 0.0, 0.0}.validate()), ArgumentError);
  EXPECT_THROW((WeightSpec{0, 1.0, 0.0, 0.0}.validate()), ArgumentError);
  EXPECT_NO_THROW((WeightSpec{2, 0.5, 1.0, -1.0}.validate()));
}

TEST(BoxedNorm, ConstantField) {
  const auto one = cone_sampler(neck(), [](const std::vector<double>&, double, double) { return 1.0; });
  for (const RegionBox box : {RegionBox{0.01, 0.02}, RegionBox{0.1, 0.1}, RegionBox{0.001, 0.3}}) {
    const auto n = boxed_norm(one, box, WeightSpec{0, 0.5, 0.0, 0.0}, 32, 5);
    ASSERT_FALSE(n.empty);
    EXPECT_NEAR(n.value, 1.0, 1e-12);
  }
}

TEST(BoxedNorm, WeightScaling) {
  const auto one = cone_sampler(neck(), [](const std::vector<double>&, double, double) { return 1.0; });
  const RegionBox box{0.01, 0.04};
  const auto n = boxed_norm(one, box, WeightSpec{0, 0.5, 1.0, -1.0}, 16, 5);
  EXPECT_NEAR(n.value, std::pow(0.01, 1.0) * std::pow(0.04, -2.0), 1e-9);
}

TEST(BoxedNorm, RadialPowerIsBounded) {
  // r^2 on C x R: R^{-2} |r^2| stays in [1, 4] on every box, derivatives scale the same way
  const auto f = cone_sampler(neck(), [](const std::vector<double>&, double r, double) { return r * r; });
  for (const RegionBox box : {RegionBox{0.01, 0.02}, RegionBox{1e-4, 0.05}}) {
    const auto n = boxed_norm(f, box, WeightSpec{2, 0.5, 2.0, 2.0}, 32, 9);
    EXPECT_GT(n.value, 1.0);
    EXPECT_LT(n.value, 30.0);
  }
}

TEST(Sweep, ConstantFieldSupIsOne) {
  const auto one = cone_sampler(neck(), [](const std::vector<double>&, double, double) { return 1.0; });
  const auto s = dyadic_sweep(one, WeightSpec{0, 0.5, 0.0, 0.0}, 32.0, 10, 16, 1);
  EXPECT_FALSE(s.rows.empty());
  EXPECT_NEAR(s.sup, 1.0, 1e-12);
  for (const auto& row : s.rows) EXPECT_LT(2.0 * row.S, 1.0 / 32.0);
}

TEST(ExponentFit, ExactPowerLaw) {
  std::vector<std::pair<double, double>> pts;
  for (double x : {1.0, 2.0, 4.0, 8.0, 16.0}) pts.emplace_back(x, x * x);
  const auto f = exponent_fit(pts);
  EXPECT_NEAR(f.slope, 2.0, 1e-12);
  EXPECT_NEAR(f.r2, 1.0, 1e-12);
  for (auto& p : pts) p.second = 3.0;
  EXPECT_NEAR(exponent_fit(pts).slope, 0.0, 1e-12);
}

TEST(ExponentFit, Rejects) {
  EXPECT_THROW(exponent_fit({{1.0, 1.0}, {2.0, 2.0}, {3.0, 3.0}}), ArgumentError);
  EXPECT_THROW(exponent_fit({{1.0, 1.0}, {2.0, 0.0}, {3.0, 3.0}, {4.0, 1.0}}), ArgumentError);
}

TEST(Feasibility, Rejects) {
  const Model m = Model::make(neck(), 2, 1.5, 32.0);
  EXPECT_THROW(weight_feasibility(m, 3.9, -0.1, {32, 64, 128, 256}, 10, 8, 1), ArgumentError);
  EXPECT_THROW(weight_feasibility(m, 4.1, -1.5, {32, 64, 128, 256}, 10, 8, 1), ArgumentError);
}

TEST(Feasibility, DepthMustReachWaist) {
  const Model m = Model::make(neck(), 2, 1.5, 32.0);
  EXPECT_THROW(weight_feasibility(m, 4.1, -0.1, {32, 64, 128, 256}, 17, 8, 1), ArgumentError);
}

#pragma once

// Doubly weighted Hoelder norms on dyadic boxes
//   Omega_{R,S} = {r in (R, 2R), rho in (S, 2S)},
//   |nu|_{k,beta,delta,tau} = sup_{R,S} R^{-tau} S^{tau-delta} |nu|_{C^{k,beta}(Omega_{R,S}, R^{-2} g)}.

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "slcyl/assembly.hpp"
#include "slcyl/geom.hpp"

namespace slcyl {

struct RegionBox {
  double R = 1.0;
  double S = 1.0;
};

struct WeightSpec {
  int k = 0;
  double beta = 0.5;
  double delta = 0.0;
  double tau = 0.0;
  void validate() const;
};

/// A sample point with a chart around it. Chart coordinates are scaled so
/// that unit chart steps move the ambient point by roughly unit length.
struct LocalChart {
  ChartMap embed;
  /// Field in the same chart coordinates; throws DomainError off its domain.
  ScalarField field;
  std::vector<double> p;
};

using BoxSampler = std::function<std::vector<LocalChart>(const RegionBox&, std::size_t, std::uint64_t)>;

struct BoxNorm {
  double value = 0.0;
  bool empty = true;
  std::size_t samples = 0;
  std::size_t pairs = 0;
  /// sup |nu|, R sup |grad nu|, R^2 sup |hess nu| and the Hoelder term, unweighted.
  double sup0 = 0.0, sup1 = 0.0, sup2 = 0.0, holder = 0.0;
};

/// Weighted C^{k,beta} norm on one box. The Hoelder seminorm is a lower-bound
/// estimate from 64 point pairs at rescaled distances in [0.1, 1].
BoxNorm boxed_norm(const BoxSampler& sampler, const RegionBox& box, const WeightSpec& spec,
                   std::size_t samples, std::uint64_t seed);

struct SweepRow {
  double R = 0.0, S = 0.0;
  BoxNorm norm;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  double sup = 0.0;
  /// sup over boxes inside rho < 1/A, i.e. 2S <= 1/A.
  double sup_within(double A) const;
};

/// Boxes (R, S) = (2^-i, 2^-j) with 2S < 1/A, R <= 4S and both >= 2^-depth.
SweepResult dyadic_sweep(const BoxSampler& sampler, const WeightSpec& spec, double A, int depth,
                         std::size_t samples, std::uint64_t seed);

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t n_points = 0;
};

/// Least squares of log(value) against log(scale). Needs >= 4 pairs, values > 0.
FitResult exponent_fit(const std::vector<std::pair<double, double>>& pairs);

/// Sampler of theta_X on X.
BoxSampler theta_sampler(const Model& model);

/// Sampler of a field nu(sigma, r, u) on the model C x R (both planes).
BoxSampler cone_sampler(const LawlorParams& params,
                        std::function<double(const std::vector<double>&, double, double)> field);

struct FeasibilityReport {
  double delta = 0.0, tau = 0.0;
  std::vector<double> A_list;
  /// sup of r^{tau-2} rho^{delta-tau} over sampled X points with rho < 1/A
  std::vector<double> weight_sup;
  /// sup over boxes of |theta_X|_{0,beta} / (R^{tau-2} S^{delta-tau})
  std::vector<double> angle_ratio_sup;
  FitResult weight_fit;
  FitResult angle_fit;
  /// kappa = -slope of the fits against A
  double weight_kappa = 0.0;
  double angle_kappa = 0.0;
};

/// Requires delta > 2a, tau in (2-n, 0] and depth >= a log2(2 max A).
FeasibilityReport weight_feasibility(const Model& model, double delta, double tau,
                                     const std::vector<double>& A_list, int depth, std::size_t samples,
                                     std::uint64_t seed);

std::string sweep_csv(const SweepResult& sweep);
std::string fit_json(const FitResult& fit);

}  // namespace slcyl

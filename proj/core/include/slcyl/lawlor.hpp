#pragma once

// Lawlor necks: the exact special Lagrangian smoothing L of a transverse pair
// of special Lagrangian planes P1 = R^n and P2 = diag(e^{i theta_k}) R^n.
//
//   z_k = sigma_k sqrt(1/a_k + y^2) exp(i psi_k(y)),   sigma in S^{n-1}, y in R
//   P(t) = (prod_k (1 + a_k t^2) - 1) / t^2
//   psi_k(y) = a_k int_{-inf}^y dt / ((1 + a_k t^2) sqrt(P(t)))
//
// End m = 1 is y -> -inf (asymptotic to P1), end m = 2 is y -> +inf.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "slcyl/geom.hpp"

namespace slcyl {

struct NeckChart {
  double y = 0.0;
  std::vector<double> sigma;
};

struct ConePoint {
  int m = 1;
  std::vector<double> sigma;
  double r = 1.0;
};

/// Potential g of L as a graph over the plane P_m, in coordinates of P_m.
struct GraphPotential {
  double g = 0.0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  /// Neck chart of the graph point x + i grad g.
  NeckChart chart;
};

namespace detail {
struct NeckTables;
}

class LawlorParams {
 public:
  /// Raw parameters, no rescaling. Requires n >= 3 and every a_k > 0.
  explicit LawlorParams(std::vector<double> a);

  /// Rescales a so that max a_k = 1, i.e. dist(0, L) = 1.
  static LawlorParams normalized(std::vector<double> a);

  /// Solves for a (normalized) whose angles are `theta`. The angles must lie in
  /// (0, pi) and sum to pi within 1e-3; the first n-1 are matched and the last
  /// follows from the angle sum.
  static LawlorParams from_target_angles(const std::vector<double>& theta);

  std::size_t n() const noexcept { return a_.size(); }
  const std::vector<double>& a() const noexcept { return a_; }
  const std::vector<double>& theta() const noexcept { return theta_; }
  /// A = 1/4 int dt / sqrt(P).
  double A() const noexcept { return A_; }
  /// Liouville limit at end m: c_1 = -A, c_2 = +A.
  double cinf(int m) const;
  /// Phase offset of the plane P_m on axis k (0 for m = 1, theta_k for m = 2).
  double plane_phase(int m, std::size_t k) const;

  double P(double x) const;
  double psi(std::size_t k, double y) const;
  /// theta_k - psi_k(y), accurate for large positive y.
  double psi_tail(std::size_t k, double y) const;
  double psi_prime(std::size_t k, double y) const;
  /// Liouville potential, balanced so the end limits are -A and +A.
  double beta(double y) const;
  double beta_prime(double y) const;

  /// Smallest power of two R >= 1 with |grad g| < 0.05 on a 512-point sphere
  /// sample at radius R, over both ends. Computed once and cached.
  double graphical_radius() const;

 private:
  std::vector<double> a_;
  std::vector<double> theta_;
  double A_ = 0.0;
  std::shared_ptr<const detail::NeckTables> tables_;

  friend GraphPotential graph_potential_unchecked(const LawlorParams&, int, const Eigen::VectorXd&,
                                                  bool);
};

/// Angles theta_k by direct adaptive quadrature, without building tables.
std::vector<double> lawlor_angles(const std::vector<double>& a);

double poly_P(const LawlorParams& params, double x);
double psi(const LawlorParams& params, std::size_t k, double y);
/// psi_k by adaptive quadrature on the original integral (reference path).
double psi_quadrature(const LawlorParams& params, std::size_t k, double y);
double beta_L(const LawlorParams& params, double y);
/// beta_L by adaptive quadrature on the original integral (reference path).
double beta_quadrature(const LawlorParams& params, double y);
std::array<double, 2> c_infinity(const LawlorParams& params);

CVec embed_neck(const LawlorParams& params, const NeckChart& c);

/// Analytic tangent frame at a chart: d/dy followed by the sphere directions
/// of sphere_tangent_basis(sigma).
Frame neck_frame(const LawlorParams& params, const NeckChart& c);

/// (g, grad g, Hess g) of end m over x = r sigma. Throws DomainError when
/// r < graphical_radius().
GraphPotential neck_graph_potential(const LawlorParams& params, const ConePoint& p);

/// Same, in plane coordinates x, without the radius check. Throws DomainError
/// if x is not covered by the graph.
GraphPotential graph_potential_unchecked(const LawlorParams& params, int m,
                                         const Eigen::VectorXd& x, bool with_hessian);

/// Neck point over plane P_m (ambient coordinates) for a graph potential result.
CVec graph_point(const LawlorParams& params, int m, const Eigen::VectorXd& x,
                 const Eigen::VectorXd& grad);

void write_neck_table_csv(std::ostream& os, const LawlorParams& params,
                          const std::vector<ConePoint>& points);
std::string golden_constants_json(const LawlorParams& params);

}  // namespace slcyl

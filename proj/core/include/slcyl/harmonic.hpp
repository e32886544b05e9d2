#pragma once

// Homogeneous harmonic functions on C x R and on cones over spherical links.

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

namespace slcyl {

using Rational = boost::multiprecision::cpp_rational;

/// a_1..a_a of u^{2a} + sum_j a_j u^{2a-2j} r^{2j}, harmonic on C x R with C of
/// real dimension n (Laplacian of r^{2j} on C is 2j(2j+n-2) r^{2j-2}).
std::vector<Rational> harmonic_coeffs(int a, int n);

/// Polynomial in (u, r) keyed by (power of u, power of r).
class BivariatePoly {
 public:
  using Key = std::pair<int, int>;
  void add(int pu, int pr, const Rational& c);
  const std::map<Key, Rational>& terms() const noexcept { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational eval(const Rational& u, const Rational& r) const;
  std::string str() const;

 private:
  std::map<Key, Rational> terms_;
};

/// u^{2a} + sum_j a_j u^{2a-2j} r^{2j}.
BivariatePoly phi_polynomial(int a, int n);

/// (Delta_C + d_u^2) applied monomial-wise:
/// Delta(u^p r^q) = p(p-1) u^{p-2} r^q + q(q+n-2) u^p r^{q-2}.
BivariatePoly cylinder_laplacian(const BivariatePoly& p, int n);

enum class LinkKind { UnitSphere, PairOfUnitSpheres, ExplicitEigenvalues };

struct LinkSpec {
  int n = 3;
  LinkKind kind = LinkKind::UnitSphere;
  /// Used for ExplicitEigenvalues; each entry is one eigenvalue counted once.
  std::vector<double> eigenvalues;
};

struct Degree {
  double d = 0.0;
  std::size_t multiplicity = 0;
};

/// Multiplicity of l(l+n-2) on the unit sphere S^{n-1}.
std::size_t sphere_multiplicity(int l, int n);

/// {d : d(d+n-2) in spec(Delta_Sigma)} intersected with the open window
/// (lo, hi), sorted, equal degrees merged.
std::vector<Degree> degree_set(const LinkSpec& link, double lo, double hi);

/// phi_a = -c_m (u^{2a} + sum_j a_j u^{2a-2j} r^{2j}) on component m.
struct HarmonicPoly {
  int a = 2;
  int n = 3;
  /// a_0 = 1, a_1..a_a.
  std::vector<Rational> coeffs;
  std::array<double, 2> cinf{0.0, 0.0};

  static HarmonicPoly make(int a, int n, std::array<double, 2> cinf);
  /// The single-constant polynomial of the two-plane graph: a = 1, c = -1 on
  /// both planes, so phi = u^2 - r^2 / n.
  static HarmonicPoly plane_mode(int n);

  double c(int m) const;
};

/// Value and (r, u) derivatives up to order 2.
struct PhiJet {
  double value = 0.0;
  double r = 0.0, u = 0.0;
  double rr = 0.0, ru = 0.0, uu = 0.0;
};

PhiJet eval_phi(const HarmonicPoly& poly, int m, double r, double u, int order);

/// Exact value with a rational constant c in place of c_m.
Rational eval_phi_exact(const HarmonicPoly& poly, const Rational& c, const Rational& r, const Rational& u);

/// Value, gradient and Hessian in Cartesian coordinates (x in R^n, u), last
/// index is u. Regular at r = 0.
struct CartesianJet {
  double value = 0.0;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

CartesianJet eval_phi_cartesian(const HarmonicPoly& poly, int m, const Eigen::VectorXd& x, double u);

std::string coeffs_json(const HarmonicPoly& poly);

}  // namespace slcyl

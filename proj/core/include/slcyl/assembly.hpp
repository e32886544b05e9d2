#pragma once

// The approximate solution X in C^n x C near the singular axis:
//
//   X1 = graph(d phi_a)   over C x R     where r >= 2|u|^b
//   graph(d I)            in the band    |u|^b <= r <= 2|u|^b
//   X2                                   where r <= |u|^b
//
// with I = chi(r |u|^{-b}) G + (1 - chi) phi_a and X2 the Lagrangian
// correction of the rescaled neck slices |u|^a L.

#include <array>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "slcyl/geom.hpp"
#include "slcyl/harmonic.hpp"
#include "slcyl/lawlor.hpp"

namespace slcyl {

/// chi(t) = zeta(2 - t) / (zeta(2 - t) + zeta(t - 1)), zeta(s) = exp(-1/s) for
/// s > 0 and 0 otherwise. Equal to 1 for t <= 1 and 0 for t >= 2.
class Cutoff {
 public:
  double value(double t) const;
  double d1(double t) const;
  double d2(double t) const;
  /// sup |chi^(k)| for k = 0..4, estimated on a fine grid (k >= 3 by
  /// differences of d2).
  std::array<double, 5> derivative_bounds() const;
};

struct SmoothingProfile {
  int a = 2;
  double b = 1.5;
  double Lambda = 4.0;
  double A = 32.0;
  Cutoff cutoff;

  /// Checks a > 1, 1 < b < a and Lambda |u|^a < |u|^b on |u| < 1/A.
  static SmoothingProfile make(int a, double b, double Lambda, double A);
};

struct CylinderPoint {
  int m = 1;
  std::vector<double> sigma;
  double r = 1.0;
  double u = 0.0;
};

/// Everything needed to evaluate X.
struct Model {
  LawlorParams neck;
  HarmonicPoly phi;
  SmoothingProfile profile;

  /// phi_a uses the neck's Liouville limits; Lambda is the neck's graphical radius.
  static Model make(const LawlorParams& neck, int a, double b, double A);
};

enum class Region { X1, Band, X2 };
std::string region_name(Region r);

CVec embed_X0(const LawlorParams& params, int a, const NeckChart& x, double u);

/// (h phi(x), u + i v) with h = |u|^a and v = -2 h h' beta_L(y).
CVec embed_X2(const LawlorParams& params, int a, const NeckChart& x, double u);

/// Analytic tangent frame of X2: the neck directions of neck_frame, then d/du.
Frame x2_frame(const LawlorParams& params, int a, const NeckChart& x, double u);

/// E(x) in det = det(h T) (1 + |u|^{2a-2} E), T the neck frame.
cplx x2_angle_E(const LawlorParams& params, int a, const NeckChart& x);

/// Angle of X2 from the determinant of x2_frame, in [0, pi).
double x2_angle_raw(const LawlorParams& params, int a, const NeckChart& x, double u);

/// arg(1 + |u|^{2a-2} E), reduced into (-pi/2, pi/2].
double x2_angle_closed(const LawlorParams& params, int a, const NeckChart& x, double u);

/// Potential jet plus, where the potential comes from the neck, its chart.
struct PotentialJet {
  CartesianJet jet;
  bool has_chart = false;
  NeckChart chart;
};

/// G = h^2 (-c_m + g(x / h)) on {r >= Lambda |u|^a}; G = 0 at u = 0.
PotentialJet potential_G_jet(const Model& model, int m, const Eigen::VectorXd& x, double u);
double potential_G(const Model& model, const CylinderPoint& p);

/// chi(t) G + (1 - chi(t)) phi_a with t = r |u|^{-b}, on the band.
CartesianJet interpolant_jet(const Model& model, int m, const Eigen::VectorXd& x, double u);
double interpolant_I(const Model& model, const CylinderPoint& p);

using PotentialField = std::function<CartesianJet(int m, const Eigen::VectorXd& x, double u)>;

enum class ConeKind { PlanePair, General };

/// D_m (x + i grad f) with D_m = diag(e^{i theta^(m)}, 1). Only plane pairs
/// have a linear Weinstein map; other cones raise UnsupportedConeError.
CVec graph_over_plane_pair(const LawlorParams& params, const PotentialField& f, const CylinderPoint& p,
                           ConeKind cone = ConeKind::PlanePair);

Region region_of(const SmoothingProfile& profile, double r, double u);

/// Potential of X at a cylinder point together with its region.
PotentialJet potential_on_X(const Model& model, int m, const Eigen::VectorXd& x, double u, Region* region);

struct AssembledPoint {
  Region region = Region::X1;
  CVec point;
};

/// Cylinder query; throws DomainError outside rho < 1/A or where X2 is not a
/// graph (r < Lambda |u|^a).
AssembledPoint assemble_X(const Model& model, const CylinderPoint& p);
/// Neck-chart query; throws DomainError unless the image lies in the X2 region.
AssembledPoint assemble_X(const Model& model, const NeckChart& x, double u);

/// Lagrangian angle of X, reduced into (-pi/2, pi/2].
double theta_X(const Model& model, const CylinderPoint& p);
double theta_X(const Model& model, const NeckChart& x, double u);

/// sup over the band of |G - phi_a| / u^{2a}, sampled at `sphere_samples`
/// directions, both ends and 9 radii. With `zero_phi_constant`, phi_a is
/// replaced by 0 (uncancelled control).
double cancellation_gap(const Model& model, double u, std::size_t sphere_samples = 64,
                        bool zero_phi_constant = false);

/// Eigen::VectorXd of r * sigma.
Eigen::VectorXd cylinder_x(const CylinderPoint& p);

void write_point_cloud_csv(std::ostream& os, const Model& model, const std::vector<CylinderPoint>& points);

}  // namespace slcyl

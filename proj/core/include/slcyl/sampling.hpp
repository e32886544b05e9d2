#pragma once

// Deterministic samplers of X, of the model cone C x R and of the two-plane
// graph, used by the norm sweeps, the tangent-cone probe and the census.

#include <cstdint>
#include <vector>

#include "slcyl/assembly.hpp"

namespace slcyl {

/// A sampled point of X with the chart it came from.
struct XSample {
  Region region = Region::X1;
  CVec point;
  /// Neck chart (X2 away from the graphical region) or cylinder chart.
  bool neck_chart = false;
  CylinderPoint cyl;
  NeckChart chart;
  double u = 0.0;
};

/// Points of X with ambient r in [R, 2R] and rho in [S, 2S]; may return fewer
/// than `count` (or none) when the box misses X.
std::vector<XSample> sample_X_box(const Model& model, double R, double S, std::size_t count,
                                  std::uint64_t seed);

/// Points of X with ambient rho in (rho_lo, rho_hi).
std::vector<XSample> sample_X_shell(const Model& model, double rho_lo, double rho_hi, std::size_t count,
                                    std::uint64_t seed);

/// Only X2 points (neck charts, r <= |u|^b) with rho in (rho_lo, rho_hi).
std::vector<XSample> sample_X2_shell(const Model& model, double rho_lo, double rho_hi, std::size_t count,
                                     std::uint64_t seed);

/// Cylinder coordinates of C x R with rho in (rho_lo, rho_hi).
std::vector<CylinderPoint> sample_cone_shell(std::size_t n, double rho_lo, double rho_hi, std::size_t count,
                                             std::uint64_t seed);

/// (D_m r sigma, u) in C^n x C.
CVec cone_point(const LawlorParams& params, const CylinderPoint& p);

/// Distance from a point of C^n x C to C x R (exact, per plane).
double cone_distance(const LawlorParams& params, const CVec& q);

/// Structured census grids on u-slices |u| in `u_values`: radii geometric
/// with ratio `ratio`, directions from a Fibonacci sphere of `directions`
/// points. The X grid adds neck chains across each X2 slice, with y steps
/// of `neck_dy` near the waist growing geometrically by `ratio`.
struct CensusGrid {
  std::vector<double> u_values;
  std::size_t directions = 200;
  double ratio = 1.15;
  std::size_t neck_directions = 24;
  double neck_dy = 0.25;
  double r_min = 1e-4;
};

std::vector<CVec> census_points_X(const Model& model, const CensusGrid& grid);
std::vector<CVec> census_points_cone(const Model& model, const CensusGrid& grid);
/// Union of the graphs of d phi over both planes with phi the plane-mode
/// polynomial (a = 1).
std::vector<CVec> census_points_plane_union(const Model& model, const CensusGrid& grid);

}  // namespace slcyl

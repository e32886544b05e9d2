#include "slcyl/sampling.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "slcyl/errors.hpp"
#include "slcyl/sphere.hpp"

namespace slcyl {

namespace {

std::vector<double> random_sigma(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> N;
  std::vector<double> s(n);
  double norm = 0.0;
  do {
    for (double& x : s) x = N(rng);
    norm = norm2(s);
  } while (norm < 1e-8);
  for (double& x : s) x /= norm;
  return s;
}

// Neck chart whose X2 image has ambient r = r_target at u; y chosen on the
// requested side. Returns false when |z| = r / |u|^a is below the neck.
bool neck_chart_at(const Model& model, const std::vector<double>& sigma, double r_target, double u,
                   bool positive_y, NeckChart& out) {
  const double zn = r_target / std::pow(std::abs(u), model.profile.a);
  double base = 0.0;
  for (std::size_t k = 0; k < sigma.size(); ++k) base += sigma[k] * sigma[k] / model.neck.a()[k];
  const double y2 = zn * zn - base;
  if (y2 < 0.0) return false;
  out = NeckChart{positive_y ? std::sqrt(y2) : -std::sqrt(y2), sigma};
  return true;
}

// One X point at cylinder coordinates (r, u); uses a neck chart where X2 is
// not a graph.
bool make_sample(const Model& model, int m, const std::vector<double>& sigma, double r, double u,
                 std::mt19937_64& rng, XSample& out) {
  const auto& pr = model.profile;
  const double h = std::pow(std::abs(u), pr.a);
  try {
    if (u != 0.0 && r < pr.Lambda * h) {
      NeckChart c;
      if (!neck_chart_at(model, sigma, r, u, std::bernoulli_distribution(0.5)(rng), c)) return false;
      auto ap = assemble_X(model, c, u);
      out = XSample{Region::X2, std::move(ap.point), true, CylinderPoint{m, sigma, r, u}, c, u};
      return true;
    }
    CylinderPoint cp{m, sigma, r, u};
    auto ap = assemble_X(model, cp);
    out = XSample{ap.region, std::move(ap.point), false, cp, NeckChart{}, u};
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

}  // namespace

std::vector<XSample> sample_X_box(const Model& model, double R, double S, std::size_t count,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const std::size_t n = model.neck.n();
  std::vector<XSample> out;
  if (R > 2.0 * S) return out;
  for (std::size_t attempt = 0; attempt < 40 * count && out.size() < count; ++attempt) {
    const double r = R * std::pow(2.0, U(rng));
    const double rho = S * (1.0 + U(rng));
    if (rho <= r) continue;
    double u = std::sqrt(rho * rho - r * r);
    if (U(rng) < 0.5) u = -u;
    const int m = U(rng) < 0.5 ? 1 : 2;
    XSample s;
    if (!make_sample(model, m, random_sigma(n, rng), r, u, rng, s)) continue;
    const double ar = s.point.r(), arho = s.point.rho();
    if (ar < R || ar > 2.0 * R || arho < S || arho > 2.0 * S) continue;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<XSample> sample_X_shell(const Model& model, double rho_lo, double rho_hi, std::size_t count,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const std::size_t n = model.neck.n();
  std::vector<XSample> out;
  for (std::size_t attempt = 0; attempt < 40 * count && out.size() < count; ++attempt) {
    const double rho = rho_lo + (rho_hi - rho_lo) * U(rng);
    const double alpha = std::numbers::pi / 2 * U(rng);
    const double r = rho * std::cos(alpha);
    double u = rho * std::sin(alpha);
    if (U(rng) < 0.5) u = -u;
    const int m = U(rng) < 0.5 ? 1 : 2;
    XSample s;
    if (!(r > 0.0) || !make_sample(model, m, random_sigma(n, rng), r, u, rng, s)) continue;
    const double arho = s.point.rho();
    if (arho <= rho_lo || arho >= rho_hi) continue;
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<XSample> sample_X2_shell(const Model& model, double rho_lo, double rho_hi, std::size_t count,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const std::size_t n = model.neck.n();
  const auto& pr = model.profile;
  std::vector<XSample> out;
  for (std::size_t attempt = 0; attempt < 40 * count && out.size() < count; ++attempt) {
    double u = rho_lo + (rho_hi - rho_lo) * U(rng);
    if (U(rng) < 0.5) u = -u;
    const double h = std::pow(std::abs(u), pr.a);
    // r log-uniform between the neck waist and |u|^b
    const double r = h * std::pow(std::pow(std::abs(u), pr.b) / h, U(rng));
    NeckChart c;
    if (!neck_chart_at(model, random_sigma(n, rng), r, u, U(rng) < 0.5, c)) continue;
    try {
      auto ap = assemble_X(model, c, u);
      const double arho = ap.point.rho();
      if (arho <= rho_lo || arho >= rho_hi) continue;
      out.push_back(XSample{Region::X2, std::move(ap.point), true, CylinderPoint{}, c, u});
    } catch (const DomainError&) {
    }
  }
  return out;
}

std::vector<CylinderPoint> sample_cone_shell(std::size_t n, double rho_lo, double rho_hi, std::size_t count,
                                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::vector<CylinderPoint> out;
  while (out.size() < count) {
    const double rho = rho_lo + (rho_hi - rho_lo) * U(rng);
    const double alpha = std::numbers::pi / 2 * U(rng);
    double u = rho * std::sin(alpha);
    if (U(rng) < 0.5) u = -u;
    const int m = U(rng) < 0.5 ? 1 : 2;
    const double r = rho * std::cos(alpha);
    if (!(r > 0.0)) continue;
    out.push_back(CylinderPoint{m, random_sigma(n, rng), r, u});
  }
  return out;
}

CVec cone_point(const LawlorParams& params, const CylinderPoint& p) {
  const std::size_t n = params.n();
  std::vector<cplx> z(n + 1);
  for (std::size_t k = 0; k < n; ++k) z[k] = std::polar(p.r * p.sigma[k], params.plane_phase(p.m, k));
  z[n] = cplx(p.u, 0.0);
  return CVec::from_complex(z);
}

double cone_distance(const LawlorParams& params, const CVec& q) {
  const std::size_t n = params.n();
  if (q.dim() != n + 1) throw ArgumentError("cone distance: expected a point of C^{n+1}");
  const double v = q.y(n);
  double best = INFINITY;
  for (int m = 1; m <= 2; ++m) {
    double d2 = v * v;
    for (std::size_t k = 0; k < n; ++k) {
      const double im = (q.z(k) * std::polar(1.0, -params.plane_phase(m, k))).imag();
      d2 += im * im;
    }
    best = std::min(best, d2);
  }
  return std::sqrt(best);
}

namespace {

std::vector<double> geometric(double lo, double hi, double ratio) {
  std::vector<double> v;
  for (double r = lo; r < hi; r *= ratio) v.push_back(r);
  return v;
}

std::vector<double> slices(const CensusGrid& grid) {
  std::vector<double> us{0.0};
  for (double u : grid.u_values) {
    us.push_back(u);
    us.push_back(-u);
  }
  return us;
}

std::vector<double> neck_ys(const CensusGrid& grid, double zmax) {
  std::vector<double> ys{0.0};
  double step = grid.neck_dy;
  for (double y = grid.neck_dy; y <= zmax; y += step, step *= grid.ratio) {
    ys.push_back(y);
    ys.push_back(-y);
  }
  return ys;
}

}  // namespace

std::vector<CVec> census_points_X(const Model& model, const CensusGrid& grid) {
  const std::size_t n = model.neck.n();
  const auto& pr = model.profile;
  const auto dirs = sphere_points(n, grid.directions);
  const auto neck_dirs = sphere_points(n, grid.neck_directions);
  const double rho_max = 1.0 / pr.A;
  std::vector<CVec> out;
  for (double u : slices(grid)) {
    const double r_lo = u == 0.0 ? grid.r_min : pr.Lambda * std::pow(std::abs(u), pr.a);
    const double r_hi = std::sqrt(rho_max * rho_max - u * u) * 0.999;
    for (int m = 1; m <= 2; ++m)
      for (const auto& s : dirs)
        for (double r : geometric(r_lo, r_hi, grid.ratio)) {
          try {
            out.push_back(assemble_X(model, CylinderPoint{m, s, r, u}).point);
          } catch (const DomainError&) {
          }
        }
    if (u == 0.0) continue;
    const double zmax = std::pow(std::abs(u), pr.b - pr.a);
    for (const auto& s : neck_dirs)
      for (double y : neck_ys(grid, zmax)) {
        try {
          out.push_back(assemble_X(model, NeckChart{y, s}, u).point);
        } catch (const DomainError&) {
        }
      }
  }
  return out;
}

std::vector<CVec> census_points_cone(const Model& model, const CensusGrid& grid) {
  const std::size_t n = model.neck.n();
  const auto& pr = model.profile;
  const auto dirs = sphere_points(n, grid.directions);
  const double rho_max = 1.0 / pr.A;
  std::vector<CVec> out;
  for (double u : slices(grid)) {
    const double r_lo = u == 0.0 ? grid.r_min : std::pow(std::abs(u), pr.a);
    const double r_hi = std::sqrt(rho_max * rho_max - u * u) * 0.999;
    for (int m = 1; m <= 2; ++m)
      for (const auto& s : dirs)
        for (double r : geometric(r_lo, r_hi, grid.ratio)) out.push_back(cone_point(model.neck, {m, s, r, u}));
  }
  return out;
}

std::vector<CVec> census_points_plane_union(const Model& model, const CensusGrid& grid) {
  const std::size_t n = model.neck.n();
  const auto& pr = model.profile;
  const auto dirs = sphere_points(n, grid.directions);
  const HarmonicPoly plane = HarmonicPoly::plane_mode(static_cast<int>(n));
  const double rho_max = 1.0 / pr.A;
  std::vector<CVec> out;
  for (double u : slices(grid)) {
    const double r_lo = u == 0.0 ? grid.r_min : std::pow(std::abs(u), pr.a);
    const double r_hi = std::sqrt(rho_max * rho_max - u * u) * 0.999;
    for (int m = 1; m <= 2; ++m)
      for (const auto& s : dirs)
        for (double r : geometric(r_lo, r_hi, grid.ratio)) {
          const PotentialField f = [&](int mm, const Eigen::VectorXd& x, double uu) {
            return eval_phi_cartesian(plane, mm, x, uu);
          };
          out.push_back(graph_over_plane_pair(model.neck, f, CylinderPoint{m, s, r, u}));
        }
  }
  return out;
}

}  // namespace slcyl

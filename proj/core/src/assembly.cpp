#include "slcyl/assembly.hpp"

#include <cmath>
#include <ostream>

#include "slcyl/errors.hpp"
#include "slcyl/sphere.hpp"

namespace slcyl {

namespace {

double zeta(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }
double zeta1(double s) { return s > 0.0 ? std::exp(-1.0 / s) / (s * s) : 0.0; }
double zeta2(double s) { return s > 0.0 ? std::exp(-1.0 / s) * (1.0 - 2.0 * s) / (s * s * s * s) : 0.0; }

double sgn(double u) { return u > 0.0 ? 1.0 : (u < 0.0 ? -1.0 : 0.0); }

void check_unit(const std::vector<double>& sigma, std::size_t n) {
  if (sigma.size() != n) throw ArgumentError("sigma has wrong dimension");
  if (std::abs(norm2(sigma) - 1.0) > 1e-12) throw ArgumentError("sigma must be a unit vector");
}

// h = |u|^a and its first two derivatives
struct Scale {
  double h, h1, h2;
  Scale(int a, double u)
      : h(std::pow(std::abs(u), a)),
        h1(a * sgn(u) * std::pow(std::abs(u), a - 1)),
        h2(a * (a - 1) * std::pow(std::abs(u), a - 2)) {}
};

PotentialJet g_jet(const Model& model, int m, const Eigen::VectorXd& x, double u, bool hessian) {
  const Eigen::Index n = x.size();
  PotentialJet out;
  out.jet.grad = Eigen::VectorXd::Zero(n + 1);
  out.jet.hess = Eigen::MatrixXd::Zero(n + 1, n + 1);
  if (u == 0.0) return out;
  const int a = model.profile.a;
  const Scale s(a, u);
  if (!(x.norm() >= model.profile.Lambda * s.h * (1.0 - 1e-12)))
    throw DomainError("G: point outside the graphical region r >= Lambda |u|^a");
  const Eigen::VectorXd xi = x / s.h;
  const GraphPotential gp = graph_potential_unchecked(model.neck, m, xi, hessian);
  const double c = model.neck.cinf(m);
  const double F = -c + gp.g - 0.5 * xi.dot(gp.grad);
  out.jet.value = s.h * s.h * (-c + gp.g);
  out.jet.grad.head(n) = s.h * gp.grad;
  out.jet.grad[n] = 2.0 * s.h * s.h1 * F;
  if (hessian) {
    const Eigen::VectorXd w = gp.grad - gp.hess * xi;
    out.jet.hess.topLeftCorner(n, n) = gp.hess;
    out.jet.hess.block(0, n, n, 1) = s.h1 * w;
    out.jet.hess.block(n, 0, 1, n) = s.h1 * w.transpose();
    out.jet.hess(n, n) = 2.0 * (s.h1 * s.h1 + s.h * s.h2) * F - s.h1 * s.h1 * xi.dot(w);
  }
  out.has_chart = true;
  out.chart = gp.chart;
  return out;
}

double wrap(double t) { return wrap_angle_mod_pi(t); }

}  // namespace

double Cutoff::value(double t) const {
  if (t <= 1.0) return 1.0;
  if (t >= 2.0) return 0.0;
  const double A = zeta(2.0 - t), B = zeta(t - 1.0);
  return A / (A + B);
}

double Cutoff::d1(double t) const {
  if (t <= 1.0 || t >= 2.0) return 0.0;
  const double A = zeta(2.0 - t), B = zeta(t - 1.0);
  const double A1 = -zeta1(2.0 - t), B1 = zeta1(t - 1.0);
  const double D = A + B;
  return (A1 * B - A * B1) / (D * D);
}

double Cutoff::d2(double t) const {
  if (t <= 1.0 || t >= 2.0) return 0.0;
  const double A = zeta(2.0 - t), B = zeta(t - 1.0);
  const double A1 = -zeta1(2.0 - t), B1 = zeta1(t - 1.0);
  const double A2 = zeta2(2.0 - t), B2 = zeta2(t - 1.0);
  const double D = A + B, D1 = A1 + B1;
  return (A2 * B - A * B2) / (D * D) - 2.0 * (A1 * B - A * B1) * D1 / (D * D * D);
}

std::array<double, 5> Cutoff::derivative_bounds() const {
  std::array<double, 5> b{};
  const int N = 20000;
  const double h = 1.0 / N;
  for (int i = 1; i < N; ++i) {
    const double t = 1.0 + i * h;
    b[0] = std::max(b[0], std::abs(value(t)));
    b[1] = std::max(b[1], std::abs(d1(t)));
    b[2] = std::max(b[2], std::abs(d2(t)));
    b[3] = std::max(b[3], std::abs((d2(t + h) - d2(t - h)) / (2 * h)));
    b[4] = std::max(b[4], std::abs((d2(t + h) - 2 * d2(t) + d2(t - h)) / (h * h)));
  }
  return b;
}

SmoothingProfile SmoothingProfile::make(int a, double b, double Lambda, double A) {
  if (a <= 1) throw ArgumentError("profile: a must be an integer > 1 (got " + std::to_string(a) + ")");
  if (!(b > 1.0 && b < a)) throw ArgumentError("profile: b must lie in (1, a)");
  if (!(Lambda > 0.0)) throw ArgumentError("profile: Lambda must be positive");
  if (!(A > 0.0)) throw ArgumentError("profile: A must be positive");
  // Lambda |u|^a < |u|^b on 0 < |u| < 1/A  <=>  Lambda <= A^{a-b}
  if (Lambda > std::pow(A, a - b) * (1.0 + 1e-12))
    throw ArgumentError("profile: A too small, need Lambda <= A^(a-b)");
  SmoothingProfile p;
  p.a = a;
  p.b = b;
  p.Lambda = Lambda;
  p.A = A;
  return p;
}

Model Model::make(const LawlorParams& neck, int a, double b, double A) {
  auto profile = SmoothingProfile::make(a, b, neck.graphical_radius(), A);
  return Model{neck, HarmonicPoly::make(a, static_cast<int>(neck.n()), {neck.cinf(1), neck.cinf(2)}), profile};
}

std::string region_name(Region r) {
  switch (r) {
    case Region::X1: return "X1";
    case Region::Band: return "band";
    case Region::X2: return "X2";
  }
  return "?";
}

CVec embed_X0(const LawlorParams& params, int a, const NeckChart& x, double u) {
  if (u == 0.0) throw DomainError("X0: u = 0 is not charted");
  const double h = std::pow(std::abs(u), a);
  auto z = embed_neck(params, x).as_complex();
  for (auto& zk : z) zk *= h;
  z.push_back(cplx(u, 0.0));
  return CVec::from_complex(z);
}

CVec embed_X2(const LawlorParams& params, int a, const NeckChart& x, double u) {
  if (u == 0.0) throw DomainError("X2: u = 0 is not charted");
  const Scale s(a, u);
  auto z = embed_neck(params, x).as_complex();
  for (auto& zk : z) zk *= s.h;
  z.push_back(cplx(u, -2.0 * s.h * s.h1 * params.beta(x.y)));
  return CVec::from_complex(z);
}

Frame x2_frame(const LawlorParams& params, int a, const NeckChart& x, double u) {
  if (u == 0.0) throw DomainError("X2: u = 0 is not charted");
  const Scale s(a, u);
  const std::size_t n = params.n();
  const Frame T = neck_frame(params, x);
  const auto z = embed_neck(params, x).as_complex();
  const double beta = params.beta(x.y);
  std::vector<CVec> cols;
  for (std::size_t j = 0; j < n; ++j) {
    auto v = T.vectors()[j].as_complex();
    for (auto& vk : v) vk *= s.h;
    const double bj = j == 0 ? params.beta_prime(x.y) : 0.0;
    v.push_back(cplx(0.0, -2.0 * s.h * s.h1 * bj));
    cols.push_back(CVec::from_complex(v));
  }
  std::vector<cplx> du(n + 1);
  for (std::size_t k = 0; k < n; ++k) du[k] = s.h1 * z[k];
  du[n] = cplx(1.0, -2.0 * (s.h1 * s.h1 + s.h * s.h2) * beta);
  cols.push_back(CVec::from_complex(du));
  return Frame(std::move(cols));
}

cplx x2_angle_E(const LawlorParams& params, int a, const NeckChart& x) {
  const Eigen::MatrixXcd T = neck_frame(params, x).matrix();
  const auto zv = embed_neck(params, x).as_complex();
  Eigen::VectorXcd z(zv.size());
  for (std::size_t k = 0; k < zv.size(); ++k) z[k] = zv[k];
  const Eigen::VectorXcd c = T.fullPivLu().solve(z);
  const double beta = params.beta(x.y), by = params.beta_prime(x.y);
  return cplx(0.0, 1.0) * (-2.0 * a * (2.0 * a - 1.0) * beta + 2.0 * a * a * by * c[0]);
}

double x2_angle_raw(const LawlorParams& params, int a, const NeckChart& x, double u) {
  return lagrangian_angle(x2_frame(params, a, x, u));
}

double x2_angle_closed(const LawlorParams& params, int a, const NeckChart& x, double u) {
  if (u == 0.0) throw DomainError("X2: u = 0 is not charted");
  const cplx E = x2_angle_E(params, a, x);
  return wrap(std::arg(1.0 + std::pow(std::abs(u), 2 * a - 2) * E));
}

PotentialJet potential_G_jet(const Model& model, int m, const Eigen::VectorXd& x, double u) {
  return g_jet(model, m, x, u, true);
}

Eigen::VectorXd cylinder_x(const CylinderPoint& p) {
  Eigen::VectorXd x(p.sigma.size());
  for (std::size_t k = 0; k < p.sigma.size(); ++k) x[k] = p.r * p.sigma[k];
  return x;
}

double potential_G(const Model& model, const CylinderPoint& p) {
  check_unit(p.sigma, model.neck.n());
  return g_jet(model, p.m, cylinder_x(p), p.u, false).jet.value;
}

CartesianJet interpolant_jet(const Model& model, int m, const Eigen::VectorXd& x, double u) {
  const auto& pr = model.profile;
  const double r = x.norm();
  const double ub = std::pow(std::abs(u), pr.b);
  if (u == 0.0 || r < ub * (1.0 - 1e-12) || r > 2.0 * ub * (1.0 + 1e-12))
    throw DomainError("I: point outside the band |u|^b <= r <= 2|u|^b");
  const Eigen::Index n = x.size();
  const CartesianJet phi = eval_phi_cartesian(model.phi, m, x, u);
  const CartesianJet G = g_jet(model, m, x, u, true).jet;
  const double D = G.value - phi.value;
  const Eigen::VectorXd dD = G.grad - phi.grad;
  const Eigen::MatrixXd HD = G.hess - phi.hess;

  const double au = std::abs(u), b = pr.b, su = sgn(u);
  const double t = r / ub;
  const double chi = pr.cutoff.value(t), chi1 = pr.cutoff.d1(t), chi2 = pr.cutoff.d2(t);
  const Eigen::VectorXd sigma = x / r;
  Eigen::VectorXd dt(n + 1);
  dt.head(n) = sigma / ub;
  dt[n] = -b * r * su * std::pow(au, -b - 1.0);
  Eigen::MatrixXd Ht = Eigen::MatrixXd::Zero(n + 1, n + 1);
  Ht.topLeftCorner(n, n) = (Eigen::MatrixXd::Identity(n, n) - sigma * sigma.transpose()) / (ub * r);
  Ht.block(0, n, n, 1) = -b * su * std::pow(au, -b - 1.0) * sigma;
  Ht.block(n, 0, 1, n) = Ht.block(0, n, n, 1).transpose();
  Ht(n, n) = b * (b + 1.0) * r * std::pow(au, -b - 2.0);

  CartesianJet out;
  out.value = phi.value + chi * D;
  out.grad = phi.grad + chi * dD + chi1 * D * dt;
  out.hess = phi.hess + chi * HD + chi1 * (dt * dD.transpose() + dD * dt.transpose()) +
             D * (chi2 * dt * dt.transpose() + chi1 * Ht);
  return out;
}

double interpolant_I(const Model& model, const CylinderPoint& p) {
  check_unit(p.sigma, model.neck.n());
  return interpolant_jet(model, p.m, cylinder_x(p), p.u).value;
}

CVec graph_over_plane_pair(const LawlorParams& params, const PotentialField& f, const CylinderPoint& p,
                           ConeKind cone) {
  if (cone != ConeKind::PlanePair)
    throw UnsupportedConeError("graph over a cone: only plane pairs have a linear Weinstein map");
  const std::size_t n = params.n();
  check_unit(p.sigma, n);
  const Eigen::VectorXd x = cylinder_x(p);
  const CartesianJet j = f(p.m, x, p.u);
  std::vector<cplx> z(n + 1);
  for (std::size_t k = 0; k < n; ++k) z[k] = std::polar(1.0, params.plane_phase(p.m, k)) * cplx(x[k], j.grad[k]);
  z[n] = cplx(p.u, j.grad[n]);
  return CVec::from_complex(z);
}

Region region_of(const SmoothingProfile& profile, double r, double u) {
  if (u == 0.0) return Region::X1;
  const double ub = std::pow(std::abs(u), profile.b);
  if (r >= 2.0 * ub) return Region::X1;
  if (r >= ub) return Region::Band;
  return Region::X2;
}

PotentialJet potential_on_X(const Model& model, int m, const Eigen::VectorXd& x, double u, Region* region) {
  const Region reg = region_of(model.profile, x.norm(), u);
  if (region) *region = reg;
  PotentialJet out;
  switch (reg) {
    case Region::X1: out.jet = eval_phi_cartesian(model.phi, m, x, u); break;
    case Region::Band: out.jet = interpolant_jet(model, m, x, u); break;
    case Region::X2: out = g_jet(model, m, x, u, true); break;
  }
  return out;
}

AssembledPoint assemble_X(const Model& model, const CylinderPoint& p) {
  check_unit(p.sigma, model.neck.n());
  if (!(p.r > 0.0)) throw DomainError("assemble: r must be positive");
  if (std::hypot(p.r, p.u) >= 1.0 / model.profile.A) throw DomainError("assemble: rho >= 1/A");
  AssembledPoint out;
  const PotentialField f = [&](int m, const Eigen::VectorXd& x, double u) {
    return potential_on_X(model, m, x, u, &out.region).jet;
  };
  out.point = graph_over_plane_pair(model.neck, f, p);
  return out;
}

AssembledPoint assemble_X(const Model& model, const NeckChart& x, double u) {
  if (u == 0.0) throw DomainError("assemble: u = 0 is not charted by the neck");
  CVec pt = embed_X2(model.neck, model.profile.a, x, u);
  if (pt.r() > std::pow(std::abs(u), model.profile.b) * (1.0 + 1e-12))
    throw DomainError("assemble: chart point lies outside the X2 region");
  if (pt.rho() >= 1.0 / model.profile.A) throw DomainError("assemble: rho >= 1/A");
  return {Region::X2, std::move(pt)};
}

double theta_X(const Model& model, const CylinderPoint& p) {
  check_unit(p.sigma, model.neck.n());
  Region reg;
  const PotentialJet pj = potential_on_X(model, p.m, cylinder_x(p), p.u, &reg);
  if (reg == Region::X2) return x2_angle_closed(model.neck, model.profile.a, pj.chart, p.u);
  // arg det(I + i H) = sum_k atan(lambda_k)
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pj.jet.hess, Eigen::EigenvaluesOnly);
  double t = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) t += std::atan(es.eigenvalues()[k]);
  return wrap(t);
}

double theta_X(const Model& model, const NeckChart& x, double u) {
  return x2_angle_closed(model.neck, model.profile.a, x, u);
}

double cancellation_gap(const Model& model, double u, std::size_t sphere_samples, bool zero_phi_constant) {
  if (u == 0.0) throw ArgumentError("cancellation gap: u must be nonzero");
  const std::size_t n = model.neck.n();
  const auto sig = sphere_points(n, sphere_samples);
  const double ub = std::pow(std::abs(u), model.profile.b);
  const double u2a = std::pow(std::abs(u), 2 * model.profile.a);
  double sup = 0.0;
  for (int m = 1; m <= 2; ++m) {
    for (const auto& s : sig) {
      for (int i = 0; i <= 8; ++i) {
        const double r = ub * (1.0 + i / 8.0);
        Eigen::VectorXd x(n);
        for (std::size_t k = 0; k < n; ++k) x[k] = r * s[k];
        const double G = g_jet(model, m, x, u, false).jet.value;
        const double phi = zero_phi_constant ? 0.0 : eval_phi(model.phi, m, r, u, 0).value;
        sup = std::max(sup, std::abs(G - phi) / u2a);
      }
    }
  }
  return sup;
}

void write_point_cloud_csv(std::ostream& os, const Model& model, const std::vector<CylinderPoint>& points) {
  const std::size_t n = model.neck.n();
  os << "region,m";
  for (std::size_t k = 1; k <= n; ++k) os << ",sigma" << k;
  os << ",r,u";
  for (std::size_t k = 1; k <= n; ++k) os << ",re_z" << k << ",im_z" << k;
  os << ",re_w,im_w\n";
  os.precision(17);
  for (const auto& p : points) {
    const auto ap = assemble_X(model, p);
    os << region_name(ap.region) << ',' << p.m;
    for (double s : p.sigma) os << ',' << s;
    os << ',' << p.r << ',' << p.u;
    for (double c : ap.point.coords()) os << ',' << c;
    os << '\n';
  }
}

}  // namespace slcyl

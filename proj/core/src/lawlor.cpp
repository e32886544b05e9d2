#include "slcyl/lawlor.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>
#include "json.hpp"

#include "slcyl/errors.hpp"
#include "slcyl/quadrature.hpp"
#include "slcyl/sphere.hpp"

namespace slcyl {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;
constexpr std::size_t kCells = 256;
using Gauss = boost::math::quadrature::gauss<double, 20>;

// Integrals of a vector-valued integrand on [lo, hi], cached at cell
// boundaries in both directions; partial cells use 20-point Gauss-Legendre.
class CumulativeTable {
 public:
  using Integrand = std::function<void(double, double*)>;

  CumulativeTable(Integrand f, std::size_t dim, double lo, double hi, std::size_t cells)
      : f_(std::move(f)), dim_(dim), lo_(lo), hi_(hi), cells_(cells),
        width_((hi - lo) / static_cast<double>(cells)),
        prefix_((cells + 1) * dim, 0.0), suffix_((cells + 1) * dim, 0.0) {
    std::vector<double> cell(cells * dim);
    for (std::size_t j = 0; j < cells; ++j) gauss(node(j), node(j + 1), &cell[j * dim]);
    for (std::size_t j = 0; j < cells; ++j)
      for (std::size_t i = 0; i < dim; ++i)
        prefix_[(j + 1) * dim + i] = prefix_[j * dim + i] + cell[j * dim + i];
    for (std::size_t j = cells; j-- > 0;)
      for (std::size_t i = 0; i < dim; ++i)
        suffix_[j * dim + i] = suffix_[(j + 1) * dim + i] + cell[j * dim + i];
  }

  /// int_lo^s
  void from_lo(double s, double* out) const {
    const std::size_t j = cell_of(s);
    std::vector<double> part(dim_);
    gauss(node(j), std::clamp(s, lo_, hi_), part.data());
    for (std::size_t i = 0; i < dim_; ++i) out[i] = prefix_[j * dim_ + i] + part[i];
  }

  /// int_s^hi
  void to_hi(double s, double* out) const {
    const std::size_t j = cell_of(s);
    std::vector<double> part(dim_);
    gauss(std::clamp(s, lo_, hi_), node(j + 1), part.data());
    for (std::size_t i = 0; i < dim_; ++i) out[i] = suffix_[(j + 1) * dim_ + i] + part[i];
  }

  double total(std::size_t i) const { return prefix_[cells_ * dim_ + i]; }

 private:
  double node(std::size_t j) const {
    return j == cells_ ? hi_ : lo_ + width_ * static_cast<double>(j);
  }

  std::size_t cell_of(double s) const {
    const double t = (s - lo_) / width_;
    if (!(t > 0.0)) return 0;
    return std::min(cells_ - 1, static_cast<std::size_t>(t));
  }

  void gauss(double a, double b, double* out) const {
    std::fill(out, out + dim_, 0.0);
    if (a == b) return;
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const auto& x = Gauss::abscissa();
    const auto& w = Gauss::weights();
    std::vector<double> v(dim_);
    for (std::size_t q = 0; q < x.size(); ++q) {
      for (double sign : {-1.0, 1.0}) {
        f_(mid + sign * half * x[q], v.data());
        for (std::size_t i = 0; i < dim_; ++i) out[i] += w[q] * v[i];
      }
    }
    for (std::size_t i = 0; i < dim_; ++i) out[i] *= half;
  }

  Integrand f_;
  std::size_t dim_;
  double lo_, hi_;
  std::size_t cells_;
  double width_;
  std::vector<double> prefix_, suffix_;
};

std::vector<double> elementary_symmetric(const std::vector<double>& a) {
  std::vector<double> e(a.size() + 1, 0.0);
  e[0] = 1.0;
  for (std::size_t k = 0; k < a.size(); ++k)
    for (std::size_t j = k + 1; j >= 1; --j) e[j] += a[k] * e[j - 1];
  return e;
}

// sum_{j>=1} e_j x^{2(j-1)}, free of the cancellation in (prod - 1) / x^2.
double eval_P(const std::vector<double>& e, double x) {
  const double x2 = x * x;
  double p = 0.0;
  for (std::size_t j = e.size() - 1; j >= 1; --j) p = p * x2 + e[j];
  return p;
}

void check_a(const std::vector<double>& a) {
  if (a.size() < 3) throw ArgumentError("Lawlor neck needs n >= 3, got n = " + std::to_string(a.size()));
  for (double ak : a)
    if (!(ak > 0.0) || !std::isfinite(ak)) throw ArgumentError("Lawlor parameters a_k must be positive");
}

}  // namespace

namespace detail {

struct NeckTables {
  std::vector<double> a;
  std::vector<double> e;
  std::size_t n;
  // psi'_k for k < n, then (1/2) / sqrt(P); in the variable s = atan(t)
  CumulativeTable phase;
  CumulativeTable q1;
  CumulativeTable q2;
  mutable std::once_flag lambda_once;
  mutable double lambda = 0.0;

  explicit NeckTables(const std::vector<double>& a_)
      : a(a_), e(elementary_symmetric(a_)), n(a_.size()),
        phase([this](double s, double* out) { phase_integrand(s, out); }, n + 1, -kHalfPi, kHalfPi,
              kCells),
        q1([this](double s, double* out) { q_integrand(1, s, out); }, n, -kHalfPi, 0.0, kCells / 2),
        q2([this](double s, double* out) { q_integrand(2, s, out); }, n, 0.0, kHalfPi, kCells / 2) {}

  NeckTables(const NeckTables&) = delete;
  NeckTables& operator=(const NeckTables&) = delete;

  // 1 / sqrt(P(tan s)) = c^{n-1} / sqrt(Q(s))
  double inv_sqrt_P(double c, double sn) const {
    const double c2 = c * c, s2 = sn * sn;
    double q = 0.0, spow = 1.0;
    for (std::size_t j = 1; j <= n; ++j) {
      q += e[j] * spow * std::pow(c2, static_cast<double>(n - j));
      spow *= s2;
    }
    return std::pow(c, static_cast<double>(n - 1)) / std::sqrt(q);
  }

  void phase_integrand(double s, double* out) const {
    const double c = std::cos(s), sn = std::sin(s);
    const double ip = inv_sqrt_P(c, sn);
    for (std::size_t k = 0; k < n; ++k) out[k] = a[k] / (c * c + a[k] * sn * sn) * ip;
    out[n] = 0.5 * ip / (c * c);
  }

  // d/ds of sum-free pieces of g along a fixed-sigma line on the end m:
  // rho sin(phi) (rho' cos(phi) - rho sin(phi) psi') dt/ds
  void q_integrand(int m, double s, double* out) const {
    const double c = std::cos(s), sn = std::sin(s);
    const double ip = inv_sqrt_P(c, sn);
    std::vector<double> ph(n + 1);
    if (m == 1) {
      phase.from_lo(s, ph.data());
    } else {
      phase.to_hi(s, ph.data());
      for (std::size_t k = 0; k < n; ++k) ph[k] = -ph[k];
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double w2 = c * c / a[k] + sn * sn;
      const double dpsi_dt = a[k] * c * c / (c * c + a[k] * sn * sn) * ip;
      const double sp = std::sin(ph[k]), cp = std::cos(ph[k]);
      out[k] = sp * (sn * cp / (c * c * c) - w2 * sp * dpsi_dt / (c * c * c * c));
    }
  }

  std::vector<double> phase_left(double y) const {
    std::vector<double> v(n + 1);
    phase.from_lo(std::atan(y), v.data());
    return v;
  }
  std::vector<double> phase_right(double y) const {
    std::vector<double> v(n + 1);
    phase.to_hi(std::atan(y), v.data());
    return v;
  }
  // phi_k = psi_k - plane phase of end m
  std::vector<double> rel_phase(int m, double y) const {
    if (m == 1) {
      auto v = phase_left(y);
      v.resize(n);
      return v;
    }
    auto v = phase_right(y);
    v.resize(n);
    for (double& x : v) x = -x;
    return v;
  }
  double q(int m, std::size_t k, double y) const {
    std::vector<double> v(n);
    if (m == 1) {
      q1.from_lo(std::atan(y), v.data());
      return v[k];
    }
    q2.to_hi(std::atan(y), v.data());
    return -v[k];
  }
};

}  // namespace detail

LawlorParams::LawlorParams(std::vector<double> a) : a_(std::move(a)) {
  check_a(a_);
  tables_ = std::make_shared<const detail::NeckTables>(a_);
  theta_.resize(n());
  for (std::size_t k = 0; k < n(); ++k) theta_[k] = tables_->phase.total(k);
  A_ = 0.5 * tables_->phase.total(n());
}

LawlorParams LawlorParams::normalized(std::vector<double> a) {
  check_a(a);
  const double mx = *std::max_element(a.begin(), a.end());
  for (double& ak : a) ak /= mx;
  return LawlorParams(std::move(a));
}

LawlorParams LawlorParams::from_target_angles(const std::vector<double>& theta) {
  const std::size_t n = theta.size();
  if (n < 3) throw ArgumentError("target angles: need n >= 3");
  double sum = 0.0;
  for (double t : theta) {
    if (!(t > 0.0 && t < std::numbers::pi)) throw ArgumentError("target angles must lie in (0, pi)");
    sum += t;
  }
  if (std::abs(sum - std::numbers::pi) > 1e-3)
    throw ArgumentError("target angles must sum to pi (got " + std::to_string(sum) + ")");

  // unknowns log a_2..log a_n with a_1 = 1; residuals theta_1..theta_{n-1}
  const std::size_t m = n - 1;
  auto to_a = [&](const Eigen::VectorXd& v) {
    std::vector<double> a(n, 1.0);
    for (std::size_t i = 0; i < m; ++i) a[i + 1] = std::exp(v[i]);
    return a;
  };
  auto residual = [&](const Eigen::VectorXd& v) {
    const auto th = lawlor_angles(to_a(v));
    Eigen::VectorXd r(m);
    for (std::size_t i = 0; i < m; ++i) r[i] = th[i] - theta[i];
    return r;
  };
  Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd res = residual(v);
  for (int it = 0; it < 60 && res.norm() > 1e-12; ++it) {
    Eigen::MatrixXd J(m, m);
    const double h = 1e-6;
    for (std::size_t j = 0; j < m; ++j) {
      Eigen::VectorXd vp = v, vm = v;
      vp[j] += h;
      vm[j] -= h;
      J.col(j) = (residual(vp) - residual(vm)) / (2 * h);
    }
    const Eigen::VectorXd step = J.fullPivLu().solve(-res);
    double lam = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 30; ++bt) {
      const Eigen::VectorXd cand = v + lam * step;
      const Eigen::VectorXd rc = residual(cand);
      if (rc.norm() < res.norm()) {
        v = cand;
        res = rc;
        accepted = true;
        break;
      }
      lam *= 0.5;
    }
    if (!accepted) break;
  }
  if (res.norm() > 1e-9) throw NumericError("target angles: Newton did not converge", res.norm());
  return normalized(to_a(v));
}

double LawlorParams::cinf(int m) const {
  if (m != 1 && m != 2) throw ArgumentError("end index must be 1 or 2");
  return m == 1 ? -A_ : A_;
}

double LawlorParams::plane_phase(int m, std::size_t k) const {
  if (m != 1 && m != 2) throw ArgumentError("end index must be 1 or 2");
  return m == 1 ? 0.0 : theta_.at(k);
}

double LawlorParams::P(double x) const { return eval_P(tables_->e, x); }

double LawlorParams::psi(std::size_t k, double y) const {
  if (k >= n()) throw ArgumentError("psi: axis index out of range");
  if (y > 0.0) return theta_[k] - tables_->phase_right(y)[k];
  return tables_->phase_left(y)[k];
}

double LawlorParams::psi_tail(std::size_t k, double y) const {
  if (k >= n()) throw ArgumentError("psi_tail: axis index out of range");
  if (y > 0.0) return tables_->phase_right(y)[k];
  return theta_[k] - tables_->phase_left(y)[k];
}

double LawlorParams::psi_prime(std::size_t k, double y) const {
  return a_.at(k) / ((1.0 + a_[k] * y * y) * std::sqrt(P(y)));
}

double LawlorParams::beta(double y) const {
  if (y > 0.0) return A_ - tables_->phase_right(y)[n()];
  return tables_->phase_left(y)[n()] - A_;
}

double LawlorParams::beta_prime(double y) const { return 0.5 / std::sqrt(P(y)); }

double LawlorParams::graphical_radius() const {
  std::call_once(tables_->lambda_once, [this] {
    const auto pts = sphere_points(n(), 512);
    for (int e = 0; e <= 30; ++e) {
      const double R = std::ldexp(1.0, e);
      double sup = 0.0;
      bool ok = true;
      for (int m = 1; m <= 2 && ok; ++m) {
        for (const auto& s : pts) {
          Eigen::VectorXd x(n());
          for (std::size_t k = 0; k < n(); ++k) x[k] = R * s[k];
          try {
            sup = std::max(sup, graph_potential_unchecked(*this, m, x, false).grad.norm());
          } catch (const DomainError&) {
            ok = false;
            break;
          }
          if (sup >= 0.05) {
            ok = false;
            break;
          }
        }
      }
      if (ok) {
        tables_->lambda = R;
        return;
      }
    }
    throw NumericError("graphical radius not found below 2^30", 0.0);
  });
  return tables_->lambda;
}

std::vector<double> lawlor_angles(const std::vector<double>& a) {
  check_a(a);
  const auto e = elementary_symmetric(a);
  std::vector<double> th(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double ak = a[k];
    th[k] = integrate([&](double t) { return ak / ((1.0 + ak * t * t) * std::sqrt(eval_P(e, t))); },
                      -INFINITY, INFINITY)
                .value;
  }
  return th;
}

double poly_P(const LawlorParams& params, double x) { return params.P(x); }
double psi(const LawlorParams& params, std::size_t k, double y) { return params.psi(k, y); }

double psi_quadrature(const LawlorParams& params, std::size_t k, double y) {
  if (k >= params.n()) throw ArgumentError("psi: axis index out of range");
  const double ak = params.a()[k];
  return integrate([&](double t) { return ak / ((1.0 + ak * t * t) * std::sqrt(params.P(t))); },
                   -INFINITY, y)
      .value;
}

double beta_L(const LawlorParams& params, double y) { return params.beta(y); }

double beta_quadrature(const LawlorParams& params, double y) {
  auto f = [&](double t) { return 1.0 / std::sqrt(params.P(t)); };
  const double A = 0.25 * integrate(f, -INFINITY, INFINITY).value;
  return 0.5 * integrate(f, -INFINITY, y).value - A;
}

std::array<double, 2> c_infinity(const LawlorParams& params) { return {params.cinf(1), params.cinf(2)}; }

namespace {

void check_sigma(const std::vector<double>& sigma, std::size_t n) {
  if (sigma.size() != n) throw ArgumentError("sigma has wrong dimension");
  if (std::abs(norm2(sigma) - 1.0) > 1e-12) throw ArgumentError("sigma must be a unit vector");
}

}  // namespace

CVec embed_neck(const LawlorParams& params, const NeckChart& c) {
  const std::size_t n = params.n();
  check_sigma(c.sigma, n);
  std::vector<cplx> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double rho = std::sqrt(1.0 / params.a()[k] + c.y * c.y);
    z[k] = c.sigma[k] * rho * std::polar(1.0, params.psi(k, c.y));
  }
  return CVec::from_complex(z);
}

Frame neck_frame(const LawlorParams& params, const NeckChart& c) {
  const std::size_t n = params.n();
  check_sigma(c.sigma, n);
  const auto basis = sphere_tangent_basis(c.sigma);
  std::vector<cplx> phase(n), dy(n);
  std::vector<double> rho(n);
  for (std::size_t k = 0; k < n; ++k) {
    rho[k] = std::sqrt(1.0 / params.a()[k] + c.y * c.y);
    phase[k] = std::polar(1.0, params.psi(k, c.y));
    dy[k] = c.sigma[k] * phase[k] * cplx(c.y / rho[k], rho[k] * params.psi_prime(k, c.y));
  }
  std::vector<CVec> cols;
  cols.push_back(CVec::from_complex(dy));
  for (const auto& e : basis) {
    std::vector<cplx> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = e[k] * rho[k] * phase[k];
    cols.push_back(CVec::from_complex(v));
  }
  return Frame(std::move(cols));
}

GraphPotential graph_potential_unchecked(const LawlorParams& params, int m, const Eigen::VectorXd& x,
                                         bool with_hessian) {
  if (m != 1 && m != 2) throw ArgumentError("end index must be 1 or 2");
  const std::size_t n = params.n();
  if (static_cast<std::size_t>(x.size()) != n) throw ArgumentError("graph potential: wrong dimension");
  const double r = x.norm();
  if (!(r > 0.0)) throw DomainError("graph potential: r must be positive");
  const auto& T = *params.tables_;
  const auto& a = params.a();

  auto F = [&](double y) {
    const auto ph = T.rel_phase(m, y);
    double s = -1.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double pc = std::sqrt(1.0 / a[k] + y * y) * std::cos(ph[k]);
      s += x[k] * x[k] / (pc * pc);
    }
    return s;
  };
  auto cos_ok = [&](double y) {
    for (double p : T.rel_phase(m, y))
      if (std::cos(p) < 0.02) return false;
    return true;
  };

  // m = 1: y <= 0 and F increasing; m = 2: y >= 0 and F decreasing.
  const double dir = m == 1 ? -1.0 : 1.0;
  double inner = 0.0;
  for (int i = 0; i < 60 && !cos_ok(inner); ++i) inner = dir * (2.0 * std::abs(inner) + 1.0);
  if (!cos_ok(inner)) throw DomainError("graph potential: no graphical chart");
  const double f_inner = F(inner);
  if (!(f_inner > 0.0)) throw DomainError("graph potential: point not covered by the graph");
  double outer = dir * 2.0 * (r + 1.0);
  double f_outer = F(outer);
  for (int i = 0; i < 60 && f_outer >= 0.0; ++i) {
    outer *= 2.0;
    f_outer = F(outer);
  }
  if (f_outer >= 0.0) throw NumericError("graph potential: bracket failed", f_outer);

  boost::uintmax_t iters = 200;
  const double lo = std::min(inner, outer), hi = std::max(inner, outer);
  const double f_lo = m == 1 ? f_outer : f_inner;
  const double f_hi = m == 1 ? f_inner : f_outer;
  const auto root = boost::math::tools::toms748_solve(F, lo, hi, f_lo, f_hi,
                                                      boost::math::tools::eps_tolerance<double>(52), iters);
  const double y = 0.5 * (root.first + root.second);

  const auto ph = T.rel_phase(m, y);
  GraphPotential out;
  out.grad.resize(n);
  std::vector<double> sig(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double rho = std::sqrt(1.0 / a[k] + y * y);
    sig[k] = x[k] / (rho * std::cos(ph[k]));
    out.grad[k] = x[k] * std::tan(ph[k]);
  }
  sig = normalized(sig);
  out.g = 0.0;
  for (std::size_t k = 0; k < n; ++k) out.g += sig[k] * sig[k] * T.q(m, k, y);
  out.chart = NeckChart{y, sig};

  if (with_hessian) {
    const Frame fr = neck_frame(params, out.chart);
    Eigen::MatrixXcd M = fr.matrix();
    for (std::size_t k = 0; k < n; ++k) M.row(k) *= std::polar(1.0, -params.plane_phase(m, k));
    const Eigen::MatrixXd re = M.real(), im = M.imag();
    Eigen::MatrixXd H = re.transpose().fullPivLu().solve(im.transpose()).transpose();
    out.hess = 0.5 * (H + H.transpose());
  }
  return out;
}

GraphPotential neck_graph_potential(const LawlorParams& params, const ConePoint& p) {
  check_sigma(p.sigma, params.n());
  if (!(p.r >= params.graphical_radius()))
    throw DomainError("graph potential: r below the graphical radius");
  Eigen::VectorXd x(params.n());
  for (std::size_t k = 0; k < params.n(); ++k) x[k] = p.r * p.sigma[k];
  return graph_potential_unchecked(params, p.m, x, true);
}

CVec graph_point(const LawlorParams& params, int m, const Eigen::VectorXd& x, const Eigen::VectorXd& grad) {
  std::vector<cplx> z(params.n());
  for (std::size_t k = 0; k < params.n(); ++k)
    z[k] = std::polar(1.0, params.plane_phase(m, k)) * cplx(x[k], grad[k]);
  return CVec::from_complex(z);
}

void write_neck_table_csv(std::ostream& os, const LawlorParams& params, const std::vector<ConePoint>& points) {
  const std::size_t n = params.n();
  os << "m";
  for (std::size_t k = 1; k <= n; ++k) os << ",sigma" << k;
  os << ",r,g";
  for (std::size_t k = 1; k <= n; ++k) os << ",dg" << k;
  os << '\n';
  os.precision(17);
  for (const auto& p : points) {
    const auto gp = neck_graph_potential(params, p);
    os << p.m;
    for (double s : p.sigma) os << ',' << s;
    os << ',' << p.r << ',' << gp.g;
    for (std::size_t k = 0; k < n; ++k) os << ',' << gp.grad[k];
    os << '\n';
  }
}

std::string golden_constants_json(const LawlorParams& params) {
  nlohmann::json j;
  j["n"] = params.n();
  j["a"] = params.a();
  j["theta"] = params.theta();
  double sum = 0.0;
  for (double t : params.theta()) sum += t;
  j["theta_sum"] = sum;
  j["A"] = params.A();
  j["c_inf"] = {params.cinf(1), params.cinf(2)};
  j["graphical_radius"] = params.graphical_radius();
  return j.dump(2);
}

}  // namespace slcyl

#include "slcyl/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

#include "json.hpp"

#include "slcyl/errors.hpp"
#include "slcyl/harmonic.hpp"
#include "slcyl/quadrature.hpp"
#include "slcyl/sphere.hpp"
#include "slcyl/weighted.hpp"

namespace slcyl {

double directed_hausdorff(const std::vector<CVec>& from, const std::vector<CVec>& to) {
  if (to.empty()) throw InsufficientSamplesError("hausdorff: empty target set");
  double worst = 0.0;
  for (const auto& p : from) {
    double best = INFINITY;
    for (const auto& q : to) best = std::min(best, distance(p, q));
    worst = std::max(worst, best);
  }
  return worst;
}

double hausdorff(const std::vector<CVec>& a, const std::vector<CVec>& b) {
  return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

namespace {

void check_scales(const std::vector<double>& scales) {
  if (scales.empty()) throw ArgumentError("probe: no scales");
  for (std::size_t i = 0; i < scales.size(); ++i) {
    if (!(scales[i] > 0.0)) throw ArgumentError("probe: scales must be positive");
    if (i > 0 && !(scales[i] < scales[i - 1])) throw ArgumentError("probe: scales must decrease");
  }
}

}  // namespace

ProbeResult tangent_cone_probe(const Model& model, const std::vector<double>& scales, std::size_t samples,
                               std::uint64_t seed) {
  check_scales(scales);
  if (scales.front() >= 1.0 / model.profile.A) throw ArgumentError("probe: scales must lie in (0, 1/A)");
  const auto& pr = model.profile;
  ProbeResult out;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    const double rho = scales[i];
    // uniform shell samples rarely reach the neck, so X2 samples are added
    auto xs = sample_X_shell(model, rho, 2.0 * rho, samples, seed + i);
    if (xs.size() < samples / 2)
      throw InsufficientSamplesError("probe: shell at rho = " + std::to_string(rho) + " gave " +
                                     std::to_string(xs.size()) + " samples");
    for (auto& s : sample_X2_shell(model, rho, 2.0 * rho, samples / 4, seed + 2000 + i)) xs.push_back(std::move(s));
    double fwd = 0.0;
    for (const auto& s : xs) fwd = std::max(fwd, cone_distance(model.neck, s.point * (1.0 / rho)));
    // cone points, plus points near the axis with r log-uniform down to 0.1 rho^a
    auto cps = sample_cone_shell(model.neck.n(), rho, 2.0 * rho, samples, seed + 1000 + i);
    {
      std::mt19937_64 rng(seed + 3000 + i);
      std::uniform_real_distribution<double> U(0.0, 1.0);
      const double lo = std::log(0.1 * std::pow(rho, pr.a - 1.0));
      for (const auto& cp : sample_cone_shell(model.neck.n(), rho, 2.0 * rho, samples / 4, seed + 4000 + i)) {
        CylinderPoint q = cp;
        const double rh = std::hypot(cp.r, cp.u);
        q.r = rh * std::exp(lo * U(rng));
        q.u = std::copysign(std::sqrt(rh * rh - q.r * q.r), cp.u);
        cps.push_back(q);
      }
    }
    double rev = 0.0;
    for (const auto& cp : cps) {
      const CVec c = cone_point(model.neck, cp);
      CylinderPoint q = cp;
      const double waist = pr.Lambda * std::pow(std::abs(q.u), pr.a);
      if (q.u != 0.0 && q.r < waist) q.r = waist;
      try {
        rev = std::max(rev, distance(assemble_X(model, q).point, c) / rho);
      } catch (const DomainError&) {
      }
    }
    out.scales.push_back(rho);
    out.forward.push_back(fwd);
    out.reverse.push_back(rev);
    out.distances.push_back(std::max(fwd, rev));
    out.counts.push_back(xs.size());
  }
  return out;
}

ProbeResult tangent_cone_probe(const LawlorParams& params,
                               const std::function<std::vector<CVec>(double, std::uint64_t)>& shell,
                               const std::vector<double>& scales, std::size_t samples, std::uint64_t seed) {
  check_scales(scales);
  ProbeResult out;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    const double rho = scales[i];
    auto pts = shell(rho, seed + i);
    if (pts.size() < samples / 2)
      throw InsufficientSamplesError("probe: shell at rho = " + std::to_string(rho) + " gave " +
                                     std::to_string(pts.size()) + " samples");
    double fwd = 0.0;
    for (auto& p : pts) {
      p *= 1.0 / rho;
      fwd = std::max(fwd, cone_distance(params, p));
    }
    std::vector<CVec> cone;
    for (const auto& cp : sample_cone_shell(params.n(), 1.0, 2.0, samples, seed + 1000 + i))
      cone.push_back(cone_point(params, cp));
    const double rev = directed_hausdorff(cone, pts);
    out.scales.push_back(rho);
    out.forward.push_back(fwd);
    out.reverse.push_back(rev);
    out.distances.push_back(std::max(fwd, rev));
    out.counts.push_back(pts.size());
  }
  return out;
}

CollapseResult x2_collapse(const Model& model, double rho, std::size_t samples, std::uint64_t seed) {
  CollapseResult out;
  for (const auto& s : sample_X2_shell(model, rho, 2.0 * rho, samples, seed)) {
    const double r = s.point.r();
    out.max_ratio = std::max(out.max_ratio, r / std::pow(std::abs(s.u), model.profile.b));
    out.max_rescaled_r = std::max(out.max_rescaled_r, r / rho);
    ++out.count;
  }
  return out;
}

namespace {

struct DisjointSets {
  std::vector<std::size_t> parent, size;
  explicit DisjointSets(std::size_t n) : parent(n), size(n, 1) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
};

// Points sorted by r with flat coordinates.
struct SortedCloud {
  std::size_t dim = 0;
  std::vector<double> xs;
  std::vector<double> r;
  explicit SortedCloud(const std::vector<CVec>& points) {
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> rr(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) rr[i] = points[i].r();
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rr[a] < rr[b]; });
    dim = points.empty() ? 0 : points.front().coords().size();
    xs.reserve(dim * points.size());
    for (std::size_t i : order) {
      const auto c = points[i].coords();
      xs.insert(xs.end(), c.begin(), c.end());
      r.push_back(rr[i]);
    }
  }
  std::size_t size() const { return r.size(); }
  double dist2(std::size_t i, std::size_t j) const {
    const double* a = xs.data() + i * dim;
    const double* b = xs.data() + j * dim;
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
    return s;
  }
};

std::size_t count_components(const SortedCloud& c, double eps, std::vector<std::size_t>* sizes) {
  const std::size_t N = c.size();
  DisjointSets ds(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double reach = eps * c.r[i];
    const double reach2 = reach * reach;
    for (std::size_t j = i + 1; j < N && c.r[j] - c.r[i] <= reach; ++j)
      if (c.dist2(i, j) <= reach2) ds.unite(i, j);
  }
  std::size_t count = 0;
  if (sizes) sizes->clear();
  for (std::size_t i = 0; i < N; ++i)
    if (ds.find(i) == i) {
      ++count;
      if (sizes) sizes->push_back(ds.size[i]);
    }
  if (sizes) std::sort(sizes->rbegin(), sizes->rend());
  return count;
}

}  // namespace

double census_epsilon(const std::vector<CVec>& points) {
  if (points.size() < 2) throw ArgumentError("census: need at least 2 samples");
  const SortedCloud c(points);
  const std::size_t N = c.size();
  std::vector<double> nn(N, INFINITY);
  for (std::size_t i = 0; i < N; ++i) {
    double best2 = INFINITY;  // squared, relative
    const double ri = c.r[i];
    for (std::size_t j = i + 1; j < N && (c.r[j] - ri) * (c.r[j] - ri) <= best2 * ri * ri; ++j)
      best2 = std::min(best2, c.dist2(i, j) / (ri * ri));
    for (std::size_t j = i; j-- > 0 && (ri - c.r[j]) * (ri - c.r[j]) <= best2 * c.r[j] * c.r[j];)
      best2 = std::min(best2, c.dist2(i, j) / (c.r[j] * c.r[j]));
    nn[i] = std::sqrt(best2);
  }
  auto mid = nn.begin() + static_cast<std::ptrdiff_t>(N / 2);
  std::nth_element(nn.begin(), mid, nn.end());
  return 3.0 * *mid;
}

CensusResult connectivity_census(const std::vector<CVec>& points, double epsilon) {
  if (points.size() < 2) throw ArgumentError("census: need at least 2 samples");
  if (!(epsilon > 0.0)) throw ArgumentError("census: epsilon must be positive");
  for (const auto& p : points)
    if (!(p.r() > 0.0)) throw ArgumentError("census: samples must avoid the axis r = 0");
  const SortedCloud c(points);
  CensusResult out;
  out.epsilon = epsilon;
  out.components = count_components(c, epsilon, &out.sizes);
  // plateau: one step of sqrt 2 each way
  double lo = 1.0, hi = 1.0;
  if (count_components(c, epsilon * std::sqrt(0.5), nullptr) == out.components) lo = std::sqrt(0.5);
  if (count_components(c, epsilon * std::sqrt(2.0), nullptr) == out.components) hi = std::sqrt(2.0);
  out.plateau = hi / lo;
  return out;
}

CensusResult connectivity_census(const std::vector<CVec>& points) {
  return connectivity_census(points, census_epsilon(points));
}

void SuiteConfig::validate() const {
  if (lawlor_a.size() < 3) throw ArgumentError("config: n >= 3 required (lawlor a has " +
                                               std::to_string(lawlor_a.size()) + " entries)");
  for (double v : lawlor_a)
    if (!(v > 0.0)) throw ArgumentError("config: every lawlor a_k must be > 0");
  if (a <= 1) throw ArgumentError("config: integer a > 1 required");
  if (!(b > 1.0 && b < a)) throw ArgumentError("config: b in (1, a) required");
  if (!(A > 0.0)) throw ArgumentError("config: A > 0 required");
  if (A_exp_hi - A_exp_lo < 3) throw ArgumentError("config: A-list needs at least 4 entries");
  if (depth < 2) throw ArgumentError("config: depth >= 2 required");
  // the neck waist r ~ |u|^a at the largest A must lie inside the sweep
  if (depth < a * (A_exp_hi + 1)) throw ArgumentError("config: depth >= a (A_exp_hi + 1) required");
  if (probe_hi <= probe_lo) throw ArgumentError("config: probe range must contain 2 scales");
  if (charts < 2 || box_samples < 2 || probe_samples < 2) throw ArgumentError("config: sample counts >= 2 required");
}

bool Report::all_pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string Report::json() const {
  using nlohmann::json;
  json cfg{{"lawlor_a", config.lawlor_a},   {"a", config.a},
           {"b", config.b},                 {"A", config.A},
           {"A_exp_lo", config.A_exp_lo},   {"A_exp_hi", config.A_exp_hi},
           {"depth", config.depth},         {"box_samples", config.box_samples},
           {"probe_lo", config.probe_lo},   {"probe_hi", config.probe_hi},
           {"probe_samples", config.probe_samples}, {"charts", config.charts},
           {"seed", config.seed}};
  json checks_j = json::array();
  for (const auto& c : checks) {
    json m = std::isfinite(c.measured) ? json(c.measured) : json(nullptr);
    checks_j.push_back({{"id", c.id},
                        {"name", c.name},
                        {"anchor", c.anchor},
                        {"measured", m},
                        {"tolerance", c.tolerance},
                        {"comparison", c.comparison},
                        {"pass", c.pass},
                        {"detail", c.detail},
                        {"seed", c.seed}});
  }
  json j{{"schema_version", schema_version},
         {"config", cfg},
         {"checks", checks_j},
         {"all_pass", all_pass()},
         {"notes", "Hoelder seminorms are lower-bound estimates from sampled point pairs"}};
  return j.dump(2);
}

std::string Report::summary_csv() const {
  std::ostringstream os;
  os.precision(10);
  os << "id,name,measured,tolerance,comparison,pass\n";
  for (const auto& c : checks)
    os << c.id << ',' << c.name << ',' << c.measured << ',' << c.tolerance << ',' << c.comparison << ','
       << (c.pass ? 1 : 0) << '\n';
  return os.str();
}

namespace {

constexpr double pi = std::numbers::pi;

std::vector<double> random_unit(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> N;
  std::vector<double> s(n);
  for (double& x : s) x = N(rng);
  return normalized(s);
}

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

double dist_mod_pi(double theta) { return std::abs(std::remainder(theta, pi)); }

double median(std::vector<double> v) {
  auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Chart (y, s_1..s_{n-1}[, u]) around a base neck chart.
struct NeckLocal {
  NeckChart base;
  std::vector<std::vector<double>> basis;
  /// optional linear recombination of the chart coordinates
  Eigen::MatrixXd mix;
  NeckLocal(double y, std::vector<double> sigma) : base{y, std::move(sigma)}, basis(sphere_tangent_basis(base.sigma)) {}
  NeckChart at(std::span<const double> q) const {
    if (mix.size() == 0) return NeckChart{base.y + q[0], sphere_chart(base.sigma, basis, q.data() + 1)};
    const Eigen::VectorXd w = mix * Eigen::Map<const Eigen::VectorXd>(q.data(), mix.cols());
    return NeckChart{base.y + w[0], sphere_chart(base.sigma, basis, w.data() + 1)};
  }
};

struct Context {
  const SuiteConfig& cfg;
  const LawlorParams& neck;
  const Model& model;
  std::vector<double> A_list() const {
    std::vector<double> v;
    for (int e = cfg.A_exp_lo; e <= cfg.A_exp_hi; ++e) v.push_back(std::ldexp(1.0, e));
    return v;
  }
};

void c1_angles(const Context& ctx, Check& c) {
  c.name = "lawlor_angle_sum";
  c.anchor = "theta_1 + ... + theta_n = pi; theta_k = pi/3 for a = (1,1,1)";
  c.tolerance = 1e-8;
  c.comparison = "<=";
  std::mt19937_64 rng(c.seed);
  double worst = 0.0;
  for (int t = 0; t < 5; ++t) {
    std::vector<double> a(3);
    for (double& v : a) v = uniform(rng, 0.2, 3.0);
    const auto th = lawlor_angles(a);
    worst = std::max(worst, std::abs(std::accumulate(th.begin(), th.end(), 0.0) - pi));
  }
  const auto sym = lawlor_angles({1.0, 1.0, 1.0});
  double sym_err = 0.0;
  for (double t : sym) sym_err = std::max(sym_err, std::abs(t - pi / 3));
  worst = std::max(worst, std::abs(std::accumulate(sym.begin(), sym.end(), 0.0) - pi));
  c.measured = std::max(worst, sym_err);
  c.pass = c.measured <= c.tolerance;
  c.detail = "max |sum - pi| = " + fmt(worst) + ", max |theta_k - pi/3| = " + fmt(sym_err);
  (void)ctx;
}

void c2_neck_special(const Context& ctx, Check& c) {
  c.name = "neck_special_lagrangian";
  c.anchor = "Lawlor neck has Lagrangian angle 0 mod pi; pullback residual O(h^2)";
  c.tolerance = 1e-6;
  c.comparison = "angle <= tol and median residual ratio in [3.5, 4.5]";
  std::mt19937_64 rng(c.seed);
  const std::size_t n = ctx.neck.n();
  double worst = 0.0;
  std::vector<double> ratios;
  for (std::size_t i = 0; i < ctx.cfg.charts; ++i) {
    NeckLocal loc(uniform(rng, -2.0, 2.0), random_unit(n, rng));
    // product charts make the FD error cancel exactly; mix the coordinates
    loc.mix = Eigen::MatrixXd::Identity(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t k = 0; k < n; ++k)
        if (r != k) loc.mix(r, k) = uniform(rng, -0.5, 0.5);
    const ChartMap f = [&](std::span<const double> q) { return embed_neck(ctx.neck, loc.at(q)); };
    const std::vector<double> p(n, 0.0);
    worst = std::max(worst, dist_mod_pi(lagrangian_angle(Frame(fd_tangents(f, p, 1e-5)))));
    const double r1 = pullback_residual(f, p, 1e-2), r2 = pullback_residual(f, p, 5e-3);
    if (r2 > 0.0) ratios.push_back(r1 / r2);
  }
  const double ratio = ratios.empty() ? 0.0 : median(ratios);
  c.measured = worst;
  c.pass = worst <= c.tolerance && ratio >= 3.5 && ratio <= 4.5;
  c.detail = "max angle = " + fmt(worst) + ", median residual ratio = " + fmt(ratio);
}

void c3_liouville(const Context& ctx, Check& c) {
  c.name = "liouville_consistency";
  c.anchor = "d beta_L = lambda|_L; beta_L = c_m - g + x.grad(g)/2 on the graphical region";
  c.tolerance = 1e-7;
  c.comparison = "path error <= 1e-7 and relative identity error <= 1e-6";
  std::mt19937_64 rng(c.seed);
  const auto& L = ctx.neck;
  const std::size_t n = L.n();
  double path_err = 0.0;
  // paths: y linear, sigma along a great circle; z is linear in sigma
  for (int i = 0; i < 20; ++i) {
    const double y0 = uniform(rng, -3.0, 3.0), dy = uniform(rng, -3.0, 3.0);
    const auto s0 = random_unit(n, rng);
    auto e = random_unit(n, rng);
    double proj = 0.0;
    for (std::size_t k = 0; k < n; ++k) proj += e[k] * s0[k];
    for (std::size_t k = 0; k < n; ++k) e[k] -= proj * s0[k];
    e = normalized(e);
    const double alpha = uniform(rng, -1.0, 1.0);
    auto lam = [&](double t) {
      const double y = y0 + t * dy, ca = std::cos(t * alpha), sa = std::sin(t * alpha);
      std::vector<cplx> z(n), dz(n);
      for (std::size_t k = 0; k < n; ++k) {
        const double sig = ca * s0[k] + sa * e[k], dsig = alpha * (ca * e[k] - sa * s0[k]);
        const double w = std::sqrt(1.0 / L.a()[k] + y * y);
        const cplx ph = std::polar(1.0, L.psi(k, y));
        z[k] = sig * w * ph;
        dz[k] = dsig * w * ph + dy * sig * cplx(y / w, w * L.psi_prime(k, y)) * ph;
      }
      return liouville_form(CVec::from_complex(z), CVec::from_complex(dz));
    };
    const double line = integrate(lam, 0.0, 1.0, 1e-12, 1e-9).value;
    path_err = std::max(path_err, std::abs(line - (L.beta(y0 + dy) - L.beta(y0))));
  }
  double rel = 0.0;
  const double Lam = L.graphical_radius();
  for (int i = 0; i < 100; ++i) {
    const int m = i % 2 + 1;
    const double r = Lam * std::pow(2.0, uniform(rng, 0.0, 3.0));
    const auto sigma = random_unit(n, rng);
    const auto gp = neck_graph_potential(L, ConePoint{m, sigma, r});
    Eigen::VectorXd x(static_cast<Eigen::Index>(n));
    for (std::size_t k = 0; k < n; ++k) x[static_cast<Eigen::Index>(k)] = r * sigma[k];
    const double lhs = L.beta(gp.chart.y);
    const double rhs = L.cinf(m) - gp.g + 0.5 * x.dot(gp.grad);
    rel = std::max(rel, std::abs(lhs - rhs) / std::abs(lhs));
  }
  c.measured = path_err;
  c.pass = path_err <= 1e-7 && rel <= 1e-6;
  c.detail = "max path error = " + fmt(path_err) + ", max relative identity error = " + fmt(rel);
}

void c4_decay(const Context& ctx, Check& c) {
  c.name = "graph_potential_decay";
  c.anchor = "|grad g| ~ r^{1-n}";
  const double n = static_cast<double>(ctx.neck.n());
  c.tolerance = 0.1;
  c.comparison = "|slope - (1-n)| <= tol";
  const auto dirs = sphere_points(ctx.neck.n(), 512);
  const double Lam = ctx.neck.graphical_radius();
  std::vector<std::pair<double, double>> pairs;
  for (int k = 0; k <= 6; ++k) {
    const double r = Lam * std::ldexp(1.0, k);
    double sup = 0.0;
    for (int m = 1; m <= 2; ++m)
      for (const auto& s : dirs) sup = std::max(sup, neck_graph_potential(ctx.neck, ConePoint{m, s, r}).grad.norm());
    pairs.emplace_back(r, sup);
  }
  const auto fit = exponent_fit(pairs);
  c.measured = std::abs(fit.slope - (1.0 - n));
  c.pass = c.measured <= c.tolerance;
  c.detail = "slope = " + fmt(fit.slope) + ", r2 = " + fmt(fit.r2);
}

void c5_harmonic(const Context& ctx, Check& c) {
  c.name = "phi_harmonic";
  c.anchor = "Laplacian of phi_a vanishes identically";
  c.tolerance = 0.5;
  c.comparison = "all exact residuals zero and |fd ratio - 4| <= tol";
  std::size_t nonzero = 0;
  for (int n = 3; n <= 5; ++n)
    for (int a = 1; a <= 8; ++a)
      if (!cylinder_laplacian(phi_polynomial(a, n), n).is_zero()) ++nonzero;
  std::mt19937_64 rng(c.seed);
  const std::size_t n = ctx.neck.n();
  const auto& poly = ctx.model.phi;
  double res1 = 0.0, res2 = 0.0;
  for (int i = 0; i < 50; ++i) {
    const int m = i % 2 + 1;
    std::vector<double> p(n + 1);
    for (double& v : p) v = uniform(rng, -1.0, 1.0);
    const ScalarField f = [&](std::span<const double> q) {
      Eigen::Map<const Eigen::VectorXd> x(q.data(), static_cast<Eigen::Index>(n));
      return eval_phi_cartesian(poly, m, x, q[n]).value;
    };
    res1 = std::max(res1, std::abs(fd_jet(f, p, 2, 1e-2).hessian.trace()));
    res2 = std::max(res2, std::abs(fd_jet(f, p, 2, 5e-3).hessian.trace()));
  }
  const double ratio = res1 / res2;
  c.measured = std::abs(ratio - 4.0);
  c.pass = nonzero == 0 && c.measured <= c.tolerance;
  c.detail = "nonzero exact Laplacians = " + std::to_string(nonzero) + ", fd residuals " + fmt(res1) + " -> " +
             fmt(res2) + " (ratio " + fmt(ratio) + ")";
}

void c6_gap(const Context&, Check& c) {
  c.name = "spectral_gap";
  c.anchor = "no homogeneous harmonic degrees in (2-n, 0)";
  c.tolerance = 0.0;
  c.comparison = "degrees found == 0";
  std::size_t found = 0;
  for (int n = 3; n <= 5; ++n)
    for (auto kind : {LinkKind::UnitSphere, LinkKind::PairOfUnitSpheres})
      found += degree_set(LinkSpec{n, kind, {}}, 2.0 - n, 0.0).size();
  c.measured = static_cast<double>(found);
  c.pass = found == 0;
  c.detail = "n in {3,4,5}, sphere and pair links";
}

void c7_x2_lagrangian(const Context& ctx, Check& c) {
  c.name = "x2_lagrangian_x0_not";
  c.anchor = "X2 is a Lagrangian embedding; X0 is not Lagrangian";
  c.tolerance = 0.5;
  c.comparison = "|median X2 ratio - 4| <= tol and X0 positive limits at >= half the charts";
  std::mt19937_64 rng(c.seed);
  const std::size_t n = ctx.neck.n();
  const int a = ctx.cfg.a;
  std::vector<double> ratios;
  std::size_t x0_positive = 0;
  for (std::size_t i = 0; i < ctx.cfg.charts; ++i) {
    const NeckLocal loc(uniform(rng, -2.0, 2.0), random_unit(n, rng));
    double u0 = uniform(rng, 0.3, 0.9);
    if (i % 2) u0 = -u0;
    const ChartMap x2 = [&](std::span<const double> q) { return embed_X2(ctx.neck, a, loc.at(q), u0 + q[n]); };
    const ChartMap x0 = [&](std::span<const double> q) { return embed_X0(ctx.neck, a, loc.at(q), u0 + q[n]); };
    const std::vector<double> p(n + 1, 0.0);
    const double r1 = pullback_residual(x2, p, 1e-2), r2 = pullback_residual(x2, p, 5e-3);
    if (r2 > 0.0) ratios.push_back(r1 / r2);
    const double s1 = pullback_residual(x0, p, 1e-2), s2 = pullback_residual(x0, p, 5e-3);
    if (s2 > 1e-3 && std::abs(s1 - s2) <= 0.05 * s2) ++x0_positive;
  }
  const double ratio = ratios.empty() ? 0.0 : median(ratios);
  c.measured = std::abs(ratio - 4.0);
  c.pass = c.measured <= c.tolerance && 2 * x0_positive >= ctx.cfg.charts;
  c.detail = "median X2 residual ratio = " + fmt(ratio) + ", X0 charts with positive limit = " +
             std::to_string(x0_positive) + "/" + std::to_string(ctx.cfg.charts);
}

void c8_angle_closed(const Context& ctx, Check& c) {
  c.name = "x2_angle_closed_form";
  c.anchor = "theta(X2) = arg(1 + |u|^{2a-2} E(x))";
  c.tolerance = 1e-8;
  c.comparison = "<=";
  std::mt19937_64 rng(c.seed);
  double worst = 0.0;
  for (std::size_t i = 0; i < ctx.cfg.charts; ++i) {
    const NeckChart x{uniform(rng, -3.0, 3.0), random_unit(ctx.neck.n(), rng)};
    double u = std::exp(uniform(rng, std::log(0.01), std::log(0.9)));
    if (i % 2) u = -u;
    const double raw = x2_angle_raw(ctx.neck, ctx.cfg.a, x, u);
    const double closed = x2_angle_closed(ctx.neck, ctx.cfg.a, x, u);
    worst = std::max(worst, dist_mod_pi(raw - closed));
  }
  c.measured = worst;
  c.pass = worst <= c.tolerance;
}

void c9_equivalence(const Context& ctx, Check& c) {
  c.name = "x2_equivalence";
  c.anchor = "X2 coincides with graph(dG) on r >= Lambda |u|^a";
  c.tolerance = 1e-8;
  c.comparison = "<=";
  std::mt19937_64 rng(c.seed);
  const auto& pr = ctx.model.profile;
  const PotentialField G = [&](int m, const Eigen::VectorXd& x, double u) {
    return potential_G_jet(ctx.model, m, x, u).jet;
  };
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    double u = uniform(rng, 0.1, 0.9);
    if (i % 2) u = -u;
    const double r = pr.Lambda * std::pow(std::abs(u), pr.a) * std::pow(2.0, uniform(rng, 0.0, 3.0));
    const CylinderPoint cp{i % 4 < 2 ? 1 : 2, random_unit(ctx.neck.n(), rng), r, u};
    const auto pj = potential_G_jet(ctx.model, cp.m, cylinder_x(cp), u);
    const CVec a = embed_X2(ctx.neck, pr.a, pj.chart, u);
    const CVec b = graph_over_plane_pair(ctx.neck, G, cp);
    worst = std::max(worst, distance(a, b));
  }
  c.measured = worst;
  c.pass = worst <= c.tolerance;
}

void c10_cancellation(const Context& ctx, Check& c) {
  c.name = "cancellation_rate";
  c.anchor = "leading term -u^{2a} c_m cancels in G - phi_a";
  const double n = static_cast<double>(ctx.neck.n()), a = ctx.cfg.a, b = ctx.cfg.b;
  c.tolerance = std::min(2.0 * (b - 1.0), (b - a) * (2.0 - n)) - 0.15;
  c.comparison = ">=";
  std::vector<std::pair<double, double>> pairs;
  for (int e = 5; e <= 12; ++e) {
    const double u = std::ldexp(1.0, -e);
    pairs.emplace_back(u, cancellation_gap(ctx.model, u));
  }
  const auto fit = exponent_fit(pairs);
  c.measured = fit.slope;
  c.pass = fit.slope >= c.tolerance;
  c.detail = "r2 = " + fmt(fit.r2) + ", gap at u = 2^-12: " + fmt(pairs.back().second);
}

void c11_weighted_angle(const Context& ctx, Check& c) {
  c.name = "weighted_angle_decay";
  c.anchor = "|theta_X| <= C S^{2a} R^{-2} on boxes, sup decays like A^{-kappa}";
  c.tolerance = 0.0;
  c.comparison = "kappa > tol, fit r2 >= 0.9, per-level sup non-increasing";
  const int a = ctx.cfg.a;
  const WeightSpec spec{0, 0.5, 2.0 * a - 2.0, -2.0};
  const auto sweep = dyadic_sweep(theta_sampler(ctx.model), spec, ctx.model.profile.A, ctx.cfg.depth,
                                  ctx.cfg.box_samples, c.seed);
  std::vector<std::pair<double, double>> pairs;
  for (double A : ctx.A_list()) {
    const double s = sweep.sup_within(A);
    if (s > 0.0) pairs.emplace_back(A, s);
  }
  const auto fit = exponent_fit(pairs);
  // bounded: the largest box value at the finer half of the S levels does
  // not exceed the coarser half
  double coarse = 0.0, fine = 0.0;
  const double S_mid = std::ldexp(1.0, -(ctx.cfg.A_exp_lo + ctx.cfg.depth) / 2);
  for (const auto& row : sweep.rows)
    if (!row.norm.empty) {
      double& level = row.S >= S_mid ? coarse : fine;
      level = std::max(level, row.norm.value);
    }
  c.measured = -fit.slope;
  c.pass = c.measured > c.tolerance && fit.r2 >= 0.9 && fine <= coarse;
  c.detail = "kappa = " + fmt(-fit.slope) + ", r2 = " + fmt(fit.r2) + ", sup = " + fmt(sweep.sup) +
             ", coarse/fine sup = " + fmt(coarse) + "/" + fmt(fine) + ", boxes = " + std::to_string(sweep.rows.size());
}

void c12_weight(const Context& ctx, Check& c) {
  c.name = "weight_feasibility";
  c.anchor = "sup r^{tau-2} rho^{delta-tau} <= C A^{-kappa} for delta > 2a";
  c.tolerance = 0.05;
  c.comparison = "kappa >= tol";
  const double delta = 2.0 * ctx.cfg.a + 0.1, tau = -0.1;
  const auto rep = weight_feasibility(ctx.model, delta, tau, ctx.A_list(), ctx.cfg.depth, ctx.cfg.box_samples, c.seed);
  c.measured = rep.weight_kappa;
  c.pass = rep.weight_kappa >= c.tolerance;
  c.detail = "weight kappa = " + fmt(rep.weight_kappa) + " (r2 " + fmt(rep.weight_fit.r2) +
             "), angle ratio kappa = " + fmt(rep.angle_kappa) + ", weight sup at A = 2^lo: " + fmt(rep.weight_sup.front()) +
             ", at 2^hi: " + fmt(rep.weight_sup.back());
}

void c13_probe(const Context& ctx, Check& c) {
  c.name = "tangent_cone_probe";
  c.anchor = "X has tangent cone C x R at 0";
  c.tolerance = 0.05;
  c.comparison = "strictly decreasing and final <= tol";
  std::vector<double> scales;
  for (int i = ctx.cfg.probe_lo; i <= ctx.cfg.probe_hi; ++i) scales.push_back(std::ldexp(1.0, -i));
  const auto res = tangent_cone_probe(ctx.model, scales, ctx.cfg.probe_samples, c.seed);
  bool decreasing = true;
  for (std::size_t i = 1; i < res.distances.size(); ++i) decreasing = decreasing && res.distances[i] < res.distances[i - 1];
  c.measured = res.distances.back();
  c.pass = decreasing && c.measured <= c.tolerance;
  std::ostringstream os;
  os << "distances";
  for (double d : res.distances) os << ' ' << fmt(d);
  c.detail = os.str();
}

void c14_census(const Context& ctx, Check& c) {
  c.name = "connectedness_contrast";
  c.anchor = "X minus 0 connected; cone and plane-graph union disconnected";
  c.tolerance = 0.0;
  c.comparison = "components (X, cone, union) == (1, 2, 2)";
  CensusGrid grid;
  grid.u_values = {std::ldexp(1.0, -7), std::ldexp(1.0, -8)};
  const auto x = connectivity_census(census_points_X(ctx.model, grid));
  const auto cone = connectivity_census(census_points_cone(ctx.model, grid));
  const auto uni = connectivity_census(census_points_plane_union(ctx.model, grid));
  c.measured = static_cast<double>(x.components);
  c.pass = x.components == 1 && cone.components == 2 && uni.components == 2;
  c.detail = "components " + std::to_string(x.components) + "/" + std::to_string(cone.components) + "/" +
             std::to_string(uni.components) + ", epsilon " + fmt(x.epsilon) + "/" + fmt(cone.epsilon) + "/" +
             fmt(uni.epsilon) + ", plateau " + fmt(x.plateau) + "/" + fmt(cone.plateau) + "/" + fmt(uni.plateau);
}

using CheckFn = void (*)(const Context&, Check&);

}  // namespace

Report run_suite(const SuiteConfig& config) {
  Report rep;
  rep.config = config;
  std::optional<LawlorParams> neck;
  std::optional<Model> model;
  try {
    config.validate();
    neck.emplace(LawlorParams::normalized(config.lawlor_a));
    model.emplace(Model::make(*neck, config.a, config.b, config.A));
  } catch (const std::exception& e) {
    Check c;
    c.id = 0;
    c.name = "config";
    c.anchor = "module preconditions";
    c.measured = NAN;
    c.comparison = "valid";
    c.detail = std::string("configuration rejected: ") + e.what();
    rep.checks.push_back(c);
    return rep;
  }
  const Context ctx{config, *neck, *model};
  static constexpr CheckFn fns[] = {c1_angles,        c2_neck_special,   c3_liouville,      c4_decay,
                                    c5_harmonic,      c6_gap,            c7_x2_lagrangian,  c8_angle_closed,
                                    c9_equivalence,   c10_cancellation,  c11_weighted_angle, c12_weight,
                                    c13_probe,        c14_census};
  for (int id = 1; id <= 14; ++id) {
    if (!config.only.empty() && std::find(config.only.begin(), config.only.end(), id) == config.only.end()) continue;
    Check c;
    c.id = id;
    c.seed = config.seed + 7919ULL * static_cast<std::uint64_t>(id);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fns[id - 1](ctx, c);
      c.measured += 0.0;  // no -0 in reports
    } catch (const std::exception& e) {
      c.pass = false;
      c.measured = NAN;
      c.detail = std::string("error: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rep.checks.push_back(c);
  }
  return rep;
}

}  // namespace slcyl

#include "slcyl/weighted.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "json.hpp"

#include "slcyl/errors.hpp"
#include "slcyl/sampling.hpp"
#include "slcyl/sphere.hpp"

namespace slcyl {

void WeightSpec::validate() const {
  if (k < 0 || k > 2) throw ArgumentError("weight spec: k must be 0, 1 or 2");
  if (!(beta > 0.0 && beta < 1.0)) throw ArgumentError("weight spec: beta must lie in (0, 1)");
}

namespace {

struct LocalDerivs {
  Eigen::VectorXd grad;  // chart coordinates
  Eigen::MatrixXd hess;
  Eigen::MatrixXd Linv;  // inverse Cholesky factor of the chart metric
};

LocalDerivs local_derivs(const LocalChart& c, int k, double h) {
  LocalDerivs d;
  const auto tangents = fd_tangents(c.embed, c.p, h);
  const Eigen::Index dim = static_cast<Eigen::Index>(c.p.size());
  Eigen::MatrixXd J(tangents.front().coords().size(), dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const auto col = tangents[j].coords();
    for (std::size_t i = 0; i < col.size(); ++i) J(static_cast<Eigen::Index>(i), j) = col[i];
  }
  const Eigen::MatrixXd g = J.transpose() * J;
  Eigen::LLT<Eigen::MatrixXd> llt(g);
  if (llt.info() != Eigen::Success) throw DomainError("chart metric is not positive definite");
  d.Linv = llt.matrixL().solve(Eigen::MatrixXd::Identity(dim, dim));
  const Jet jet = fd_jet(c.field, c.p, k, h);
  d.grad = jet.gradient;
  d.hess = jet.order >= 2 ? jet.hessian : Eigen::MatrixXd();
  return d;
}

// Components of the k-th derivative in an orthonormal frame at the base point.
Eigen::VectorXd derivative_components(const LocalDerivs& d, const Eigen::MatrixXd& Linv, int k) {
  if (k == 1) return Linv * d.grad;
  const Eigen::MatrixXd M = Linv * d.hess * Linv.transpose();
  return Eigen::Map<const Eigen::VectorXd>(M.data(), M.size());
}

}  // namespace

BoxNorm boxed_norm(const BoxSampler& sampler, const RegionBox& box, const WeightSpec& spec,
                   std::size_t samples, std::uint64_t seed) {
  spec.validate();
  BoxNorm out;
  const auto charts = sampler(box, samples, seed);
  if (charts.empty()) return out;
  const double R = box.R, S = box.S;
  const double h = 1e-3 * R;
  std::vector<double> values(charts.size(), NAN);
  for (std::size_t i = 0; i < charts.size(); ++i) {
    const auto& c = charts[i];
    try {
      values[i] = c.field(c.p);
      out.sup0 = std::max(out.sup0, std::abs(values[i]));
      if (spec.k >= 1) {
        const auto d = local_derivs(c, spec.k, h);
        out.sup1 = std::max(out.sup1, R * (d.Linv * d.grad).norm());
        if (spec.k >= 2) out.sup2 = std::max(out.sup2, R * R * (d.Linv * d.hess * d.Linv.transpose()).norm());
      }
      ++out.samples;
    } catch (const DomainError&) {
    }
  }
  if (out.samples == 0) return out;
  out.empty = false;

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  std::normal_distribution<double> N;
  for (std::size_t pair = 0; pair < 64; ++pair) {
    const std::size_t i = pair % charts.size();
    const auto& c = charts[i];
    if (std::isnan(values[i])) continue;
    try {
      Eigen::VectorXd dir(static_cast<Eigen::Index>(c.p.size()));
      for (auto& x : dir) x = N(rng);
      dir.normalize();
      std::vector<double> probe(c.p);
      for (std::size_t j = 0; j < probe.size(); ++j) probe[j] += h * dir[static_cast<Eigen::Index>(j)];
      const CVec base = c.embed(c.p);
      const double speed = distance(c.embed(probe), base) / h;
      const double t = 0.1 + 0.9 * U(rng);
      std::vector<double> q(c.p);
      for (std::size_t j = 0; j < q.size(); ++j) q[j] += t * R / speed * dir[static_cast<Eigen::Index>(j)];
      const CVec eq = c.embed(q);
      // both points of a pair must lie in the (closed) box
      if (eq.r() < R || eq.r() > 2.0 * R || eq.rho() < S || eq.rho() > 2.0 * S) continue;
      const double dist = distance(eq, base) / R;
      if (dist < 0.1 || dist > 1.0) continue;
      double diff = 0.0;
      if (spec.k == 0) {
        diff = std::abs(c.field(q) - values[i]);
      } else {
        const LocalChart cq{c.embed, c.field, q};
        const auto dp = local_derivs(c, spec.k, h);
        const auto dq = local_derivs(cq, spec.k, h);
        diff = std::pow(R, spec.k) *
               (derivative_components(dq, dp.Linv, spec.k) - derivative_components(dp, dp.Linv, spec.k)).norm();
      }
      out.holder = std::max(out.holder, diff / std::pow(dist, spec.beta));
      ++out.pairs;
    } catch (const DomainError&) {
    }
  }
  double norm = out.sup0 + out.holder;
  if (spec.k >= 1) norm += out.sup1;
  if (spec.k >= 2) norm += out.sup2;
  out.value = std::pow(R, -spec.tau) * std::pow(S, spec.tau - spec.delta) * norm;
  return out;
}

double SweepResult::sup_within(double A) const {
  double s = 0.0;
  for (const auto& row : rows)
    if (!row.norm.empty && 2.0 * row.S < 1.0 / A) s = std::max(s, row.norm.value);
  return s;
}

SweepResult dyadic_sweep(const BoxSampler& sampler, const WeightSpec& spec, double A, int depth,
                         std::size_t samples, std::uint64_t seed) {
  if (depth < 2) throw ArgumentError("dyadic sweep: depth must be >= 2");
  spec.validate();
  SweepResult out;
  for (int j = 1; j <= depth; ++j) {
    const double S = std::ldexp(1.0, -j);
    if (!(S < 0.5 / A)) continue;
    for (int i = std::max(0, j - 2); i <= depth; ++i) {
      const double R = std::ldexp(1.0, -i);
      SweepRow row{R, S, boxed_norm(sampler, {R, S}, spec, samples, seed + 1000003ULL * i + 7919ULL * j)};
      if (!row.norm.empty) out.sup = std::max(out.sup, row.norm.value);
      out.rows.push_back(row);
    }
  }
  return out;
}

FitResult exponent_fit(const std::vector<std::pair<double, double>>& pairs) {
  if (pairs.size() < 4) throw ArgumentError("exponent fit: need at least 4 pairs");
  const double N = static_cast<double>(pairs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (const auto& [s, v] : pairs) {
    if (!(s > 0.0) || !(v > 0.0)) throw ArgumentError("exponent fit: scales and values must be positive");
    const double x = std::log(s), y = std::log(v);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double vx = sxx - sx * sx / N, vy = syy - sy * sy / N, cxy = sxy - sx * sy / N;
  if (vx <= 0.0) throw ArgumentError("exponent fit: scales must not all coincide");
  FitResult f;
  f.slope = cxy / vx;
  f.intercept = (sy - f.slope * sx) / N;
  f.r2 = vy > 0.0 ? cxy * cxy / (vx * vy) : 1.0;
  f.n_points = pairs.size();
  return f;
}

BoxSampler theta_sampler(const Model& model) {
  return [&model](const RegionBox& box, std::size_t count, std::uint64_t seed) {
    std::vector<LocalChart> out;
    const std::size_t n = model.neck.n();
    for (auto& s : sample_X_box(model, box.R, box.S, count, seed)) {
      if (!s.neck_chart) {
        const int m = s.cyl.m;
        auto cyl = [m](std::span<const double> q) {
          Eigen::Map<const Eigen::VectorXd> x(q.data(), static_cast<Eigen::Index>(q.size() - 1));
          const double r = x.norm();
          std::vector<double> sigma(x.data(), x.data() + x.size());
          for (double& v : sigma) v /= r;
          return CylinderPoint{m, sigma, r, q.back()};
        };
        LocalChart c;
        c.embed = [&model, cyl](std::span<const double> q) { return assemble_X(model, cyl(q)).point; };
        c.field = [&model, cyl](std::span<const double> q) { return theta_X(model, cyl(q)); };
        const auto x = cylinder_x(s.cyl);
        c.p.assign(x.data(), x.data() + x.size());
        c.p.push_back(s.u);
        out.push_back(std::move(c));
      } else {
        // unit ambient speed: y scaled by |u|^a, sphere directions by |u|^a |z|
        const double h = std::pow(std::abs(s.u), model.profile.a);
        const double zn = s.point.r() / h;
        const NeckChart c0 = s.chart;
        const double u0 = s.u;
        const auto basis = sphere_tangent_basis(c0.sigma);
        auto chart = [=](std::span<const double> q) {
          std::vector<double> ds(n - 1);
          for (std::size_t j = 0; j + 1 < n; ++j) ds[j] = q[1 + j] / (h * zn);
          return std::make_pair(NeckChart{c0.y + q[0] / h, sphere_chart(c0.sigma, basis, ds.data())},
                                u0 + q[n]);
        };
        LocalChart c;
        c.embed = [&model, chart](std::span<const double> q) {
          const auto [nc, u] = chart(q);
          return assemble_X(model, nc, u).point;
        };
        c.field = [&model, chart](std::span<const double> q) {
          const auto [nc, u] = chart(q);
          assemble_X(model, nc, u);
          return theta_X(model, nc, u);
        };
        c.p.assign(n + 1, 0.0);
        out.push_back(std::move(c));
      }
    }
    return out;
  };
}

BoxSampler cone_sampler(const LawlorParams& params,
                        std::function<double(const std::vector<double>&, double, double)> field) {
  return [&params, field](const RegionBox& box, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::normal_distribution<double> N;
    const std::size_t n = params.n();
    std::vector<LocalChart> out;
    for (std::size_t attempt = 0; attempt < 40 * count && out.size() < count; ++attempt) {
      const double r = box.R * std::pow(2.0, U(rng));
      const double rho = box.S * (1.0 + U(rng));
      if (rho <= r) continue;
      double u = std::sqrt(rho * rho - r * r);
      if (U(rng) < 0.5) u = -u;
      const int m = U(rng) < 0.5 ? 1 : 2;
      std::vector<double> sigma(n);
      for (double& v : sigma) v = N(rng);
      sigma = normalized(sigma);
      auto cyl = [m](std::span<const double> q) {
        std::vector<double> x(q.begin(), q.end() - 1);
        const double rr = norm2(x);
        for (double& v : x) v /= rr;
        return CylinderPoint{m, x, rr, q.back()};
      };
      LocalChart c;
      c.embed = [&params, cyl](std::span<const double> q) { return cone_point(params, cyl(q)); };
      c.field = [field, cyl](std::span<const double> q) {
        const auto p = cyl(q);
        return field(p.sigma, p.r, p.u);
      };
      for (double v : sigma) c.p.push_back(r * v);
      c.p.push_back(u);
      out.push_back(std::move(c));
    }
    return out;
  };
}

FeasibilityReport weight_feasibility(const Model& model, double delta, double tau,
                                     const std::vector<double>& A_list, int depth, std::size_t samples,
                                     std::uint64_t seed) {
  const int a = model.profile.a;
  const double n = static_cast<double>(model.neck.n());
  if (!(delta > 2.0 * a)) throw ArgumentError("weight feasibility: need delta > 2a");
  if (!(tau > 2.0 - n && tau <= 0.0)) throw ArgumentError("weight feasibility: need tau in (2-n, 0]");
  if (A_list.size() < 4) throw ArgumentError("weight feasibility: need at least 4 values of A");
  const double A_min = *std::min_element(A_list.begin(), A_list.end());
  if (A_min < model.profile.A) throw ArgumentError("weight feasibility: A below the model's A");
  // boxes must reach the neck waist r ~ |u|^a with 2|u| ~ 1/A_max
  const double A_max = *std::max_element(A_list.begin(), A_list.end());
  if (depth < a * std::log2(2.0 * A_max) - 1e-9)
    throw ArgumentError("weight feasibility: depth must reach the neck waist, depth >= a log2(2 A_max)");

  FeasibilityReport rep;
  rep.delta = delta;
  rep.tau = tau;
  rep.A_list = A_list;

  // (rho, weight) over all sampled points of the sweep boxes
  std::vector<std::pair<double, double>> weights;
  for (int j = 1; j <= depth; ++j) {
    const double S = std::ldexp(1.0, -j);
    if (!(S < 0.5 / A_min)) continue;
    for (int i = std::max(0, j - 2); i <= depth; ++i) {
      const double R = std::ldexp(1.0, -i);
      for (const auto& s : sample_X_box(model, R, S, samples, seed + 1000003ULL * i + 7919ULL * j)) {
        const double r = s.point.r(), rho = s.point.rho();
        weights.emplace_back(rho, std::pow(r, tau - 2.0) * std::pow(rho, delta - tau));
      }
    }
  }
  const WeightSpec ratio_spec{0, 0.5, delta - 2.0, tau - 2.0};
  const auto sweep = dyadic_sweep(theta_sampler(model), ratio_spec, A_min, depth, samples, seed);

  std::vector<std::pair<double, double>> wfit, afit;
  for (double A : A_list) {
    double w = 0.0;
    for (const auto& [rho, val] : weights)
      if (rho < 1.0 / A) w = std::max(w, val);
    rep.weight_sup.push_back(w);
    rep.angle_ratio_sup.push_back(sweep.sup_within(A));
    if (w > 0.0) wfit.emplace_back(A, w);
    if (rep.angle_ratio_sup.back() > 0.0) afit.emplace_back(A, rep.angle_ratio_sup.back());
  }
  rep.weight_fit = exponent_fit(wfit);
  rep.angle_fit = exponent_fit(afit);
  rep.weight_kappa = -rep.weight_fit.slope;
  rep.angle_kappa = -rep.angle_fit.slope;
  return rep;
}

std::string sweep_csv(const SweepResult& sweep) {
  std::ostringstream os;
  os.precision(17);
  os << "R,S,norm,empty_flag\n";
  for (const auto& r : sweep.rows) os << r.R << ',' << r.S << ',' << r.norm.value << ',' << (r.norm.empty ? 1 : 0) << '\n';
  return os.str();
}

std::string fit_json(const FitResult& fit) {
  nlohmann::json j{{"slope", fit.slope}, {"intercept", fit.intercept}, {"r2", fit.r2}, {"n_points", fit.n_points}};
  return j.dump(2);
}

}  // namespace slcyl

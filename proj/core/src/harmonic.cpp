#include "slcyl/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

#include "slcyl/errors.hpp"

namespace slcyl {

namespace {
Rational pow_int(const Rational& x, int p) {
  Rational v = 1;
  for (int i = 0; i < p; ++i) v *= x;
  return v;
}
}  // namespace

std::vector<Rational> harmonic_coeffs(int a, int n) {
  if (a < 1) throw ArgumentError("harmonic_coeffs: need a >= 1");
  if (n < 1) throw ArgumentError("harmonic_coeffs: need n >= 1");
  std::vector<Rational> out;
  Rational cur = 1;
  for (int j = 0; j < a; ++j) {
    cur = -cur * Rational((2 * a - 2 * j) * (2 * a - 2 * j - 1)) / Rational((2 * j + 2) * (2 * j + n));
    out.push_back(cur);
  }
  return out;
}

void BivariatePoly::add(int pu, int pr, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(Key{pu, pr}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational BivariatePoly::eval(const Rational& u, const Rational& r) const {
  Rational s = 0;
  for (const auto& [k, c] : terms_) s += c * pow_int(u, k.first) * pow_int(r, k.second);
  return s;
}

std::string BivariatePoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << "(" << it->second << ")";
    if (it->first.first) os << " u^" << it->first.first;
    if (it->first.second) os << " r^" << it->first.second;
  }
  return os.str();
}

BivariatePoly phi_polynomial(int a, int n) {
  BivariatePoly p;
  p.add(2 * a, 0, 1);
  const auto c = harmonic_coeffs(a, n);
  for (int j = 1; j <= a; ++j) p.add(2 * a - 2 * j, 2 * j, c[j - 1]);
  return p;
}

BivariatePoly cylinder_laplacian(const BivariatePoly& p, int n) {
  BivariatePoly out;
  for (const auto& [k, c] : p.terms()) {
    const auto [pu, pr] = k;
    if (pu >= 2) out.add(pu - 2, pr, c * Rational(pu * (pu - 1)));
    if (pr >= 1) out.add(pu, pr - 2, c * Rational(pr * (pr + n - 2)));
  }
  return out;
}

std::size_t sphere_multiplicity(int l, int n) {
  auto binom = [](long long top, long long k) -> long long {
    if (top < k || k < 0 || top < 0) return 0;
    long long v = 1;
    for (long long i = 1; i <= k; ++i) v = v * (top - k + i) / i;
    return v;
  };
  return static_cast<std::size_t>(binom(l + n - 1, n - 1) - binom(l + n - 3, n - 1));
}

std::vector<Degree> degree_set(const LinkSpec& link, double lo, double hi) {
  if (!(lo < hi)) throw ArgumentError("degree_set: need lo < hi");
  if (link.n < 2) throw ArgumentError("degree_set: need n >= 2");
  const double n = link.n;
  std::vector<Degree> raw;
  auto push_roots = [&](double lambda, std::size_t mult) {
    if (lambda < 0.0) throw ArgumentError("degree_set: negative eigenvalue");
    const double disc = std::sqrt((n - 2) * (n - 2) + 4 * lambda);
    for (double d : {(2 - n + disc) / 2, (2 - n - disc) / 2})
      if (d > lo && d < hi) raw.push_back({d, mult});
  };
  if (link.kind == LinkKind::ExplicitEigenvalues) {
    for (double lam : link.eigenvalues) push_roots(lam, 1);
  } else {
    const std::size_t copies = link.kind == LinkKind::PairOfUnitSpheres ? 2 : 1;
    // d_+ = l and d_- = 2 - n - l; stop once both leave the window
    const int lmax = static_cast<int>(std::ceil(std::max(hi, 2 - n - lo))) + 1;
    for (int l = 0; l <= lmax; ++l)
      push_roots(static_cast<double>(l) * (l + n - 2), copies * sphere_multiplicity(l, link.n));
  }
  std::sort(raw.begin(), raw.end(), [](const Degree& x, const Degree& y) { return x.d < y.d; });
  std::vector<Degree> out;
  for (const auto& d : raw) {
    if (!out.empty() && std::abs(out.back().d - d.d) < 1e-12)
      out.back().multiplicity += d.multiplicity;
    else
      out.push_back(d);
  }
  return out;
}

HarmonicPoly HarmonicPoly::make(int a, int n, std::array<double, 2> cinf) {
  if (a < 1) throw ArgumentError("harmonic polynomial: need a >= 1");
  HarmonicPoly p;
  p.a = a;
  p.n = n;
  p.coeffs.push_back(1);
  for (const auto& c : harmonic_coeffs(a, n)) p.coeffs.push_back(c);
  p.cinf = cinf;
  return p;
}

HarmonicPoly HarmonicPoly::plane_mode(int n) { return make(1, n, {-1.0, -1.0}); }

double HarmonicPoly::c(int m) const {
  if (m != 1 && m != 2) throw ArgumentError("component index must be 1 or 2");
  return cinf[m - 1];
}

PhiJet eval_phi(const HarmonicPoly& poly, int m, double r, double u, int order) {
  const double c = poly.c(m);
  PhiJet j;
  auto pw = [](double x, int p) { return p <= 0 ? (p == 0 ? 1.0 : 0.0) : std::pow(x, p); };
  for (int k = 0; k <= poly.a; ++k) {
    const double ak = -c * poly.coeffs[k].convert_to<double>();
    const int pu = 2 * poly.a - 2 * k, pr = 2 * k;
    j.value += ak * pw(u, pu) * pw(r, pr);
    if (order >= 1) {
      j.r += ak * pr * pw(u, pu) * pw(r, pr - 1);
      j.u += ak * pu * pw(u, pu - 1) * pw(r, pr);
    }
    if (order >= 2) {
      j.rr += ak * pr * (pr - 1) * pw(u, pu) * pw(r, pr - 2);
      j.ru += ak * pr * pu * pw(u, pu - 1) * pw(r, pr - 1);
      j.uu += ak * pu * (pu - 1) * pw(u, pu - 2) * pw(r, pr);
    }
  }
  return j;
}

Rational eval_phi_exact(const HarmonicPoly& poly, const Rational& c, const Rational& r, const Rational& u) {
  Rational s = 0;
  for (int k = 0; k <= poly.a; ++k)
    s += poly.coeffs[k] * pow_int(u, 2 * poly.a - 2 * k) * pow_int(r, 2 * k);
  return -c * s;
}

CartesianJet eval_phi_cartesian(const HarmonicPoly& poly, int m, const Eigen::VectorXd& x, double u) {
  const double c = poly.c(m);
  const Eigen::Index n = x.size();
  const double r2 = x.squaredNorm();
  auto pw = [](double v, int p) { return p == 0 ? 1.0 : std::pow(v, p); };
  // phi = sum_k b_k u^{pu} s^k with s = r^2
  double value = 0, ds = 0, dss = 0, du = 0, duu = 0, dsu = 0;
  for (int k = 0; k <= poly.a; ++k) {
    const double b = -c * poly.coeffs[k].convert_to<double>();
    const int pu = 2 * poly.a - 2 * k;
    value += b * pw(u, pu) * pw(r2, k);
    if (k >= 1) ds += b * k * pw(u, pu) * pw(r2, k - 1);
    if (k >= 2) dss += b * k * (k - 1) * pw(u, pu) * pw(r2, k - 2);
    if (pu >= 1) du += b * pu * pw(u, pu - 1) * pw(r2, k);
    if (pu >= 2) duu += b * pu * (pu - 1) * pw(u, pu - 2) * pw(r2, k);
    if (k >= 1 && pu >= 1) dsu += b * k * pu * pw(u, pu - 1) * pw(r2, k - 1);
  }
  CartesianJet j;
  j.value = value;
  j.grad.resize(n + 1);
  j.grad.head(n) = 2 * ds * x;
  j.grad[n] = du;
  j.hess.setZero(n + 1, n + 1);
  j.hess.topLeftCorner(n, n) = 4 * dss * x * x.transpose() + 2 * ds * Eigen::MatrixXd::Identity(n, n);
  j.hess.block(0, n, n, 1) = 2 * dsu * x;
  j.hess.block(n, 0, 1, n) = 2 * dsu * x.transpose();
  j.hess(n, n) = duu;
  return j;
}

std::string coeffs_json(const HarmonicPoly& poly) {
  nlohmann::json j;
  j["a"] = poly.a;
  j["n"] = poly.n;
  auto dec = nlohmann::json::array();
  auto frac = nlohmann::json::array();
  for (std::size_t k = 1; k < poly.coeffs.size(); ++k) {
    std::ostringstream os;
    os.precision(17);
    os << poly.coeffs[k].convert_to<double>();
    dec.push_back(os.str());
    frac.push_back(poly.coeffs[k].str());
  }
  j["coeffs"] = dec;
  j["coeffs_exact"] = frac;
  j["c_inf"] = {poly.cinf[0], poly.cinf[1]};
  return j.dump(2);
}

}  // namespace slcyl

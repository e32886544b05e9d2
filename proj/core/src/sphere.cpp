#include "slcyl/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

#include "slcyl/errors.hpp"

namespace slcyl {

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

std::vector<double> normalized(std::vector<double> v) {
  const double n = norm2(v);
  if (n == 0.0) throw ArgumentError("normalized: zero vector");
  for (double& x : v) x /= n;
  return v;
}

std::vector<std::vector<double>> sphere_points(std::size_t n, std::size_t count) {
  if (n < 2) throw ArgumentError("sphere_points: n must be >= 2");
  std::vector<std::vector<double>> pts;
  pts.reserve(count);
  if (n == 3) {
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < count; ++i) {
      const double z = 1.0 - (2.0 * i + 1.0) / static_cast<double>(count);
      const double rad = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double phi = golden * static_cast<double>(i);
      pts.push_back({rad * std::cos(phi), rad * std::sin(phi), z});
    }
    return pts;
  }
  if (n == 2) {
    for (std::size_t i = 0; i < count; ++i) {
      const double phi = 2 * std::numbers::pi * (i + 0.5) / static_cast<double>(count);
      pts.push_back({std::cos(phi), std::sin(phi)});
    }
    return pts;
  }
  // generalised golden ratio: unique positive root of x^{n+1} = x + 1
  double g = 2.0;
  for (int it = 0; it < 64; ++it) g = std::pow(1.0 + g, 1.0 / static_cast<double>(n + 1));
  std::vector<double> alpha(n);
  for (std::size_t j = 0; j < n; ++j) alpha[j] = std::fmod(std::pow(1.0 / g, j + 1.0), 1.0);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<double> v(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double u = std::fmod(0.5 + alpha[j] * static_cast<double>(i + 1), 1.0);
      const double uc = std::clamp(u, 1e-12, 1.0 - 1e-12);
      v[j] = std::sqrt(2.0) * boost::math::erf_inv(2.0 * uc - 1.0);
    }
    pts.push_back(normalized(std::move(v)));
  }
  return pts;
}

std::vector<std::vector<double>> sphere_tangent_basis(const std::vector<double>& sigma) {
  const std::size_t n = sigma.size();
  std::vector<std::vector<double>> basis;
  for (std::size_t axis = 0; axis < n && basis.size() + 1 < n; ++axis) {
    std::vector<double> v(n, 0.0);
    v[axis] = 1.0;
    auto project = [&](const std::vector<double>& e) {
      double d = 0.0;
      for (std::size_t k = 0; k < n; ++k) d += v[k] * e[k];
      for (std::size_t k = 0; k < n; ++k) v[k] -= d * e[k];
    };
    project(sigma);
    for (const auto& e : basis) project(e);
    // twice for stability
    project(sigma);
    for (const auto& e : basis) project(e);
    if (norm2(v) > 1e-6) basis.push_back(normalized(v));
  }
  return basis;
}

std::vector<double> sphere_chart(const std::vector<double>& sigma,
                                 const std::vector<std::vector<double>>& basis,
                                 const double* s) {
  std::vector<double> v = sigma;
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t k = 0; k < v.size(); ++k) v[k] += s[j] * basis[j][k];
  return normalized(std::move(v));
}

}  // namespace slcyl

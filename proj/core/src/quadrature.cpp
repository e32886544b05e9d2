#include "slcyl/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "slcyl/errors.hpp"

namespace slcyl {

QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           double tol, double fail_tol) {
  if (lo == hi) return {};
  if (lo > hi) {
    auto r = integrate(f, hi, lo, tol, fail_tol);
    r.value = -r.value;
    return r;
  }
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  double error = 0.0;
  double value = 0.0;
  if (std::isinf(lo) || std::isinf(hi)) {
    const double s_lo = std::isinf(lo) ? -std::numbers::pi / 2 : std::atan(lo);
    const double s_hi = std::isinf(hi) ? std::numbers::pi / 2 : std::atan(hi);
    auto g = [&](double s) {
      const double c = std::cos(s);
      if (c == 0.0) return 0.0;
      const double t = std::tan(s);
      if (!std::isfinite(t)) return 0.0;
      return f(t) / (c * c);
    };
    value = GK::integrate(g, s_lo, s_hi, 20, tol, &error);
  } else {
    value = GK::integrate(f, lo, hi, 20, tol, &error);
  }
  if (!std::isfinite(value) || error > std::max(fail_tol, fail_tol * std::abs(value))) {
    throw NumericError("quadrature did not converge", error);
  }
  return {value, error};
}

}  // namespace slcyl

#pragma once

#include <functional>

namespace slcyl {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive Gauss-Kronrod (15/31) integral of f over [lo, hi]. Either bound may
/// be infinite; infinite ranges are compactified with t = tan(s), which keeps
/// algebraically decaying integrands smooth at the ends.
///
/// Throws NumericError when the error estimate exceeds
/// max(fail_tol, fail_tol * |value|).
QuadratureResult integrate(const std::function<double(double)>& f, double lo, double hi,
                           double tol = 1e-13, double fail_tol = 1e-9);

}  // namespace slcyl

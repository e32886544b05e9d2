#pragma once

// Complex linear algebra on C^N stored as real pairs, plus the finite-difference
// kernels used to check Lagrangian conditions numerically.

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace slcyl {

using cplx = std::complex<double>;

/// A point or tangent vector of C^N, coordinates ordered (x1, y1, ..., xN, yN).
class CVec {
 public:
  CVec() = default;
  /// Zero vector of complex dimension `dim`.
  explicit CVec(std::size_t dim);
  CVec(std::size_t dim, std::vector<double> coords);

  static CVec from_complex(std::span<const cplx> z);

  std::size_t dim() const noexcept { return dim_; }
  std::span<const double> coords() const noexcept { return coords_; }

  double x(std::size_t j) const { return coords_[2 * j]; }
  double y(std::size_t j) const { return coords_[2 * j + 1]; }
  cplx z(std::size_t j) const { return {coords_[2 * j], coords_[2 * j + 1]}; }
  void set(std::size_t j, cplx value);

  std::vector<cplx> as_complex() const;

  /// Euclidean norm; for a point of C^n x C this is rho = |(z, w)|.
  double rho() const;
  /// Norm of the first dim-1 complex coordinates, r = |z| in C^n x C.
  double r() const;
  double norm() const { return rho(); }

  CVec& operator+=(const CVec& o);
  CVec& operator-=(const CVec& o);
  CVec& operator*=(double s);

  friend CVec operator+(CVec a, const CVec& b) { return a += b; }
  friend CVec operator-(CVec a, const CVec& b) { return a -= b; }
  friend CVec operator*(CVec a, double s) { return a *= s; }
  friend CVec operator*(double s, CVec a) { return a *= s; }

 private:
  std::size_t dim_ = 0;
  std::vector<double> coords_;
};

double distance(const CVec& a, const CVec& b);

/// N tangent vectors in C^N.
class Frame {
 public:
  explicit Frame(std::vector<CVec> vectors);
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<CVec>& vectors() const noexcept { return vectors_; }
  /// Columns are the frame vectors read as complex numbers.
  Eigen::MatrixXcd matrix() const;

 private:
  std::size_t dim_;
  std::vector<CVec> vectors_;
};

/// omega(v, w) = sum_j x_j(v) y_j(w) - y_j(v) x_j(w).
double symplectic_form(const CVec& v, const CVec& w);

/// lambda_p(v) = 1/2 sum_j x_j(p) y_j(v) - y_j(p) x_j(v).
double liouville_form(const CVec& p, const CVec& v);

/// Complex determinant of the frame; throws DegenerateFrameError when
/// |det| < 1e-12 * prod |column|.
cplx frame_determinant(const Frame& f);

/// arg det M mod pi, in [0, pi).
double lagrangian_angle(const Frame& f);

/// Reduces an angle mod pi into (-pi/2, pi/2].
double wrap_angle_mod_pi(double theta);

/// Continuous representative of `theta` (mod pi) closest to `previous`.
double unwrap_angle(double previous, double theta);

using ChartMap = std::function<CVec(std::span<const double>)>;

/// max_{i<j} |omega(d_i F, d_j F)| / (|d_i F| |d_j F|), derivatives by central
/// differences with step h.
double pullback_residual(const ChartMap& immersion, std::span<const double> p, double h);

/// Central-difference tangent vectors d_i F at p.
std::vector<CVec> fd_tangents(const ChartMap& immersion, std::span<const double> p, double h);

using ScalarField = std::function<double(std::span<const double>)>;
using DomainPredicate = std::function<bool(std::span<const double>)>;

/// Derivatives of a scalar field up to order three.
struct Jet {
  int order = 0;
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
  /// third[i](j, k) = d_i d_j d_k f
  std::vector<Eigen::MatrixXd> third;
};

/// Central-difference jet with O(h^2) consistency. Throws DomainError if a
/// stencil point leaves `in_domain`.
Jet fd_jet(const ScalarField& f, std::span<const double> p, int order, double h,
           const DomainPredicate& in_domain = {});

/// One Richardson step for a quantity with error expansion c h^order:
/// combines estimates at h and h/2.
double richardson(double at_h, double at_half_h, int order = 2);

}  // namespace slcyl

#include "slcyl/geom.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "slcyl/errors.hpp"

namespace slcyl {

CVec::CVec(std::size_t dim) : dim_(dim), coords_(2 * dim, 0.0) {
  if (dim == 0) throw ArgumentError("CVec: dimension must be positive");
}

CVec::CVec(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
  if (dim == 0) throw ArgumentError("CVec: dimension must be positive");
  if (coords_.size() != 2 * dim) {
    throw ArgumentError("CVec: expected " + std::to_string(2 * dim) + " coordinates, got " +
                        std::to_string(coords_.size()));
  }
  for (double c : coords_) {
    if (!std::isfinite(c)) throw ArgumentError("CVec: non-finite coordinate");
  }
}

CVec CVec::from_complex(std::span<const cplx> z) {
  std::vector<double> c;
  c.reserve(2 * z.size());
  for (const auto& zj : z) {
    c.push_back(zj.real());
    c.push_back(zj.imag());
  }
  return CVec(z.size(), std::move(c));
}

void CVec::set(std::size_t j, cplx value) {
  coords_.at(2 * j) = value.real();
  coords_.at(2 * j + 1) = value.imag();
}

std::vector<cplx> CVec::as_complex() const {
  std::vector<cplx> out(dim_);
  for (std::size_t j = 0; j < dim_; ++j) out[j] = z(j);
  return out;
}

double CVec::rho() const {
  double s = 0.0;
  for (double c : coords_) s += c * c;
  return std::sqrt(s);
}

double CVec::r() const {
  double s = 0.0;
  for (std::size_t i = 0; i + 2 < coords_.size(); ++i) s += coords_[i] * coords_[i];
  return std::sqrt(s);
}

CVec& CVec::operator+=(const CVec& o) {
  if (o.dim_ != dim_) throw ArgumentError("CVec: dimension mismatch in +");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
  return *this;
}

CVec& CVec::operator-=(const CVec& o) {
  if (o.dim_ != dim_) throw ArgumentError("CVec: dimension mismatch in -");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
  return *this;
}

CVec& CVec::operator*=(double s) {
  for (double& c : coords_) c *= s;
  return *this;
}

double distance(const CVec& a, const CVec& b) { return (a - b).rho(); }

Frame::Frame(std::vector<CVec> vectors) : dim_(vectors.size()), vectors_(std::move(vectors)) {
  if (dim_ == 0) throw ArgumentError("Frame: empty");
  for (const auto& v : vectors_) {
    if (v.dim() != dim_) throw ArgumentError("Frame: needs N vectors of complex dimension N");
  }
}

Eigen::MatrixXcd Frame::matrix() const {
  Eigen::MatrixXcd m(dim_, dim_);
  for (std::size_t col = 0; col < dim_; ++col)
    for (std::size_t row = 0; row < dim_; ++row) m(row, col) = vectors_[col].z(row);
  return m;
}

double symplectic_form(const CVec& v, const CVec& w) {
  if (v.dim() != w.dim()) throw ArgumentError("symplectic_form: dimension mismatch");
  double s = 0.0;
  for (std::size_t j = 0; j < v.dim(); ++j) s += v.x(j) * w.y(j) - v.y(j) * w.x(j);
  return s;
}

double liouville_form(const CVec& p, const CVec& v) {
  if (p.dim() != v.dim()) throw ArgumentError("liouville_form: dimension mismatch");
  return 0.5 * symplectic_form(p, v);
}

cplx frame_determinant(const Frame& f) {
  const Eigen::MatrixXcd m = f.matrix();
  double scale = 1.0;
  for (const auto& v : f.vectors()) scale *= v.norm();
  const cplx det = m.determinant();
  if (!(std::abs(det) >= 1e-12 * scale)) {
    throw DegenerateFrameError("frame is degenerate: |det| = " + std::to_string(std::abs(det)));
  }
  return det;
}

double lagrangian_angle(const Frame& f) {
  double theta = std::fmod(std::arg(frame_determinant(f)), std::numbers::pi);
  if (theta < 0) theta += std::numbers::pi;
  if (theta >= std::numbers::pi) theta -= std::numbers::pi;
  return theta;
}

double wrap_angle_mod_pi(double theta) {
  constexpr double pi = std::numbers::pi;
  double t = std::fmod(theta, pi);
  if (t <= -pi / 2) t += pi;
  if (t > pi / 2) t -= pi;
  return t;
}

double unwrap_angle(double previous, double theta) {
  return previous + wrap_angle_mod_pi(theta - previous);
}

std::vector<CVec> fd_tangents(const ChartMap& immersion, std::span<const double> p, double h) {
  if (!(h > 0)) throw ArgumentError("fd_tangents: step must be positive");
  std::vector<double> q(p.begin(), p.end());
  std::vector<CVec> out;
  out.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    q[i] = p[i] + h;
    CVec plus = immersion(q);
    q[i] = p[i] - h;
    CVec minus = immersion(q);
    q[i] = p[i];
    out.push_back((plus - minus) * (0.5 / h));
  }
  return out;
}

double pullback_residual(const ChartMap& immersion, std::span<const double> p, double h) {
  const auto t = fd_tangents(immersion, p, h);
  double worst = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      const double denom = t[i].norm() * t[j].norm();
      if (denom == 0.0) continue;
      worst = std::max(worst, std::abs(symplectic_form(t[i], t[j])) / denom);
    }
  }
  return worst;
}

namespace {

class Stencil {
 public:
  Stencil(const ScalarField& f, std::span<const double> p, double h, const DomainPredicate& dom)
      : f_(f), p_(p.begin(), p.end()), h_(h), dom_(dom) {}

  // f(p + h * offsets)
  double at(std::initializer_list<std::pair<std::size_t, int>> offsets) {
    std::vector<double> q = p_;
    for (const auto& [axis, steps] : offsets) q[axis] += steps * h_;
    if (dom_ && !dom_(q)) throw DomainError("fd_jet: stencil leaves the field's domain");
    return f_(q);
  }

 private:
  const ScalarField& f_;
  std::vector<double> p_;
  double h_;
  const DomainPredicate& dom_;
};

}  // namespace

Jet fd_jet(const ScalarField& f, std::span<const double> p, int order, double h,
           const DomainPredicate& in_domain) {
  if (order < 0 || order > 3) throw ArgumentError("fd_jet: order must be in [0, 3]");
  if (!(h > 0)) throw ArgumentError("fd_jet: step must be positive");
  const std::size_t d = p.size();
  Stencil s(f, p, h, in_domain);
  Jet jet;
  jet.order = order;
  jet.value = s.at({});
  if (order == 0) return jet;

  jet.gradient = Eigen::VectorXd::Zero(d);
  for (std::size_t i = 0; i < d; ++i) {
    if (order >= 3) {
      // fourth-order stencil so cubic fields are reproduced exactly
      jet.gradient(i) = (-s.at({{i, 2}}) + 8 * s.at({{i, 1}}) - 8 * s.at({{i, -1}}) +
                         s.at({{i, -2}})) / (12 * h);
    } else {
      jet.gradient(i) = (s.at({{i, 1}}) - s.at({{i, -1}})) / (2 * h);
    }
  }
  if (order == 1) return jet;

  jet.hessian = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    jet.hessian(i, i) = (s.at({{i, 1}}) - 2 * jet.value + s.at({{i, -1}})) / (h * h);
    for (std::size_t j = i + 1; j < d; ++j) {
      const double v = (s.at({{i, 1}, {j, 1}}) - s.at({{i, 1}, {j, -1}}) -
                        s.at({{i, -1}, {j, 1}}) + s.at({{i, -1}, {j, -1}})) / (4 * h * h);
      jet.hessian(i, j) = v;
      jet.hessian(j, i) = v;
    }
  }
  if (order == 2) return jet;

  // nested central differences; a repeated axis uses a doubled offset
  jet.third.assign(d, Eigen::MatrixXd::Zero(d, d));
  const double denom = 8 * h * h * h;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i; j < d; ++j) {
      for (std::size_t k = j; k < d; ++k) {
        double acc = 0.0;
        for (int si : {1, -1})
          for (int sj : {1, -1})
            for (int sk : {1, -1}) {
              std::vector<std::pair<std::size_t, int>> off;
              int oi = si, oj = sj, ok = sk;
              // merge coincident axes into a single offset
              std::vector<std::pair<std::size_t, int>> raw{{i, oi}, {j, oj}, {k, ok}};
              for (const auto& [ax, st] : raw) {
                bool merged = false;
                for (auto& e : off)
                  if (e.first == ax) {
                    e.second += st;
                    merged = true;
                  }
                if (!merged) off.emplace_back(ax, st);
              }
              std::vector<double> q(p.begin(), p.end());
              for (const auto& [ax, st] : off) q[ax] += st * h;
              if (in_domain && !in_domain(q))
                throw DomainError("fd_jet: stencil leaves the field's domain");
              acc += si * sj * sk * f(q);
            }
        const double v = acc / denom;
        jet.third[i](j, k) = v;
        jet.third[i](k, j) = v;
        jet.third[j](i, k) = v;
        jet.third[j](k, i) = v;
        jet.third[k](i, j) = v;
        jet.third[k](j, i) = v;
      }
    }
  }
  return jet;
}

double richardson(double at_h, double at_half_h, int order) {
  const double f = std::pow(2.0, order);
  return (f * at_half_h - at_h) / (f - 1.0);
}

}  // namespace slcyl

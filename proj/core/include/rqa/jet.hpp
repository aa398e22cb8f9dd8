#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <span>

namespace rqa {

// Second-order scalar for closed-form fields: carries the value, the
// gradient with respect to all inputs (spatial coordinates plus, when
// present, time as the last component) and the spatial Laplacian.
//
// Propagating (v, g, lap) through arithmetic costs O(#inputs) per
// operation, so a full derivative bundle is linear in the dimension.
class Jet {
 public:
  Jet() = default;

  static Jet constant(double v, int n_inputs, int spatial_dim) {
    Jet j;
    j.v_ = v;
    j.g_ = Eigen::VectorXd::Zero(n_inputs);
    j.spatial_ = spatial_dim;
    return j;
  }

  // Input variable with unit seed at `index`.
  static Jet input(double v, int index, int n_inputs, int spatial_dim) {
    Jet j = constant(v, n_inputs, spatial_dim);
    j.g_(index) = 1.0;
    return j;
  }

  double value() const { return v_; }
  const Eigen::VectorXd& grad() const { return g_; }
  double laplacian() const { return lap_; }
  int spatial_dim() const { return spatial_; }

  // f(self) with given first and second derivative at the current value.
  Jet chain(double f, double fp, double fpp) const {
    Jet r;
    r.v_ = f;
    r.g_ = fp * g_;
    r.lap_ = fpp * g_.head(spatial_).squaredNorm() + fp * lap_;
    r.spatial_ = spatial_;
    return r;
  }

  Jet operator-() const { return chain(-v_, -1.0, 0.0); }

  friend Jet operator+(const Jet& a, const Jet& b) {
    Jet r = a;
    r.v_ += b.v_;
    r.g_ += b.g_;
    r.lap_ += b.lap_;
    return r;
  }
  friend Jet operator-(const Jet& a, const Jet& b) {
    Jet r = a;
    r.v_ -= b.v_;
    r.g_ -= b.g_;
    r.lap_ -= b.lap_;
    return r;
  }
  friend Jet operator*(const Jet& a, const Jet& b) {
    Jet r;
    r.v_ = a.v_ * b.v_;
    r.g_ = a.v_ * b.g_ + b.v_ * a.g_;
    r.lap_ = a.v_ * b.lap_ + b.v_ * a.lap_ +
             2.0 * a.g_.head(a.spatial_).dot(b.g_.head(b.spatial_));
    r.spatial_ = a.spatial_;
    return r;
  }
  friend Jet operator/(const Jet& a, const Jet& b) {
    double inv = 1.0 / b.v_;
    return a * b.chain(inv, -inv * inv, 2.0 * inv * inv * inv);
  }

  friend Jet operator+(const Jet& a, double c) { return a.chain(a.v_ + c, 1.0, 0.0); }
  friend Jet operator+(double c, const Jet& a) { return a + c; }
  friend Jet operator-(const Jet& a, double c) { return a + (-c); }
  friend Jet operator-(double c, const Jet& a) { return a.chain(c - a.v_, -1.0, 0.0); }
  friend Jet operator*(const Jet& a, double c) { return a.chain(a.v_ * c, c, 0.0); }
  friend Jet operator*(double c, const Jet& a) { return a * c; }
  friend Jet operator/(const Jet& a, double c) { return a * (1.0 / c); }
  friend Jet operator/(double c, const Jet& a) {
    double inv = 1.0 / a.v_;
    return a.chain(c * inv, -c * inv * inv, 2.0 * c * inv * inv * inv);
  }

 private:
  double v_ = 0.0;
  Eigen::VectorXd g_;
  double lap_ = 0.0;
  int spatial_ = 0;
};

inline Jet exp(const Jet& a) {
  double e = std::exp(a.value());
  return a.chain(e, e, e);
}
inline Jet log(const Jet& a) {
  double inv = 1.0 / a.value();
  return a.chain(std::log(a.value()), inv, -inv * inv);
}
inline Jet sqrt(const Jet& a) {
  double s = std::sqrt(a.value());
  return a.chain(s, 0.5 / s, -0.25 / (s * s * s));
}
inline Jet sin(const Jet& a) {
  double s = std::sin(a.value()), c = std::cos(a.value());
  return a.chain(s, c, -s);
}
inline Jet cos(const Jet& a) {
  double s = std::sin(a.value()), c = std::cos(a.value());
  return a.chain(c, -s, -c);
}

// Real power for nonnegative base; exponents >= 2 keep the second
// derivative bounded as the base goes to zero.
inline Jet pow(const Jet& a, double e) {
  double v = a.value();
  double f = std::pow(v, e);
  double fp = (v == 0.0) ? 0.0 : e * std::pow(v, e - 1.0);
  double fpp = (v == 0.0) ? 0.0 : e * (e - 1.0) * std::pow(v, e - 2.0);
  return a.chain(f, fp, fpp);
}

inline Jet squared_norm(std::span<const Jet> xs) {
  Jet s = xs[0] * xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) s = s + xs[i] * xs[i];
  return s;
}

inline Jet norm(std::span<const Jet> xs) { return sqrt(squared_norm(xs)); }

}  // namespace rqa

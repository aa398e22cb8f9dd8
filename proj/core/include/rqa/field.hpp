#pragma once

#include <Eigen/Dense>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>

#include "rqa/jet.hpp"

namespace rqa {

// Value plus the exact space-time derivatives a residual operator needs.
struct DerivativeBundle {
  double value = 0.0;
  Eigen::VectorXd spatial_gradient;
  double laplacian = 0.0;
  double time_derivative = 0.0;

  bool finite() const {
    return std::isfinite(value) && std::isfinite(laplacian) &&
           std::isfinite(time_derivative) && spatial_gradient.allFinite();
  }
};

// Non-finite value or derivative during field evaluation; carries the
// offending point.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(std::string what, Eigen::VectorXd x, double t)
      : std::runtime_error(std::move(what)), point(std::move(x)), time(t) {}
  Eigen::VectorXd point;
  double time;
};

// Evaluable scalar mapping (x, t) -> real, with exact derivatives.
// Evaluation is deterministic: identical inputs yield bit-identical values.
class ScalarField {
 public:
  virtual ~ScalarField() = default;
  virtual double value(const Eigen::VectorXd& x, double t) const = 0;
  virtual DerivativeBundle derivatives(const Eigen::VectorXd& x,
                                       double t) const = 0;
  virtual bool time_dependent() const = 0;
};

// Parameter-free field defined by a closed-form expression over jets.
// For time-dependent fields the time variable is the last jet input.
class AnalyticField : public ScalarField {
 public:
  using Fn = std::function<Jet(std::span<const Jet>, const Jet&)>;

  AnalyticField(int spatial_dim, bool time_dep, Fn fn);

  double value(const Eigen::VectorXd& x, double t) const override;
  DerivativeBundle derivatives(const Eigen::VectorXd& x,
                               double t) const override;
  bool time_dependent() const override { return time_dependent_; }

 private:
  Jet eval(const Eigen::VectorXd& x, double t) const;

  int spatial_dim_;
  bool time_dependent_;
  Fn fn_;
};

// Convenience shorthand for derivative queries on any field.
DerivativeBundle derivatives_at(const ScalarField& field,
                                const Eigen::VectorXd& x, double t);

// Diffusion coefficient a(x) with its gradient in closed form.
struct DiffusionCoefficient {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;
};

// div(a grad u) = a(x) * lap(u) + grad(a) . grad(u).
double divergence_form(const ScalarField& field,
                       const DiffusionCoefficient& coeff,
                       const Eigen::VectorXd& x, double t);

}  // namespace rqa

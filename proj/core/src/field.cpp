#include "rqa/field.hpp"

#include <utility>
#include <vector>

namespace rqa {

AnalyticField::AnalyticField(int spatial_dim, bool time_dep, Fn fn)
    : spatial_dim_(spatial_dim), time_dependent_(time_dep), fn_(std::move(fn)) {}

Jet AnalyticField::eval(const Eigen::VectorXd& x, double t) const {
  const int n = spatial_dim_ + (time_dependent_ ? 1 : 0);
  std::vector<Jet> xs(spatial_dim_);
  for (int i = 0; i < spatial_dim_; ++i)
    xs[i] = Jet::input(x(i), i, n, spatial_dim_);
  Jet tj = time_dependent_ ? Jet::input(t, spatial_dim_, n, spatial_dim_)
                           : Jet::constant(t, n, spatial_dim_);
  return fn_(xs, tj);
}

double AnalyticField::value(const Eigen::VectorXd& x, double t) const {
  return eval(x, t).value();
}

DerivativeBundle AnalyticField::derivatives(const Eigen::VectorXd& x,
                                            double t) const {
  Jet j = eval(x, t);
  DerivativeBundle b;
  b.value = j.value();
  b.spatial_gradient = j.grad().head(spatial_dim_);
  b.laplacian = j.laplacian();
  b.time_derivative = time_dependent_ ? j.grad()(spatial_dim_) : 0.0;
  if (!b.finite()) throw EvaluationError("non-finite field evaluation", x, t);
  return b;
}

DerivativeBundle derivatives_at(const ScalarField& field,
                                const Eigen::VectorXd& x, double t) {
  return field.derivatives(x, t);
}

double divergence_form(const ScalarField& field,
                       const DiffusionCoefficient& coeff,
                       const Eigen::VectorXd& x, double t) {
  DerivativeBundle b = field.derivatives(x, t);
  return coeff.value(x) * b.laplacian + coeff.gradient(x).dot(b.spatial_gradient);
}

}  // namespace rqa

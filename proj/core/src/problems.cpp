#include "rqa/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace rqa {

namespace {

constexpr double kPi = std::numbers::pi;

double coeff_a(const Eigen::VectorXd& x) { return 1.0 + 0.5 * x.squaredNorm(); }

// Exact solutions as jet expressions.

// Parabolic: u(x,t) = exp(|x| sqrt(1-t)).
Jet parabolic_exact(std::span<const Jet> xs, const Jet& t) {
  return exp(norm(xs) * sqrt(1.0 - t));
}

// Allen-Cahn / elliptic radial phase: I(x) = (pi/2) (1-|x|)^2.5.
// On boundary points rounding can push |x| an ulp above 1; clamp the base so
// the fractional power stays real (the phase is exactly 0 there anyway).
Jet radial_phase(std::span<const Jet> xs) {
  Jet base = 1.0 - norm(xs);
  if (base.value() <= 0.0)
    return Jet::constant(0.0, int(base.grad().size()), base.spatial_dim());
  return (kPi / 2.0) * pow(base, 2.5);
}

Jet allen_cahn_exact(std::span<const Jet> xs, const Jet& t) {
  return exp(-t) * sin(radial_phase(xs));
}

Jet elliptic_exact(std::span<const Jet> xs, const Jet& /*t*/) {
  return sin(radial_phase(xs));
}

}  // namespace

PdeProblem make_problem(std::string_view name, int d) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  PdeProblem p;
  p.name = std::string(name);
  p.dim = d;
  if (name == "parabolic") {
    p.kind_ = PdeProblem::Kind::kParabolic;
    p.time_dependent = true;
    p.exact_ = std::make_shared<AnalyticField>(d, true, parabolic_exact);
  } else if (name == "allen_cahn") {
    p.kind_ = PdeProblem::Kind::kAllenCahn;
    p.time_dependent = true;
    p.exact_ = std::make_shared<AnalyticField>(d, true, allen_cahn_exact);
  } else if (name == "elliptic") {
    p.kind_ = PdeProblem::Kind::kElliptic;
    p.time_dependent = false;
    p.exact_ = std::make_shared<AnalyticField>(d, false, elliptic_exact);
  } else {
    throw std::invalid_argument("unknown problem '" + std::string(name) + "'");
  }
  return p;
}

double PdeProblem::exact_at(const Eigen::VectorXd& x, double t) const {
  return exact_->value(x, t);
}

double PdeProblem::operator_value(const DerivativeBundle& b,
                                  const Eigen::VectorXd& x, double /*t*/) const {
  switch (kind_) {
    case Kind::kParabolic:
      // N1[u] = du/dt - div(a grad u), a(x) = 1 + |x|^2/2, grad a = x.
      return b.time_derivative -
             (coeff_a(x) * b.laplacian + x.dot(b.spatial_gradient));
    case Kind::kAllenCahn:
      // N2[u] = du/dt - lap u - u + u^3.
      return b.time_derivative - b.laplacian - b.value +
             b.value * b.value * b.value;
    case Kind::kElliptic:
      // N3[u] = -div(a grad u) + |grad u|^2.
      return -(coeff_a(x) * b.laplacian + x.dot(b.spatial_gradient)) +
             b.spatial_gradient.squaredNorm();
  }
  return 0.0;
}

OperatorPartials PdeProblem::operator_partials(const DerivativeBundle& b,
                                               const Eigen::VectorXd& x,
                                               double /*t*/) const {
  OperatorPartials g;
  g.d_gradient = Eigen::VectorXd::Zero(dim);
  switch (kind_) {
    case Kind::kParabolic:
      g.d_time = 1.0;
      g.d_laplacian = -coeff_a(x);
      g.d_gradient = -x;
      break;
    case Kind::kAllenCahn:
      g.d_time = 1.0;
      g.d_laplacian = -1.0;
      g.d_value = -1.0 + 3.0 * b.value * b.value;
      break;
    case Kind::kElliptic:
      g.d_laplacian = -coeff_a(x);
      g.d_gradient = -x + 2.0 * b.spatial_gradient;
      break;
  }
  return g;
}

double PdeProblem::boundary_value(const Eigen::VectorXd& /*x*/, double t) const {
  switch (kind_) {
    case Kind::kParabolic:
      return std::exp(std::sqrt(1.0 - t));
    case Kind::kAllenCahn:
    case Kind::kElliptic:
      return 0.0;
  }
  return 0.0;
}

double PdeProblem::initial_value(const Eigen::VectorXd& x) const {
  switch (kind_) {
    case Kind::kParabolic:
      return std::exp(x.norm());
    case Kind::kAllenCahn:
      return std::sin(kPi / 2.0 * std::pow(1.0 - x.norm(), 2.5));
    case Kind::kElliptic:
      throw std::logic_error("stationary problem has no initial condition");
  }
  return 0.0;
}

double PdeProblem::source_at(const Eigen::VectorXd& x, double t) const {
  DerivativeBundle b = exact_->derivatives(x, t);
  return operator_value(b, x, t);
}

double PdeProblem::printed_source_at(const Eigen::VectorXd& x, double t) const {
  const double r = x.norm();
  const double d = static_cast<double>(dim);
  switch (kind_) {
    case Kind::kParabolic: {
      // As printed (the expression carries an unbalanced parenthesis in the
      // original; transcribed term by term, it does not reproduce
      // N1[u_exact] and the cross-check documents the mismatch).
      const double u = std::exp(r * std::sqrt(1.0 - t));
      const double lu = std::log(u);
      return -0.5 * u * lu - u * lu -
             (1.0 + 0.5 * lu * lu) * u * (1.0 - t) +
             std::sqrt(1.0 - t) * (d - 1.0) / r;
    }
    case Kind::kAllenCahn: {
      // As printed; the first term of k(x) multiplies by |x| where the
      // derivation gives a division, so a mismatch is expected.
      const double w = std::abs(1.0 - r);
      const double h = std::sin(kPi / 2.0 * std::pow(w, 2.5));
      const double l = std::cos(0.5 * kPi * std::pow(w, 2.5));
      const double k = -1.25 * kPi * (d - 1.0) * r * l * std::pow(w, 1.5) -
                       25.0 / 16.0 * kPi * kPi * h * std::pow(1.0 - r, 3.0) +
                       15.0 / 8.0 * kPi * l * std::pow(w, 0.5);
      const double u = std::exp(-t) * h;
      return -std::exp(-t) * (h + k) - u + u * u * u;
    }
    case Kind::kElliptic: {
      const double I = kPi / 2.0 * std::pow(1.0 - r, 2.5);
      const double cI = std::cos(I);
      const double L = -5.0 * kPi * (d - 1.0) * cI * std::pow(1.0 - r, 1.5) /
                           (4.0 * r) -
                       25.0 / 16.0 * kPi * kPi * std::sin(I) *
                           std::pow(1.0 - r, 3.0) +
                       15.0 / 8.0 * kPi * cI * std::pow(1.0 - r, 0.5);
      return 1.25 * kPi * r * cI * std::pow(1.0 - r, 1.5) -
             (1.0 + 0.5 * r * r) * L +
             25.0 / 16.0 * kPi * kPi * cI * cI * std::pow(1.0 - r, 3.0);
    }
  }
  return 0.0;
}

Eigen::VectorXd interior_residual(const PdeProblem& problem,
                                  const ScalarField& field,
                                  const PointBatch& batch) {
  if (batch.role != Role::kInterior)
    throw std::invalid_argument("interior_residual needs an interior batch");
  Eigen::VectorXd r(batch.size());
  for (Eigen::Index p = 0; p < batch.size(); ++p) {
    const Eigen::VectorXd x = batch.xs.col(p);
    const double t = batch.ts(p);
    DerivativeBundle b = field.derivatives(x, t);
    r(p) = std::abs(problem.operator_value(b, x, t) - problem.source_at(x, t));
  }
  return r;
}

Eigen::VectorXd boundary_residual(const PdeProblem& problem,
                                  const ScalarField& field,
                                  const PointBatch& batch) {
  if (batch.role != Role::kBoundary)
    throw std::invalid_argument("boundary_residual needs a boundary batch");
  Eigen::VectorXd r(batch.size());
  for (Eigen::Index p = 0; p < batch.size(); ++p) {
    const Eigen::VectorXd x = batch.xs.col(p);
    const double t = batch.ts(p);
    r(p) = std::abs(field.value(x, t) - problem.boundary_value(x, t));
  }
  return r;
}

Eigen::VectorXd initial_residual(const PdeProblem& problem,
                                 const ScalarField& field,
                                 const PointBatch& batch) {
  if (batch.role != Role::kInitial)
    throw std::invalid_argument("initial_residual needs an initial batch");
  if (!problem.time_dependent)
    throw std::invalid_argument("stationary problem has no initial residual");
  Eigen::VectorXd r(batch.size());
  for (Eigen::Index p = 0; p < batch.size(); ++p) {
    const Eigen::VectorXd x = batch.xs.col(p);
    r(p) = std::abs(field.value(x, 0.0) - problem.initial_value(x));
  }
  return r;
}

}  // namespace rqa

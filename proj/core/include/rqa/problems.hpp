#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <string_view>

#include "rqa/field.hpp"
#include "rqa/geometry.hpp"

namespace rqa {

// Partial derivatives of the interior operator with respect to the bundle
// entries it consumes; used to seed parameter gradients.
struct OperatorPartials {
  double d_value = 0.0;
  Eigen::VectorXd d_gradient;
  double d_laplacian = 0.0;
  double d_time = 0.0;
};

// One benchmark PDE on the unit ball: interior operator, Dirichlet data,
// exact solution and manufactured source. The source is the operator applied
// to the exact solution through the derivative engine, so the manufactured
// identity N[u_exact] = f holds to machine precision by construction; the
// transcribed closed-form sources are kept purely as cross-checks.
class PdeProblem {
 public:
  std::string name;
  int dim = 0;
  bool time_dependent = false;
  double horizon = 1.0;

  const ScalarField& exact_solution() const { return *exact_; }
  double exact_at(const Eigen::VectorXd& x, double t) const;

  // N[u] assembled from a derivative bundle at (x, t).
  double operator_value(const DerivativeBundle& b, const Eigen::VectorXd& x,
                        double t) const;
  OperatorPartials operator_partials(const DerivativeBundle& b,
                                     const Eigen::VectorXd& x, double t) const;

  double boundary_value(const Eigen::VectorXd& x, double t) const;
  double initial_value(const Eigen::VectorXd& x) const;

  // Manufactured source f = N[u_exact](x, t).
  double source_at(const Eigen::VectorXd& x, double t) const;

  // The paper-transcribed closed form of f (cross-check only; see
  // printed_source_note for known transcription defects).
  double printed_source_at(const Eigen::VectorXd& x, double t) const;

  enum class Kind { kParabolic, kAllenCahn, kElliptic };
  Kind kind() const { return kind_; }

 private:
  friend PdeProblem make_problem(std::string_view, int);
  Kind kind_ = Kind::kElliptic;
  std::shared_ptr<const ScalarField> exact_;
};

// name: "parabolic" | "allen_cahn" | "elliptic".
PdeProblem make_problem(std::string_view name, int d);

// Per-point |N[field] - f| over an interior batch.
Eigen::VectorXd interior_residual(const PdeProblem& problem,
                                  const ScalarField& field,
                                  const PointBatch& batch);

// Per-point |u - g| over a boundary batch (Dirichlet).
Eigen::VectorXd boundary_residual(const PdeProblem& problem,
                                  const ScalarField& field,
                                  const PointBatch& batch);

// Per-point |u(x, 0) - h(x)| over an initial batch.
Eigen::VectorXd initial_residual(const PdeProblem& problem,
                                 const ScalarField& field,
                                 const PointBatch& batch);

}  // namespace rqa

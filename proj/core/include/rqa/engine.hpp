#pragma once

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "rqa/field.hpp"
#include "rqa/network.hpp"

namespace rqa {

// Derivative propagation for the MLP.
//
// Each neuron carries a small component vector: [value, d/dx_1 .. d/dx_m,
// spatial Laplacian] (m = input dimension, time included as the last
// gradient component). Affine layers act componentwise; the activation mixes
// components through sigma', sigma''. One forward pass therefore yields the
// exact value, gradient, time derivative and Laplacian of the network at a
// cost linear in the dimension per point.
//
// The reverse pass propagates adjoints of those component vectors back to
// the parameters, giving exact parameter gradients of any scalar loss that
// is a smooth function of the per-point bundles. Each call owns its
// workspace; nothing is shared or mutated globally.

// Forward state kept for the reverse pass.
struct EngineWorkspace {
  int comps = 0;      // per-point component count: input_dim + 2, or 1 (value only)
  int n_points = 0;
  Eigen::MatrixXd input;              // input_dim x (n_points * comps)
  std::vector<Eigen::MatrixXd> pre;   // pre-activation per hidden layer
  std::vector<Eigen::MatrixXd> post;  // post-activation per hidden layer
};

// Full bundles for a batch of points. xs is d x P; ts may be empty for
// stationary networks. Throws EvaluationError on non-finite output.
std::vector<DerivativeBundle> forward_bundles(const MlpParams& params,
                                              const Eigen::MatrixXd& xs,
                                              const Eigen::VectorXd& ts,
                                              EngineWorkspace* ws = nullptr);

// Value-only forward pass for the same batch layout.
Eigen::VectorXd forward_values(const MlpParams& params,
                               const Eigen::MatrixXd& xs,
                               const Eigen::VectorXd& ts,
                               EngineWorkspace* ws = nullptr);

// Adjoint seed dL/d(bundle) for one point of a full-bundle pass.
struct BundleAdjoint {
  double value = 0.0;
  Eigen::VectorXd spatial_gradient;  // size d (may be empty for all-zero)
  double laplacian = 0.0;
  double time_derivative = 0.0;
};

// Parameter gradient of sum_p <seed_p, bundle_p> for a full-bundle forward
// pass. Output uses the flat ordering of MlpParams::to_flat. Accumulation
// runs in fixed point order, so results are reproducible.
Eigen::VectorXd parameter_gradient(const MlpParams& params,
                                   const EngineWorkspace& ws,
                                   std::span<const BundleAdjoint> seeds);

// Same for a value-only pass: gradient of sum_p seed_p * u_p.
Eigen::VectorXd parameter_gradient_values(const MlpParams& params,
                                          const EngineWorkspace& ws,
                                          const Eigen::VectorXd& seeds);

// ScalarField view of a network; evaluation goes through the engine.
class NetworkField : public ScalarField {
 public:
  explicit NetworkField(const MlpParams& params) : params_(&params) {}
  double value(const Eigen::VectorXd& x, double t) const override;
  DerivativeBundle derivatives(const Eigen::VectorXd& x, double t) const override;
  bool time_dependent() const override { return params_->time_dependent; }

 private:
  const MlpParams* params_;
};

}  // namespace rqa

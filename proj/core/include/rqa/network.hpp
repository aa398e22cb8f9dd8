#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <vector>

namespace rqa {

inline constexpr int kHiddenLayers = 3;

// Hidden-layer activation: cubic ReLU, sigma(z) = max(z^3, 0).
// Treated as twice differentiable everywhere with sigma''(0) = 0.
inline double cubic_relu(double z) { return z > 0.0 ? z * z * z : 0.0; }
inline double cubic_relu_d1(double z) { return z > 0.0 ? 3.0 * z * z : 0.0; }
inline double cubic_relu_d2(double z) { return z > 0.0 ? 6.0 * z : 0.0; }
inline double cubic_relu_d3(double z) { return z > 0.0 ? 6.0 : 0.0; }

// Fully connected network: 3 hidden layers of uniform width with cubic ReLU,
// linear scalar output (with bias). Input is x (d components) followed by t
// for time-dependent problems.
struct MlpParams {
  int spatial_dim = 0;
  bool time_dependent = false;
  int width = 0;
  std::uint64_t seed = 0;
  std::vector<Eigen::MatrixXd> weights;  // kHiddenLayers + 1 matrices
  std::vector<Eigen::VectorXd> biases;

  int input_dim() const { return spatial_dim + (time_dependent ? 1 : 0); }
  Eigen::Index parameter_count() const;

  // Flat parameter order: for each layer (hidden first, output last),
  // the weight matrix row-major, then the bias vector. This ordering is
  // shared with parameter gradients and Adam state.
  Eigen::VectorXd to_flat() const;
  void set_flat(const Eigen::VectorXd& theta);

  bool finite() const;
};

// Weights zero-mean normal with variance 2/(15 fan_in), truncated to +-3
// standard deviations; biases zero. Seed-deterministic. The 2/15 keeps unit
// preactivation variance a fixed point under the cubic activation
// (E[max(z,0)^6] = 15 sigma^6 / 2 for z ~ N(0, sigma^2)); conventional
// ReLU-style 2/fan_in scaling makes activations blow up as magnitude^27
// across the three hidden layers.
MlpParams init_mlp(std::uint64_t seed, int d, bool time_dependent, int width);

// Plain forward pass (value only). t is ignored for stationary networks.
double mlp_forward(const MlpParams& params, const Eigen::VectorXd& x,
                   double t = 0.0);

// Checkpoint: one JSON header line (layer shapes, seed, flags) followed by
// the flat little-endian float64 parameter array.
void save_checkpoint(const std::filesystem::path& path, const MlpParams& params);
MlpParams load_checkpoint(const std::filesystem::path& path);

}  // namespace rqa

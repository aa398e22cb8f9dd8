#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "rqa/engine.hpp"
#include "rqa/metrics.hpp"
#include "rqa/problems.hpp"
#include "rqa/weighting.hpp"

namespace rqa {

struct TrainConfig {
  std::string problem = "elliptic";
  int dim = 2;
  std::string strategy = "rqa";
  WeightParams wparams;
  int iterations = 2000;
  int n_interior = 1000;
  int n_boundary = 1000;
  int n_initial = 50;
  double lambda_boundary = 1.0;
  double lambda_initial = 1.0;
  int width = 100;
  std::uint64_t seed = 0;
  int eval_every = 10;
  int n_test = 10000;
  // Adam; the step-size schedule supplies the learning rate.
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;

  void validate() const;  // throws std::invalid_argument
};

// Step size at iteration k of n: 10^(-2 - 3j/1000) with
// j = floor((k-1) * 1000 / n), i.e. 1000 equidistant segments from 1e-2
// down to just above 1e-5.
double step_size(int k, int n);

// loss = sum w_i r_i^2 + lambda_B sum w_j^B (r_j^B)^2
//      + lambda_I sum w_k^I (r_k^I)^2,
// summed in index order; weights are constants (already detached).
double assemble_loss(const Eigen::VectorXd& interior_res,
                     const Eigen::VectorXd& interior_w,
                     const Eigen::VectorXd& boundary_res,
                     const Eigen::VectorXd& boundary_w,
                     const Eigen::VectorXd* initial_res,
                     const Eigen::VectorXd* initial_w,
                     double lambda_boundary, double lambda_initial);

// Loss and (optionally) its exact parameter gradient for fixed weights.
// Residuals are evaluated at the given parameters; the weights are treated
// as constants throughout.
double weighted_loss_and_gradient(
    const MlpParams& params, const PdeProblem& problem,
    const PointBatch& interior, const Eigen::VectorXd& interior_w,
    const PointBatch& boundary, const Eigen::VectorXd& boundary_w,
    const PointBatch* initial, const Eigen::VectorXd* initial_w,
    double lambda_boundary, double lambda_initial,
    Eigen::VectorXd* grad_out);

struct EvalRow {
  int iter = 0;
  double loss = 0.0;
  double l2_error = 0.0;
  double max_error = 0.0;
  double wall_ms = 0.0;
};

struct RunRecord {
  std::vector<EvalRow> rows;
  double final_l2 = 0.0;
  double final_max = 0.0;
  TrainConfig config;
};

class TrainingDivergence : public std::runtime_error {
 public:
  TrainingDivergence(int iter, std::string role)
      : std::runtime_error("non-finite loss or gradient at iteration " +
                           std::to_string(iter) + " (" + role + ")"),
        iteration(iter),
        role(std::move(role)) {}
  int iteration;
  std::string role;
};

// Interior-batch weight snapshot offered to the dump hook.
struct WeightDump {
  PointBatch batch;
  Eigen::VectorXd residuals;
  Eigen::VectorXd raw;
  Eigen::VectorXd adjusted;
};

struct TrainHooks {
  // Overrides the configured strategy when set (tests inject spies here).
  const WeightStrategy* strategy = nullptr;
  std::vector<int> dump_iterations;
  std::function<void(int iter, const WeightDump&)> on_dump;
};

struct TrainResult {
  MlpParams params;
  RunRecord record;
};

// Full training loop: per-iteration resampled batches from iteration-keyed
// substreams (identical across strategies for a given master seed),
// strategy weights per role, IRLS-linearized weighted loss, Adam step at
// the scheduled step size, metrics on the fixed test set at the evaluation
// cadence (final iteration always evaluated). Deterministic given the seed.
TrainResult train(const TrainConfig& config, const TrainHooks& hooks = {});

}  // namespace rqa

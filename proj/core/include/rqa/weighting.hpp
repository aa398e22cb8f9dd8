#pragma once

#include <Eigen/Dense>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>

namespace rqa {

// Nonnegative per-point weights summing to 1, with strategy provenance.
struct WeightVector {
  Eigen::VectorXd w;
  std::string strategy;
};

// Parameters shared by the weighting strategies.
struct WeightParams {
  double p = 3.0;        // L_p exponent, >= 2
  double q_cut = 0.9;    // quantile above which weights are adjusted
  double q_target = 0.5; // quantile the tail is reassigned to
  double eta = 0.8;      // binary: fraction of points in the large-weight set
  double ratio = 4.0;    // binary: w_L / w_S
};

// ceil(xi * N)-th ascending order statistic (1-indexed), i.e.
// inf{v : F_N(v) >= xi} for the empirical CDF. Throws on empty input.
double empirical_quantile(std::span<const double> values, double xi);
double empirical_quantile(const Eigen::VectorXd& values, double xi);

WeightVector uniform_weights(Eigen::Index n);

// w_i = r_i^(p-2) / sum_j r_j^(p-2). Residuals are pre-scaled by their
// maximum before powering, which makes the result exactly invariant under
// power-of-two rescaling and avoids overflow for large p. All-zero
// residuals degenerate to uniform weights; NaN input is an error.
WeightVector lp_weights(const Eigen::VectorXd& residuals, double p);

// Optional diagnostics from an RQA adjustment.
struct RqaDetail {
  double threshold = 0.0;       // q_cut quantile of the input weights
  double replacement = 0.0;     // q_target quantile of the input weights
  double prenorm_max = 0.0;     // max entry before renormalization
};

// Every w_i strictly above the q_cut quantile is replaced by the q_target
// quantile (both computed on the input weights), then the vector is
// renormalized to sum 1.
WeightVector rqa_adjust(const WeightVector& weights, double q_cut,
                        double q_target, RqaDetail* detail = nullptr);

// Per-point multipliers (w_L, w_S) solving w_L = ratio * w_S and
// w_L * eta + w_S * (1 - eta) = 1.
std::pair<double, double> binary_multipliers(double eta, double ratio);

// The ceil(eta*N) points with largest residuals get multiplier w_L, the rest
// w_S (ties broken by input index after a stable descending sort); the
// returned weights are the multipliers divided by N, renormalized to sum 1.
WeightVector binary_weights(const Eigen::VectorXd& residuals, double eta,
                            double ratio);

// Strategy interface; the trainer computes weights through this so tests can
// inject instrumented providers.
class WeightStrategy {
 public:
  struct Result {
    WeightVector raw;       // before any tail adjustment
    WeightVector adjusted;  // final weights used by the loss
  };
  virtual ~WeightStrategy() = default;
  virtual Result compute(const Eigen::VectorXd& residuals) const = 0;
  virtual std::string name() const = 0;
};

// name: "uniform" | "lp" | "binary" | "rqa". Throws std::invalid_argument
// for unknown names or out-of-range parameters.
std::unique_ptr<WeightStrategy> make_strategy(std::string_view name,
                                              const WeightParams& params);

}  // namespace rqa

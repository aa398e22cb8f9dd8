#include "rqa/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace rqa {

double empirical_quantile(std::span<const double> values, double xi) {
  if (values.empty()) throw std::invalid_argument("quantile of empty vector");
  if (!(xi > 0.0 && xi < 1.0)) throw std::invalid_argument("quantile level must be in (0,1)");
  const auto n = static_cast<std::ptrdiff_t>(values.size());
  auto k = static_cast<std::ptrdiff_t>(std::ceil(xi * static_cast<double>(n)));
  k = std::clamp<std::ptrdiff_t>(k, 1, n);
  std::vector<double> copy(values.begin(), values.end());
  std::nth_element(copy.begin(), copy.begin() + (k - 1), copy.end());
  return copy[k - 1];
}

double empirical_quantile(const Eigen::VectorXd& values, double xi) {
  return empirical_quantile(std::span<const double>(values.data(), values.size()), xi);
}

WeightVector uniform_weights(Eigen::Index n) {
  if (n < 1) throw std::invalid_argument("weight vector must be nonempty");
  return {Eigen::VectorXd::Constant(n, 1.0 / static_cast<double>(n)), "uniform"};
}

WeightVector lp_weights(const Eigen::VectorXd& residuals, double p) {
  const Eigen::Index n = residuals.size();
  if (n < 1) throw std::invalid_argument("residual vector must be nonempty");
  if (p < 2.0) throw std::invalid_argument("p must be >= 2");
  if (residuals.hasNaN()) throw std::invalid_argument("NaN residual");
  if ((residuals.array() < 0.0).any())
    throw std::invalid_argument("residuals must be nonnegative");

  const double rmax = residuals.maxCoeff();
  if (rmax == 0.0) {
    WeightVector w = uniform_weights(n);
    w.strategy = "lp";
    return w;
  }
  WeightVector out;
  out.strategy = "lp";
  out.w.resize(n);
  const double e = p - 2.0;
  for (Eigen::Index i = 0; i < n; ++i)
    out.w(i) = std::pow(residuals(i) / rmax, e);
  out.w /= out.w.sum();
  return out;
}

WeightVector rqa_adjust(const WeightVector& weights, double q_cut,
                        double q_target, RqaDetail* detail) {
  if (!(q_cut > 0.0 && q_cut < 1.0) || !(q_target > 0.0 && q_target < 1.0))
    throw std::invalid_argument("quantile levels must be in (0,1)");
  if (q_target > q_cut)
    throw std::invalid_argument("q_target must not exceed q_cut");

  // Threshold and replacement both come from the pre-adjustment vector.
  const double threshold = empirical_quantile(weights.w, q_cut);
  const double replacement = empirical_quantile(weights.w, q_target);

  WeightVector out;
  out.strategy = "rqa";
  out.w = weights.w;
  for (Eigen::Index i = 0; i < out.w.size(); ++i)
    if (out.w(i) > threshold) out.w(i) = replacement;
  if (detail) {
    detail->threshold = threshold;
    detail->replacement = replacement;
    detail->prenorm_max = out.w.maxCoeff();
  }
  out.w /= out.w.sum();
  return out;
}

std::pair<double, double> binary_multipliers(double eta, double ratio) {
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("eta must be in (0,1)");
  if (ratio <= 0.0) throw std::invalid_argument("ratio must be positive");
  const double w_s = 1.0 / (ratio * eta + (1.0 - eta));
  return {ratio * w_s, w_s};
}

WeightVector binary_weights(const Eigen::VectorXd& residuals, double eta,
                            double ratio) {
  const Eigen::Index n = residuals.size();
  if (n < 1) throw std::invalid_argument("residual vector must be nonempty");
  if (residuals.hasNaN()) throw std::invalid_argument("NaN residual");
  auto [w_l, w_s] = binary_multipliers(eta, ratio);

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return residuals(a) > residuals(b);
  });
  const auto n_large = static_cast<Eigen::Index>(
      std::ceil(eta * static_cast<double>(n)));

  WeightVector out;
  out.strategy = "binary";
  out.w.resize(n);
  for (Eigen::Index rank = 0; rank < n; ++rank)
    out.w(order[rank]) = (rank < n_large ? w_l : w_s) / static_cast<double>(n);
  out.w /= out.w.sum();
  return out;
}

namespace {

class UniformStrategy final : public WeightStrategy {
 public:
  Result compute(const Eigen::VectorXd& residuals) const override {
    WeightVector w = uniform_weights(residuals.size());
    return {w, w};
  }
  std::string name() const override { return "uniform"; }
};

class LpStrategy final : public WeightStrategy {
 public:
  explicit LpStrategy(double p) : p_(p) {}
  Result compute(const Eigen::VectorXd& residuals) const override {
    WeightVector w = lp_weights(residuals, p_);
    return {w, w};
  }
  std::string name() const override { return "lp"; }

 private:
  double p_;
};

class BinaryStrategy final : public WeightStrategy {
 public:
  BinaryStrategy(double eta, double ratio) : eta_(eta), ratio_(ratio) {}
  Result compute(const Eigen::VectorXd& residuals) const override {
    WeightVector w = binary_weights(residuals, eta_, ratio_);
    return {w, w};
  }
  std::string name() const override { return "binary"; }

 private:
  double eta_, ratio_;
};

class RqaStrategy final : public WeightStrategy {
 public:
  RqaStrategy(double p, double q_cut, double q_target)
      : p_(p), q_cut_(q_cut), q_target_(q_target) {}
  Result compute(const Eigen::VectorXd& residuals) const override {
    WeightVector raw = lp_weights(residuals, p_);
    return {raw, rqa_adjust(raw, q_cut_, q_target_)};
  }
  std::string name() const override { return "rqa"; }

 private:
  double p_, q_cut_, q_target_;
};

}  // namespace

std::unique_ptr<WeightStrategy> make_strategy(std::string_view name,
                                              const WeightParams& params) {
  if (name == "uniform") return std::make_unique<UniformStrategy>();
  if (name == "lp") {
    if (params.p < 2.0) throw std::invalid_argument("p must be >= 2");
    return std::make_unique<LpStrategy>(params.p);
  }
  if (name == "binary")
    return std::make_unique<BinaryStrategy>(params.eta, params.ratio);
  if (name == "rqa") {
    if (params.p < 2.0) throw std::invalid_argument("p must be >= 2");
    if (params.q_target > params.q_cut)
      throw std::invalid_argument("q_target must not exceed q_cut");
    return std::make_unique<RqaStrategy>(params.p, params.q_cut, params.q_target);
  }
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

}  // namespace rqa

#include "rqa/trainer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

namespace rqa {

void TrainConfig::validate() const {
  if (iterations < 1) throw std::invalid_argument("iterations must be >= 1");
  if (n_interior < 1 || n_boundary < 1 || n_initial < 1)
    throw std::invalid_argument("point budgets must be >= 1");
  if (lambda_boundary < 0.0 || lambda_initial < 0.0)
    throw std::invalid_argument("penalty factors must be >= 0");
  if (width < 1) throw std::invalid_argument("width must be >= 1");
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  if (eval_every < 1) throw std::invalid_argument("eval_every must be >= 1");
  if (n_test < 1) throw std::invalid_argument("n_test must be >= 1");
  make_problem(problem, dim);          // validates the name
  make_strategy(strategy, wparams);    // validates name and parameters
}

double step_size(int k, int n) {
  const auto j = static_cast<double>(
      (static_cast<std::int64_t>(k) - 1) * 1000 / n);
  return std::pow(10.0, -2.0 - 3.0 * j / 1000.0);
}

double assemble_loss(const Eigen::VectorXd& interior_res,
                     const Eigen::VectorXd& interior_w,
                     const Eigen::VectorXd& boundary_res,
                     const Eigen::VectorXd& boundary_w,
                     const Eigen::VectorXd* initial_res,
                     const Eigen::VectorXd* initial_w,
                     double lambda_boundary, double lambda_initial) {
  if (interior_res.size() != interior_w.size() ||
      boundary_res.size() != boundary_w.size() ||
      (initial_res != nullptr) != (initial_w != nullptr) ||
      (initial_res && initial_res->size() != initial_w->size()))
    throw std::invalid_argument("residual/weight length mismatch");

  auto role_sum = [](const Eigen::VectorXd& r, const Eigen::VectorXd& w) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < r.size(); ++i) s += w(i) * (r(i) * r(i));
    return s;
  };
  double loss = role_sum(interior_res, interior_w) +
                lambda_boundary * role_sum(boundary_res, boundary_w);
  if (initial_res) loss += lambda_initial * role_sum(*initial_res, *initial_w);
  return loss;
}

namespace {

// Forward evaluation of one role with everything the reverse pass needs.
struct RoleForward {
  EngineWorkspace ws;
  Eigen::VectorXd diff;  // signed residual N[u]-f, u-g, or u-h
};

RoleForward forward_interior(const MlpParams& params, const PdeProblem& problem,
                             const PointBatch& batch,
                             std::vector<DerivativeBundle>* bundles_out = nullptr) {
  RoleForward rf;
  auto bundles = forward_bundles(params, batch.xs, batch.ts, &rf.ws);
  rf.diff.resize(batch.size());
  for (Eigen::Index p = 0; p < batch.size(); ++p) {
    const Eigen::VectorXd x = batch.xs.col(p);
    const double t = batch.ts(p);
    rf.diff(p) = problem.operator_value(bundles[p], x, t) - problem.source_at(x, t);
  }
  if (bundles_out) *bundles_out = std::move(bundles);
  return rf;
}

RoleForward forward_dirichlet(const MlpParams& params, const PdeProblem& problem,
                              const PointBatch& batch) {
  RoleForward rf;
  Eigen::VectorXd u = forward_values(params, batch.xs, batch.ts, &rf.ws);
  rf.diff.resize(batch.size());
  for (Eigen::Index p = 0; p < batch.size(); ++p) {
    const Eigen::VectorXd x = batch.xs.col(p);
    if (batch.role == Role::kInitial)
      rf.diff(p) = u(p) - problem.initial_value(x);
    else
      rf.diff(p) = u(p) - problem.boundary_value(x, batch.ts(p));
  }
  return rf;
}

Eigen::VectorXd interior_gradient(const MlpParams& params,
                                  const PdeProblem& problem,
                                  const PointBatch& batch,
                                  const RoleForward& rf,
                                  const std::vector<DerivativeBundle>& bundles,
                                  const Eigen::VectorXd& w) {
  std::vector<BundleAdjoint> seeds(batch.size());
  for (Eigen::Index p = 0; p < batch.size(); ++p) {
    const Eigen::VectorXd x = batch.xs.col(p);
    OperatorPartials op = problem.operator_partials(bundles[p], x, batch.ts(p));
    const double factor = 2.0 * w(p) * rf.diff(p);
    seeds[p].value = factor * op.d_value;
    seeds[p].spatial_gradient = factor * op.d_gradient;
    seeds[p].laplacian = factor * op.d_laplacian;
    seeds[p].time_derivative = factor * op.d_time;
  }
  return parameter_gradient(params, rf.ws, seeds);
}

Eigen::VectorXd dirichlet_gradient(const MlpParams& params, const RoleForward& rf,
                                   const Eigen::VectorXd& w, double lambda) {
  Eigen::VectorXd seeds = 2.0 * lambda * w.cwiseProduct(rf.diff);
  return parameter_gradient_values(params, rf.ws, seeds);
}

}  // namespace

double weighted_loss_and_gradient(
    const MlpParams& params, const PdeProblem& problem,
    const PointBatch& interior, const Eigen::VectorXd& interior_w,
    const PointBatch& boundary, const Eigen::VectorXd& boundary_w,
    const PointBatch* initial, const Eigen::VectorXd* initial_w,
    double lambda_boundary, double lambda_initial, Eigen::VectorXd* grad_out) {
  std::vector<DerivativeBundle> bundles;
  RoleForward fi = forward_interior(params, problem, interior, &bundles);
  RoleForward fb = forward_dirichlet(params, problem, boundary);
  std::optional<RoleForward> f0;
  if (initial) f0 = forward_dirichlet(params, problem, *initial);

  Eigen::VectorXd r_int = fi.diff.cwiseAbs();
  Eigen::VectorXd r_b = fb.diff.cwiseAbs();
  Eigen::VectorXd r_0;
  if (f0) r_0 = f0->diff.cwiseAbs();

  double loss = assemble_loss(r_int, interior_w, r_b, boundary_w,
                              f0 ? &r_0 : nullptr, initial_w,
                              lambda_boundary, lambda_initial);
  if (grad_out) {
    *grad_out = interior_gradient(params, problem, interior, fi, bundles,
                                  interior_w);
    *grad_out += dirichlet_gradient(params, fb, boundary_w, lambda_boundary);
    if (f0) *grad_out += dirichlet_gradient(params, *f0, *initial_w, lambda_initial);
  }
  return loss;
}

TrainResult train(const TrainConfig& config, const TrainHooks& hooks) {
  config.validate();
  PdeProblem problem = make_problem(config.problem, config.dim);
  std::unique_ptr<WeightStrategy> owned;
  const WeightStrategy* strategy = hooks.strategy;
  if (!strategy) {
    owned = make_strategy(config.strategy, config.wparams);
    strategy = owned.get();
  }

  MlpParams params = init_mlp(config.seed, config.dim, problem.time_dependent,
                              config.width);
  TestSet test = make_test_set(problem, config.n_test, config.seed);

  const Eigen::Index n_params = params.parameter_count();
  Eigen::VectorXd theta = params.to_flat();
  Eigen::VectorXd adam_m = Eigen::VectorXd::Zero(n_params);
  Eigen::VectorXd adam_v = Eigen::VectorXd::Zero(n_params);

  TrainResult result;
  result.record.config = config;

  const double T = problem.time_dependent ? problem.horizon : 0.0;
  const int n = config.iterations;
  auto interval_start = std::chrono::steady_clock::now();

  for (int k = 1; k <= n; ++k) {
    Rng rng_i = Rng::substream(config.seed, Stream::kInterior, k);
    Rng rng_b = Rng::substream(config.seed, Stream::kBoundary, k);
    PointBatch interior = sample_interior(config.n_interior, config.dim, T, rng_i);
    PointBatch boundary = sample_boundary(config.n_boundary, config.dim, T, rng_b);
    std::optional<PointBatch> initial;
    if (problem.time_dependent) {
      Rng rng_0 = Rng::substream(config.seed, Stream::kInitial, k);
      initial = sample_initial(config.n_initial, config.dim, rng_0);
    }

    std::vector<DerivativeBundle> bundles;
    RoleForward fi = forward_interior(params, problem, interior, &bundles);
    RoleForward fb = forward_dirichlet(params, problem, boundary);
    std::optional<RoleForward> f0;
    if (initial) f0 = forward_dirichlet(params, problem, *initial);

    Eigen::VectorXd r_int = fi.diff.cwiseAbs();
    Eigen::VectorXd r_b = fb.diff.cwiseAbs();
    Eigen::VectorXd r_0;
    if (f0) r_0 = f0->diff.cwiseAbs();
    if (!r_int.allFinite()) throw TrainingDivergence(k, "interior");
    if (!r_b.allFinite()) throw TrainingDivergence(k, "boundary");
    if (f0 && !r_0.allFinite()) throw TrainingDivergence(k, "initial");

    // Weights from residuals at the current (detached) iterate; they stay
    // constant through the gradient below.
    WeightStrategy::Result w_int = strategy->compute(r_int);
    WeightStrategy::Result w_b = strategy->compute(r_b);
    std::optional<WeightStrategy::Result> w_0;
    if (f0) w_0 = strategy->compute(r_0);

    if (hooks.on_dump &&
        std::find(hooks.dump_iterations.begin(), hooks.dump_iterations.end(), k) !=
            hooks.dump_iterations.end()) {
      WeightDump dump{interior, r_int, w_int.raw.w, w_int.adjusted.w};
      hooks.on_dump(k, dump);
    }

    double loss = assemble_loss(r_int, w_int.adjusted.w, r_b, w_b.adjusted.w,
                                f0 ? &r_0 : nullptr,
                                w_0 ? &w_0->adjusted.w : nullptr,
                                config.lambda_boundary, config.lambda_initial);
    if (!std::isfinite(loss)) throw TrainingDivergence(k, "loss");

    Eigen::VectorXd grad =
        interior_gradient(params, problem, interior, fi, bundles, w_int.adjusted.w);
    grad += dirichlet_gradient(params, fb, w_b.adjusted.w, config.lambda_boundary);
    if (f0)
      grad += dirichlet_gradient(params, *f0, w_0->adjusted.w, config.lambda_initial);
    if (!grad.allFinite()) throw TrainingDivergence(k, "parameters");

    // Adam at the scheduled step size.
    const double lr = step_size(k, n);
    const double b1 = config.adam_beta1;
    const double b2 = config.adam_beta2;
    const double c1 = 1.0 - std::pow(b1, k);
    const double c2 = 1.0 - std::pow(b2, k);
    for (Eigen::Index i = 0; i < n_params; ++i) {
      adam_m(i) = b1 * adam_m(i) + (1.0 - b1) * grad(i);
      adam_v(i) = b2 * adam_v(i) + (1.0 - b2) * grad(i) * grad(i);
      theta(i) -= lr * (adam_m(i) / c1) /
                  (std::sqrt(adam_v(i) / c2) + config.adam_eps);
    }
    params.set_flat(theta);
    if (!params.finite()) throw TrainingDivergence(k, "parameters");

    if (k % config.eval_every == 0 || k == n) {
      Eigen::VectorXd predicted =
          forward_values(params, test.points.xs, test.points.ts);
      EvalRow row;
      row.iter = k;
      row.loss = loss;
      row.l2_error = relative_l2_error(predicted, test.exact);
      row.max_error = relative_max_error(predicted, test.exact);
      auto now = std::chrono::steady_clock::now();
      row.wall_ms =
          std::chrono::duration<double, std::milli>(now - interval_start).count();
      interval_start = now;
      result.record.rows.push_back(row);
    }
  }

  result.record.final_l2 = result.record.rows.back().l2_error;
  result.record.final_max = result.record.rows.back().max_error;
  result.params = std::move(params);
  return result;
}

}  // namespace rqa

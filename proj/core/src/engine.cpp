#include "rqa/engine.hpp"

#include <stdexcept>

namespace rqa {

namespace {

// comps layout per point: [value, g_1..g_m, lap], or [value] when comps == 1.
void activation_forward(const Eigen::MatrixXd& Z, Eigen::MatrixXd& A, int comps,
                        int spatial, int n_points) {
  const int m = comps - 2;  // gradient components (comps > 1)
  for (int p = 0; p < n_points; ++p) {
    const int c0 = p * comps;
    for (Eigen::Index j = 0; j < Z.rows(); ++j) {
      const double zv = Z(j, c0);
      if (zv > 0.0) {
        const double s1 = 3.0 * zv * zv;
        A(j, c0) = zv * zv * zv;
        if (comps > 1) {
          const double s2 = 6.0 * zv;
          double sumsq = 0.0;
          for (int k = 1; k <= m; ++k) {
            const double zg = Z(j, c0 + k);
            A(j, c0 + k) = s1 * zg;
            if (k <= spatial) sumsq += zg * zg;
          }
          A(j, c0 + comps - 1) = s2 * sumsq + s1 * Z(j, c0 + comps - 1);
        }
      } else {
        for (int c = 0; c < comps; ++c) A(j, c0 + c) = 0.0;
      }
    }
  }
}

void activation_backward(const Eigen::MatrixXd& Z, const Eigen::MatrixXd& Abar,
                         Eigen::MatrixXd& Zbar, int comps, int spatial,
                         int n_points) {
  const int m = comps - 2;
  for (int p = 0; p < n_points; ++p) {
    const int c0 = p * comps;
    for (Eigen::Index j = 0; j < Z.rows(); ++j) {
      const double zv = Z(j, c0);
      if (zv <= 0.0) {
        for (int c = 0; c < comps; ++c) Zbar(j, c0 + c) = 0.0;
        continue;
      }
      const double s1 = 3.0 * zv * zv;
      if (comps == 1) {
        Zbar(j, c0) = s1 * Abar(j, c0);
        continue;
      }
      const double s2 = 6.0 * zv;
      const double s3 = 6.0;
      const double av_bar = Abar(j, c0);
      const double al_bar = Abar(j, c0 + comps - 1);
      const double zl = Z(j, c0 + comps - 1);
      double dot_g = 0.0;
      double sumsq = 0.0;
      for (int k = 1; k <= m; ++k) {
        const double zg = Z(j, c0 + k);
        dot_g += Abar(j, c0 + k) * zg;
        if (k <= spatial) sumsq += zg * zg;
      }
      Zbar(j, c0) = s1 * av_bar + s2 * dot_g + (s3 * sumsq + s2 * zl) * al_bar;
      for (int k = 1; k <= m; ++k) {
        double v = s1 * Abar(j, c0 + k);
        if (k <= spatial) v += 2.0 * s2 * Z(j, c0 + k) * al_bar;
        Zbar(j, c0 + k) = v;
      }
      Zbar(j, c0 + comps - 1) = s1 * al_bar;
    }
  }
}

// Shared forward machinery; fills workspace and returns output row
// (1 x n_points*comps).
Eigen::MatrixXd run_forward(const MlpParams& params, const Eigen::MatrixXd& xs,
                            const Eigen::VectorXd& ts, int comps,
                            EngineWorkspace& ws) {
  const int d = params.spatial_dim;
  const int m = params.input_dim();
  const int P = static_cast<int>(xs.cols());
  if (xs.rows() != d) throw std::invalid_argument("point dimension mismatch");
  if (params.time_dependent && ts.size() != P)
    throw std::invalid_argument("time vector length mismatch");

  ws.comps = comps;
  ws.n_points = P;
  ws.input = Eigen::MatrixXd::Zero(m, static_cast<Eigen::Index>(P) * comps);
  for (int p = 0; p < P; ++p) {
    const int c0 = p * comps;
    ws.input.col(c0).head(d) = xs.col(p);
    if (params.time_dependent) ws.input(d, c0) = ts(p);
    if (comps > 1)
      for (int k = 0; k < m; ++k) ws.input(k, c0 + 1 + k) = 1.0;
  }

  ws.pre.resize(kHiddenLayers);
  ws.post.resize(kHiddenLayers);
  const Eigen::MatrixXd* prev = &ws.input;
  for (int l = 0; l < kHiddenLayers; ++l) {
    ws.pre[l].noalias() = params.weights[l] * (*prev);
    for (int p = 0; p < P; ++p) ws.pre[l].col(p * comps) += params.biases[l];
    ws.post[l].resizeLike(ws.pre[l]);
    activation_forward(ws.pre[l], ws.post[l], comps, d, P);
    prev = &ws.post[l];
  }

  Eigen::MatrixXd out = params.weights[kHiddenLayers] * (*prev);
  for (int p = 0; p < P; ++p) out(0, p * comps) += params.biases[kHiddenLayers](0);
  return out;
}

Eigen::VectorXd run_backward(const MlpParams& params, const EngineWorkspace& ws,
                             const Eigen::MatrixXd& out_bar) {
  const int comps = ws.comps;
  const int P = ws.n_points;
  const int d = params.spatial_dim;

  Eigen::VectorXd grad(params.parameter_count());
  Eigen::Index pos = grad.size();

  // Output layer last in the flat layout; walk backwards.
  auto emit = [&](const Eigen::MatrixXd& Wbar, const Eigen::VectorXd& bbar) {
    pos -= bbar.size();
    grad.segment(pos, bbar.size()) = bbar;
    pos -= Wbar.size();
    Eigen::Index q = pos;
    for (Eigen::Index r = 0; r < Wbar.rows(); ++r)
      for (Eigen::Index c = 0; c < Wbar.cols(); ++c) grad(q++) = Wbar(r, c);
  };

  Eigen::MatrixXd Wout_bar = out_bar * ws.post[kHiddenLayers - 1].transpose();
  Eigen::VectorXd bout_bar = Eigen::VectorXd::Zero(1);
  for (int p = 0; p < P; ++p) bout_bar(0) += out_bar(0, p * comps);
  emit(Wout_bar, bout_bar);

  Eigen::MatrixXd Abar =
      params.weights[kHiddenLayers].transpose() * out_bar;
  Eigen::MatrixXd Zbar;
  for (int l = kHiddenLayers - 1; l >= 0; --l) {
    Zbar.resizeLike(ws.pre[l]);
    activation_backward(ws.pre[l], Abar, Zbar, comps, d, P);
    const Eigen::MatrixXd& Aprev = (l == 0) ? ws.input : ws.post[l - 1];
    Eigen::MatrixXd Wbar = Zbar * Aprev.transpose();
    Eigen::VectorXd bbar = Eigen::VectorXd::Zero(params.biases[l].size());
    for (int p = 0; p < P; ++p) bbar += Zbar.col(p * comps);
    emit(Wbar, bbar);
    if (l > 0) Abar.noalias() = params.weights[l].transpose() * Zbar;
  }
  return grad;
}

}  // namespace

std::vector<DerivativeBundle> forward_bundles(const MlpParams& params,
                                              const Eigen::MatrixXd& xs,
                                              const Eigen::VectorXd& ts,
                                              EngineWorkspace* ws) {
  EngineWorkspace local;
  EngineWorkspace& w = ws ? *ws : local;
  const int d = params.spatial_dim;
  const int m = params.input_dim();
  const int comps = m + 2;
  Eigen::MatrixXd out = run_forward(params, xs, ts, comps, w);

  std::vector<DerivativeBundle> bundles(xs.cols());
  for (int p = 0; p < static_cast<int>(xs.cols()); ++p) {
    const int c0 = p * comps;
    DerivativeBundle& b = bundles[p];
    b.value = out(0, c0);
    b.spatial_gradient = out.row(0).segment(c0 + 1, d).transpose();
    b.time_derivative = params.time_dependent ? out(0, c0 + 1 + d) : 0.0;
    b.laplacian = out(0, c0 + comps - 1);
    if (!b.finite())
      throw EvaluationError("non-finite network derivatives", xs.col(p),
                            params.time_dependent ? ts(p) : 0.0);
  }
  return bundles;
}

Eigen::VectorXd forward_values(const MlpParams& params, const Eigen::MatrixXd& xs,
                               const Eigen::VectorXd& ts, EngineWorkspace* ws) {
  EngineWorkspace local;
  EngineWorkspace& w = ws ? *ws : local;
  Eigen::MatrixXd out = run_forward(params, xs, ts, 1, w);
  Eigen::VectorXd values = out.row(0).transpose();
  for (int p = 0; p < values.size(); ++p)
    if (!std::isfinite(values(p)))
      throw EvaluationError("non-finite network value", xs.col(p),
                            params.time_dependent ? ts(p) : 0.0);
  return values;
}

Eigen::VectorXd parameter_gradient(const MlpParams& params,
                                   const EngineWorkspace& ws,
                                   std::span<const BundleAdjoint> seeds) {
  const int comps = ws.comps;
  const int d = params.spatial_dim;
  if (comps != params.input_dim() + 2)
    throw std::invalid_argument("workspace is not a full-bundle pass");
  if (static_cast<int>(seeds.size()) != ws.n_points)
    throw std::invalid_argument("seed count mismatch");

  Eigen::MatrixXd out_bar =
      Eigen::MatrixXd::Zero(1, static_cast<Eigen::Index>(ws.n_points) * comps);
  for (int p = 0; p < ws.n_points; ++p) {
    const int c0 = p * comps;
    const BundleAdjoint& s = seeds[p];
    out_bar(0, c0) = s.value;
    if (s.spatial_gradient.size() > 0)
      out_bar.row(0).segment(c0 + 1, d) = s.spatial_gradient.transpose();
    if (params.time_dependent) out_bar(0, c0 + 1 + d) = s.time_derivative;
    out_bar(0, c0 + comps - 1) = s.laplacian;
  }
  return run_backward(params, ws, out_bar);
}

Eigen::VectorXd parameter_gradient_values(const MlpParams& params,
                                          const EngineWorkspace& ws,
                                          const Eigen::VectorXd& seeds) {
  if (ws.comps != 1)
    throw std::invalid_argument("workspace is not a value-only pass");
  if (seeds.size() != ws.n_points)
    throw std::invalid_argument("seed count mismatch");
  Eigen::MatrixXd out_bar = seeds.transpose();
  return run_backward(params, ws, out_bar);
}

double NetworkField::value(const Eigen::VectorXd& x, double t) const {
  return mlp_forward(*params_, x, t);
}

DerivativeBundle NetworkField::derivatives(const Eigen::VectorXd& x,
                                           double t) const {
  Eigen::MatrixXd xs = x;
  Eigen::VectorXd ts(1);
  ts(0) = t;
  return forward_bundles(*params_, xs, ts)[0];
}

}  // namespace rqa

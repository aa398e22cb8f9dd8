#include "rqa/metrics.hpp"

#include <stdexcept>

namespace rqa {

TestSet make_test_set(const PdeProblem& problem, int n, std::uint64_t master_seed) {
  Rng rng = Rng::substream(master_seed, Stream::kTestSet, 0);
  TestSet ts;
  ts.points = sample_interior(n, problem.dim,
                              problem.time_dependent ? problem.horizon : 0.0, rng);
  ts.exact.resize(n);
  for (int p = 0; p < n; ++p)
    ts.exact(p) = problem.exact_at(ts.points.xs.col(p), ts.points.ts(p));
  return ts;
}

double relative_l2_error(const Eigen::VectorXd& predicted,
                         const Eigen::VectorXd& exact) {
  if (predicted.size() != exact.size())
    throw std::invalid_argument("metric input length mismatch");
  const double denom = exact.squaredNorm();
  if (denom == 0.0)
    throw std::invalid_argument("exact values are identically zero");
  return std::sqrt((predicted - exact).squaredNorm() / denom);
}

double relative_max_error(const Eigen::VectorXd& predicted,
                          const Eigen::VectorXd& exact) {
  if (predicted.size() != exact.size())
    throw std::invalid_argument("metric input length mismatch");
  const double denom = exact.cwiseAbs().maxCoeff();
  if (denom == 0.0)
    throw std::invalid_argument("exact values are identically zero");
  return (predicted - exact).cwiseAbs().maxCoeff() / denom;
}

}  // namespace rqa

#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "rqa/geometry.hpp"
#include "rqa/problems.hpp"

namespace rqa {

// Fixed test set with precomputed exact-solution values. Drawn once per run
// from a dedicated substream of the master seed, so every strategy in a
// comparison evaluates on the same points.
struct TestSet {
  PointBatch points;
  Eigen::VectorXd exact;
};

TestSet make_test_set(const PdeProblem& problem, int n, std::uint64_t master_seed);

// sqrt(sum (pred-exact)^2 / sum exact^2). Throws if exact is identically zero.
double relative_l2_error(const Eigen::VectorXd& predicted,
                         const Eigen::VectorXd& exact);

// max|pred-exact| / max|exact|.
double relative_max_error(const Eigen::VectorXd& predicted,
                          const Eigen::VectorXd& exact);

}  // namespace rqa

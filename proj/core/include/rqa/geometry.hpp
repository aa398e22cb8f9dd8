#pragma once

#include <Eigen/Dense>

#include "rqa/rng.hpp"

namespace rqa {

enum class Role { kInterior, kBoundary, kInitial };

// Collocation points with a role tag. xs is d x n; ts holds one time per
// point (all zero for initial batches and stationary problems).
struct PointBatch {
  Eigen::MatrixXd xs;
  Eigen::VectorXd ts;
  Role role = Role::kInterior;

  Eigen::Index size() const { return xs.cols(); }
};

// n points uniform on the open unit ball {|x| < 1} times (0, T):
// direction from a normalized standard Gaussian, radius U^(1/d), t uniform.
// Radii below 1e-12 are rejected and redrawn. Pass T = 0 for stationary
// problems (all times zero).
PointBatch sample_interior(int n, int d, double T, Rng& rng);

// n points with |x| = 1 (normalized Gaussian direction), t uniform in (0, T).
PointBatch sample_boundary(int n, int d, double T, Rng& rng);

// n interior-uniform spatial points, all with t = 0 exactly.
PointBatch sample_initial(int n, int d, Rng& rng);

}  // namespace rqa

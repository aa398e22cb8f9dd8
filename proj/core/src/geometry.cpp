#include "rqa/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace rqa {

namespace {

// Unit direction from a normalized Gaussian draw; redraws the (measure-zero)
// degenerate all-zero case.
Eigen::VectorXd gaussian_direction(int d, Rng& rng) {
  Eigen::VectorXd v(d);
  double norm;
  do {
    for (int i = 0; i < d; ++i) v(i) = rng.normal();
    norm = v.norm();
  } while (norm < 1e-300);
  return v / norm;
}

void check_args(int n, int d) {
  if (n < 1) throw std::invalid_argument("sample count must be >= 1");
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
}

}  // namespace

PointBatch sample_interior(int n, int d, double T, Rng& rng) {
  check_args(n, d);
  PointBatch batch;
  batch.role = Role::kInterior;
  batch.xs.resize(d, n);
  batch.ts = Eigen::VectorXd::Zero(n);
  for (int p = 0; p < n; ++p) {
    double radius;
    do {
      radius = std::pow(rng.uniform01(), 1.0 / d);
    } while (radius < 1e-12);
    batch.xs.col(p) = radius * gaussian_direction(d, rng);
    if (T > 0.0) batch.ts(p) = rng.uniform(0.0, T);
  }
  return batch;
}

PointBatch sample_boundary(int n, int d, double T, Rng& rng) {
  check_args(n, d);
  PointBatch batch;
  batch.role = Role::kBoundary;
  batch.xs.resize(d, n);
  batch.ts = Eigen::VectorXd::Zero(n);
  for (int p = 0; p < n; ++p) {
    batch.xs.col(p) = gaussian_direction(d, rng);
    if (T > 0.0) batch.ts(p) = rng.uniform(0.0, T);
  }
  return batch;
}

PointBatch sample_initial(int n, int d, Rng& rng) {
  PointBatch batch = sample_interior(n, d, 0.0, rng);
  batch.role = Role::kInitial;
  return batch;
}

}  // namespace rqa

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <rqa/geometry.hpp>
#include <vector>

using rqa::PointBatch;
using rqa::Rng;

namespace {

// Two-sided Kolmogorov-Smirnov statistic against a CDF.
double ks_statistic(std::vector<double> xs, double (*cdf)(double)) {
  std::sort(xs.begin(), xs.end());
  const double n = double(xs.size());
  double stat = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    double F = cdf(xs[i]);
    stat = std::max(stat, std::abs(F - double(i) / n));
    stat = std::max(stat, std::abs(F - double(i + 1) / n));
  }
  return stat;
}

constexpr double kAlpha01Coeff = 1.628;  // KS critical coefficient, alpha=0.01
constexpr double kChi2Crit9 = 21.666;    // chi-square, 9 dof, alpha=0.01

}  // namespace

TEST_CASE("interior points lie in the open ball with times in range") {
  Rng rng(1);
  for (int d : {1, 2, 5}) {
    auto batch = rqa::sample_interior(2000, d, 1.0, rng);
    CHECK(batch.role == rqa::Role::kInterior);
    CHECK(batch.size() == 2000);
    REQUIRE(batch.xs.rows() == d);
    for (Eigen::Index j = 0; j < batch.size(); ++j) {
      CHECK(batch.xs.col(j).norm() < 1.0);
      CHECK(batch.xs.col(j).norm() >= 1e-12);
      CHECK(batch.ts(j) > 0.0);
      CHECK(batch.ts(j) < 1.0);
    }
  }
}

TEST_CASE("stationary interior batches have zero times") {
  Rng rng(2);
  auto batch = rqa::sample_interior(100, 3, 0.0, rng);
  CHECK(batch.ts.isZero());
}

TEST_CASE("boundary points have unit norm") {
  Rng rng(3);
  auto batch = rqa::sample_boundary(5000, 4, 1.0, rng);
  CHECK(batch.role == rqa::Role::kBoundary);
  for (Eigen::Index j = 0; j < batch.size(); ++j)
    CHECK(batch.xs.col(j).norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("initial batches sit exactly at t = 0") {
  Rng rng(4);
  auto batch = rqa::sample_initial(500, 5, rng);
  CHECK(batch.role == rqa::Role::kInitial);
  CHECK((batch.ts.array() == 0.0).all());
  for (Eigen::Index j = 0; j < batch.size(); ++j)
    CHECK(batch.xs.col(j).norm() < 1.0);
}

TEST_CASE("1-d interior positions are uniform on (-1, 1)") {
  Rng rng(5);
  const int n = 100000;
  auto batch = rqa::sample_interior(n, 1, 0.0, rng);
  std::vector<double> xs(n);
  for (int j = 0; j < n; ++j) xs[j] = batch.xs(0, j);
  double stat = ks_statistic(std::move(xs),
                             +[](double x) { return (x + 1.0) / 2.0; });
  CHECK(stat < kAlpha01Coeff / std::sqrt(double(n)));
}

TEST_CASE("2-d boundary angles are uniform on (-pi, pi)") {
  Rng rng(6);
  const int n = 100000;
  auto batch = rqa::sample_boundary(n, 2, 0.0, rng);
  std::vector<double> angles(n);
  for (int j = 0; j < n; ++j)
    angles[j] = std::atan2(batch.xs(1, j), batch.xs(0, j));
  double stat = ks_statistic(
      std::move(angles),
      +[](double a) { return (a + M_PI) / (2.0 * M_PI); });
  CHECK(stat < kAlpha01Coeff / std::sqrt(double(n)));
}

TEST_CASE("interior radius deciles pass a chi-square test") {
  for (int d : {2, 5}) {
    Rng rng(7 + d);
    const int n = 100000;
    auto batch = rqa::sample_interior(n, d, 0.0, rng);
    // r^d is uniform on (0,1): decile edges at (k/10)^(1/d).
    std::array<int, 10> counts{};
    for (int j = 0; j < n; ++j) {
      double u = std::pow(batch.xs.col(j).norm(), d);
      int bin = std::min(9, int(u * 10.0));
      ++counts[bin];
    }
    double chi2 = 0.0;
    const double expected = n / 10.0;
    for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
    CHECK(chi2 < kChi2Crit9);
  }
}

TEST_CASE("positive-quadrant fraction in 2-d is one quarter") {
  Rng rng(8);
  const int n = 100000;
  auto batch = rqa::sample_interior(n, 2, 0.0, rng);
  int hits = 0;
  for (int j = 0; j < n; ++j)
    if (batch.xs(0, j) > 0.0 && batch.xs(1, j) > 0.0) ++hits;
  CHECK(double(hits) / n == doctest::Approx(0.25).epsilon(0.04));
}

TEST_CASE("sampling is deterministic given the generator state") {
  Rng a = Rng::substream(9, rqa::Stream::kInterior, 3);
  Rng b = Rng::substream(9, rqa::Stream::kInterior, 3);
  auto ba = rqa::sample_interior(200, 3, 1.0, a);
  auto bb = rqa::sample_interior(200, 3, 1.0, b);
  CHECK(ba.xs == bb.xs);
  CHECK(ba.ts == bb.ts);
}

TEST_CASE("invalid arguments are rejected") {
  Rng rng(10);
  CHECK_THROWS_AS(rqa::sample_interior(0, 2, 1.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(rqa::sample_boundary(10, 0, 1.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(rqa::sample_initial(-1, 2, rng), std::invalid_argument);
}

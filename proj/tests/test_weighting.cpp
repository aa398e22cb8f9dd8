#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <rqa/rng.hpp>
#include <rqa/weighting.hpp>
#include <vector>

using Eigen::VectorXd;

namespace {
VectorXd vec(std::initializer_list<double> xs) {
  VectorXd v(Eigen::Index(xs.size()));
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}
}  // namespace

TEST_CASE("empirical quantile is the ceil(xi N)-th order statistic") {
  std::vector<double> a = {3.0, 1.0, 2.0};
  CHECK(rqa::empirical_quantile(a, 0.5) == 2.0);
  std::vector<double> b;
  for (int i = 1; i <= 10; ++i) b.push_back(double(i));
  CHECK(rqa::empirical_quantile(b, 0.9) == 9.0);
  CHECK(rqa::empirical_quantile(b, 0.05) == 1.0);
  CHECK(rqa::empirical_quantile(b, 0.95) == 10.0);
  std::vector<double> c = {5.0};
  CHECK(rqa::empirical_quantile(c, 0.5) == 5.0);
}

TEST_CASE("empirical quantile rejects bad input") {
  std::vector<double> empty;
  CHECK_THROWS_AS(rqa::empirical_quantile(empty, 0.5), std::invalid_argument);
  std::vector<double> a = {1.0, 2.0};
  CHECK_THROWS_AS(rqa::empirical_quantile(a, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(rqa::empirical_quantile(a, 1.5), std::invalid_argument);
}

TEST_CASE("uniform weights") {
  auto w = rqa::uniform_weights(4);
  CHECK(w.strategy == "uniform");
  CHECK(w.w == VectorXd::Constant(4, 0.25));
}

TEST_CASE("lp weights worked example") {
  auto w = rqa::lp_weights(vec({1.0, 2.0, 3.0}), 3.0);
  CHECK(w.strategy == "lp");
  CHECK(w.w(0) == doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(w.w(1) == doctest::Approx(2.0 / 6.0).epsilon(1e-15));
  CHECK(w.w(2) == doctest::Approx(3.0 / 6.0).epsilon(1e-15));
  CHECK(w.w.sum() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("lp weights: p = 2 is uniform, all-zero degenerates to uniform") {
  auto w2 = rqa::lp_weights(vec({0.5, 7.0, 0.01}), 2.0);
  CHECK(w2.w.isApprox(VectorXd::Constant(3, 1.0 / 3.0), 1e-15));
  auto wz = rqa::lp_weights(VectorXd::Zero(5), 3.0);
  CHECK(wz.w == VectorXd::Constant(5, 0.2));
}

TEST_CASE("lp weights are exactly invariant under power-of-two rescaling") {
  rqa::Rng rng(1);
  for (double p : {2.0, 3.0, 4.0, 7.5}) {
    VectorXd r =
        VectorXd::NullaryExpr(64, [&](Eigen::Index) { return rng.uniform01(); });
    auto base = rqa::lp_weights(r, p);
    for (double s : {0.25, 2.0, 1024.0, 0x1.0p-30}) {
      auto scaled = rqa::lp_weights((s * r).eval(), p);
      CHECK(scaled.w == base.w);
    }
  }
}

TEST_CASE("lp weights reject invalid input") {
  CHECK_THROWS_AS(rqa::lp_weights(vec({1.0, 2.0}), 1.5), std::invalid_argument);
  CHECK_THROWS_AS(rqa::lp_weights(vec({1.0, -2.0}), 3.0), std::invalid_argument);
  CHECK_THROWS_AS(
      rqa::lp_weights(vec({1.0, std::numeric_limits<double>::quiet_NaN()}), 3.0),
      std::invalid_argument);
}

TEST_CASE("rqa adjustment hand trace") {
  rqa::WeightVector in{vec({0.1, 0.2, 0.3, 0.4}), "lp"};
  rqa::RqaDetail detail;
  auto out = rqa::rqa_adjust(in, 0.75, 0.5, &detail);
  // threshold = 3rd order statistic = 0.3; replacement = 2nd = 0.2.
  CHECK(detail.threshold == 0.3);
  CHECK(detail.replacement == 0.2);
  // Only 0.4 is strictly above 0.3 -> [0.1, 0.2, 0.3, 0.2], renormalized.
  CHECK(out.w(0) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(out.w(1) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(out.w(2) == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(out.w(3) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(out.w.sum() == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("rqa leaves at-threshold entries alone and uses pre-adjustment quantiles") {
  // All entries equal: nothing is strictly above the quantile.
  rqa::WeightVector in{VectorXd::Constant(5, 0.2), "lp"};
  auto out = rqa::rqa_adjust(in, 0.9, 0.5);
  CHECK(out.w == in.w);
}

TEST_CASE("rqa adjustment caps the tail and never widens the spread") {
  rqa::Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    VectorXd r = VectorXd::NullaryExpr(
        40, [&](Eigen::Index) { return std::pow(rng.uniform01(), 3.0); });
    auto raw = rqa::lp_weights(r, 4.0);
    for (double qt : {0.5, 0.7}) {
      rqa::RqaDetail detail;
      auto adj = rqa::rqa_adjust(raw, 0.9, qt, &detail);
      // Before renormalization nothing exceeds the cut quantile.
      CHECK(detail.prenorm_max <= detail.threshold + 1e-15);
      CHECK(detail.replacement <= detail.threshold);
      // Renormalization rescales uniformly, so the max/min ratio shrinks.
      if (raw.w.minCoeff() > 0.0)
        CHECK(adj.w.maxCoeff() / adj.w.minCoeff() <=
              raw.w.maxCoeff() / raw.w.minCoeff() + 1e-9);
      CHECK(adj.w.minCoeff() >= 0.0);
      CHECK(adj.w.sum() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("rqa rejects q_target above q_cut") {
  rqa::WeightVector in{vec({0.5, 0.5}), "lp"};
  CHECK_THROWS_AS(rqa::rqa_adjust(in, 0.5, 0.9), std::invalid_argument);
}

TEST_CASE("binary multipliers solve the constraint system") {
  auto [wL, wS] = rqa::binary_multipliers(0.8, 4.0);
  CHECK(wS == doctest::Approx(5.0 / 17.0).epsilon(1e-15));
  CHECK(wL == doctest::Approx(20.0 / 17.0).epsilon(1e-15));
  CHECK(wL * 0.8 + wS * 0.2 == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("binary weights worked example") {
  // N = 5, eta = 0.8 -> ceil(4) largest get w_L. Residual order:
  // indices 1,2,3,4 are the top four.
  auto w = rqa::binary_weights(vec({0.1, 0.9, 0.5, 0.7, 0.3}), 0.8, 4.0);
  CHECK(w.strategy == "binary");
  for (int i : {1, 2, 3, 4})
    CHECK(w.w(i) == doctest::Approx(4.0 / 17.0).epsilon(1e-14));
  CHECK(w.w(0) == doctest::Approx(1.0 / 17.0).epsilon(1e-14));
  CHECK(w.w.sum() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("binary ties break by input index") {
  auto w = rqa::binary_weights(vec({1.0, 1.0, 1.0, 1.0}), 0.5, 4.0);
  // ceil(2) large slots go to the earliest indices among equal residuals.
  CHECK(w.w(0) == w.w(1));
  CHECK(w.w(0) > w.w(2));
  CHECK(w.w(2) == w.w(3));
}

TEST_CASE("strategy factory") {
  rqa::WeightParams params;
  params.p = 3.0;
  VectorXd r = vec({1.0, 2.0, 3.0});
  auto uni = rqa::make_strategy("uniform", params)->compute(r);
  CHECK(uni.adjusted.w == VectorXd::Constant(3, 1.0 / 3.0));
  auto lp = rqa::make_strategy("lp", params)->compute(r);
  CHECK(lp.adjusted.w == lp.raw.w);
  CHECK(lp.adjusted.w(2) == doctest::Approx(0.5).epsilon(1e-15));
  auto rqa_s = rqa::make_strategy("rqa", params);
  CHECK(rqa_s->name() == "rqa");
  auto res = rqa_s->compute(r);
  CHECK(res.adjusted.w.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_NOTHROW(rqa::make_strategy("binary", params));
  CHECK_THROWS_AS(rqa::make_strategy("quantum", params), std::invalid_argument);
}

TEST_CASE("rqa strategy raw vs adjusted on a heavy tail") {
  rqa::WeightParams params;
  params.p = 4.0;
  params.q_cut = 0.9;
  params.q_target = 0.5;
  VectorXd r = VectorXd::LinSpaced(100, 0.01, 1.0);
  r(99) = 50.0;  // dominant outlier
  auto res = rqa::make_strategy("rqa", params)->compute(r);
  CHECK(res.raw.w(99) > 0.9);
  CHECK(res.adjusted.w(99) < 0.01);
  CHECK(res.adjusted.w.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

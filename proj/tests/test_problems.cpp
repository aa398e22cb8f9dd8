#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <rqa/geometry.hpp>
#include <rqa/problems.hpp>
#include <rqa/rng.hpp>

using Eigen::VectorXd;

namespace {

// Central differences of the exact solution, for validating the jet-based
// derivative bundles that also feed the manufactured sources.
rqa::DerivativeBundle fd_bundle(const rqa::PdeProblem& prob, const VectorXd& x,
                                double t, double h) {
  rqa::DerivativeBundle b;
  b.value = prob.exact_at(x, t);
  b.spatial_gradient = VectorXd::Zero(x.size());
  for (int a = 0; a < x.size(); ++a) {
    VectorXd xp = x, xm = x;
    xp(a) += h;
    xm(a) -= h;
    b.spatial_gradient(a) = (prob.exact_at(xp, t) - prob.exact_at(xm, t)) / (2 * h);
    b.laplacian += (prob.exact_at(xp, t) - 2 * b.value + prob.exact_at(xm, t)) /
                   (h * h);
  }
  if (prob.time_dependent)
    b.time_derivative = (prob.exact_at(x, t + h) - prob.exact_at(x, t - h)) / (2 * h);
  return b;
}

rqa::PointBatch interior_batch(int n, int d, double T, std::uint64_t seed) {
  rqa::Rng rng(seed);
  return rqa::sample_interior(n, d, T, rng);
}

}  // namespace

TEST_CASE("exact solutions take their hand-computed values") {
  auto par = rqa::make_problem("parabolic", 3);
  VectorXd o = VectorXd::Zero(3);
  CHECK(par.exact_at(o, 0.3) == doctest::Approx(1.0).epsilon(1e-15));
  VectorXd x(3);
  x << 0.3, 0.0, 0.4;  // |x| = 0.5
  CHECK(par.exact_at(x, 0.0) == doctest::Approx(std::exp(0.5)).epsilon(1e-14));
  CHECK(par.exact_at(x, 0.75) == doctest::Approx(std::exp(0.25)).epsilon(1e-14));

  auto ac = rqa::make_problem("allen_cahn", 3);
  CHECK(ac.exact_at(o, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ac.exact_at(o, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(ac.exact_at(x, 0.5) ==
        doctest::Approx(std::exp(-0.5) *
                        std::sin(M_PI / 2 * std::pow(0.5, 2.5)))
            .epsilon(1e-13));

  auto ell = rqa::make_problem("elliptic", 3);
  CHECK(ell.exact_at(o, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ell.exact_at(x, 0.0) ==
        doctest::Approx(std::sin(M_PI / 2 * std::pow(0.5, 2.5))).epsilon(1e-13));
  CHECK_FALSE(ell.time_dependent);
  CHECK(par.time_dependent);
}

TEST_CASE("exact-solution derivative bundles match finite differences") {
  const double h = 1e-5;
  for (const char* name : {"parabolic", "allen_cahn", "elliptic"}) {
    for (int d : {2, 5}) {
      auto prob = rqa::make_problem(name, d);
      auto batch = interior_batch(50, d, prob.time_dependent ? 0.8 : 0.0, 7);
      for (Eigen::Index j = 0; j < batch.size(); ++j) {
        if (batch.xs.col(j).norm() > 0.9) continue;  // keep FD well-conditioned
        double t = prob.time_dependent ? batch.ts(j) : 0.0;
        auto exact = rqa::derivatives_at(prob.exact_solution(), batch.xs.col(j), t);
        auto fd = fd_bundle(prob, batch.xs.col(j), t, h);
        double scale = std::max(1.0, std::abs(exact.value));
        for (int a = 0; a < d; ++a)
          CHECK(exact.spatial_gradient(a) ==
                doctest::Approx(fd.spatial_gradient(a)).epsilon(1e-5).scale(scale));
        CHECK(exact.laplacian ==
              doctest::Approx(fd.laplacian).epsilon(1e-3).scale(10 * scale));
        if (prob.time_dependent)
          CHECK(exact.time_derivative ==
                doctest::Approx(fd.time_derivative).epsilon(1e-5).scale(scale));
      }
    }
  }
}

TEST_CASE("manufactured identity holds for the exact solution") {
  for (const char* name : {"parabolic", "allen_cahn", "elliptic"}) {
    for (int d : {2, 5}) {
      auto prob = rqa::make_problem(name, d);
      auto batch = interior_batch(100, d, prob.time_dependent ? 1.0 : 0.0, 13);
      VectorXd res = rqa::interior_residual(prob, prob.exact_solution(), batch);
      CHECK(res.maxCoeff() < 1e-6);
    }
  }
}

TEST_CASE("boundary and initial data agree with the exact solution") {
  rqa::Rng rng(5);
  for (const char* name : {"parabolic", "allen_cahn", "elliptic"}) {
    auto prob = rqa::make_problem(name, 4);
    auto bdry = rqa::sample_boundary(50, 4, prob.time_dependent ? 1.0 : 0.0, rng);
    for (Eigen::Index j = 0; j < bdry.size(); ++j) {
      double t = prob.time_dependent ? bdry.ts(j) : 0.0;
      CHECK(prob.boundary_value(bdry.xs.col(j), t) ==
            doctest::Approx(prob.exact_at(bdry.xs.col(j), t)).epsilon(1e-12));
    }
    if (prob.time_dependent) {
      auto init = rqa::sample_initial(50, 4, rng);
      for (Eigen::Index j = 0; j < init.size(); ++j)
        CHECK(prob.initial_value(init.xs.col(j)) ==
              doctest::Approx(prob.exact_at(init.xs.col(j), 0.0)).epsilon(1e-12));
    }
  }
}

TEST_CASE("initial data is meaningless for the stationary problem") {
  auto ell = rqa::make_problem("elliptic", 2);
  VectorXd x = VectorXd::Zero(2);
  CHECK_THROWS_AS(ell.initial_value(x), std::logic_error);
}

TEST_CASE("parabolic boundary residual of the constant-one field") {
  // g(x, 0) = e on the unit sphere, so a field pinned at 1 has residual e - 1.
  auto prob = rqa::make_problem("parabolic", 2);
  rqa::AnalyticField one(2, true, [](std::span<const rqa::Jet> xs, const rqa::Jet& t) {
    return rqa::Jet::constant(1.0, int(xs.size()) + 1, int(xs.size()));
  });
  rqa::PointBatch batch;
  batch.xs = Eigen::MatrixXd(2, 1);
  batch.xs << 1.0, 0.0;
  batch.ts = VectorXd::Zero(1);
  batch.role = rqa::Role::kBoundary;
  VectorXd res = rqa::boundary_residual(prob, one, batch);
  CHECK(res(0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
}

TEST_CASE("operator partials match finite differences of the operator") {
  const double h = 1e-6;
  rqa::Rng rng(9);
  for (const char* name : {"parabolic", "allen_cahn", "elliptic"}) {
    auto prob = rqa::make_problem(name, 3);
    auto batch = rqa::sample_interior(20, 3, prob.time_dependent ? 1.0 : 0.0, rng);
    for (Eigen::Index j = 0; j < batch.size(); ++j) {
      VectorXd x = batch.xs.col(j);
      double t = prob.time_dependent ? batch.ts(j) : 0.0;
      rqa::DerivativeBundle b;
      b.value = rng.normal();
      b.spatial_gradient = VectorXd::NullaryExpr(3, [&](Eigen::Index) {
        return rng.normal();
      });
      b.laplacian = rng.normal();
      b.time_derivative = rng.normal();
      auto pt = prob.operator_partials(b, x, t);

      auto with = [&](auto mutate) {
        rqa::DerivativeBundle c = b;
        mutate(c);
        return prob.operator_value(c, x, t);
      };
      double base_p = 0, base_m = 0;
      base_p = with([&](auto& c) { c.value += h; });
      base_m = with([&](auto& c) { c.value -= h; });
      CHECK(pt.d_value ==
            doctest::Approx((base_p - base_m) / (2 * h)).epsilon(1e-5).scale(1.0));
      base_p = with([&](auto& c) { c.laplacian += h; });
      base_m = with([&](auto& c) { c.laplacian -= h; });
      CHECK(pt.d_laplacian ==
            doctest::Approx((base_p - base_m) / (2 * h)).epsilon(1e-6).scale(1.0));
      for (int a = 0; a < 3; ++a) {
        base_p = with([&](auto& c) { c.spatial_gradient(a) += h; });
        base_m = with([&](auto& c) { c.spatial_gradient(a) -= h; });
        CHECK(pt.d_gradient(a) ==
              doctest::Approx((base_p - base_m) / (2 * h)).epsilon(1e-5).scale(1.0));
      }
      if (prob.time_dependent) {
        base_p = with([&](auto& c) { c.time_derivative += h; });
        base_m = with([&](auto& c) { c.time_derivative -= h; });
        CHECK(pt.d_time ==
              doctest::Approx((base_p - base_m) / (2 * h)).epsilon(1e-6).scale(1.0));
      }
    }
  }
}

TEST_CASE("transcribed closed-form sources: elliptic agrees, others deviate") {
  auto batch2 = interior_batch(50, 2, 0.0, 17);
  auto ell = rqa::make_problem("elliptic", 2);
  for (Eigen::Index j = 0; j < batch2.size(); ++j) {
    double f = ell.source_at(batch2.xs.col(j), 0.0);
    double printed = ell.printed_source_at(batch2.xs.col(j), 0.0);
    CHECK(printed == doctest::Approx(f).epsilon(1e-9).scale(1.0));
  }

  // The transcribed parabolic and Allen-Cahn forms carry known defects, so
  // they disagree with the operator applied to the exact solution. Guard
  // that the deviation stays (a silent "fix" upstream should be reviewed).
  for (const char* name : {"parabolic", "allen_cahn"}) {
    auto prob = rqa::make_problem(name, 2);
    auto batch = interior_batch(50, 2, 1.0, 19);
    double max_dev = 0.0;
    for (Eigen::Index j = 0; j < batch.size(); ++j) {
      double f = prob.source_at(batch.xs.col(j), batch.ts(j));
      double printed = prob.printed_source_at(batch.xs.col(j), batch.ts(j));
      CHECK(std::isfinite(printed));
      max_dev = std::max(max_dev, std::abs(printed - f));
    }
    CHECK(max_dev > 1e-3);
  }
}

TEST_CASE("residual helpers enforce batch roles") {
  auto prob = rqa::make_problem("elliptic", 2);
  rqa::Rng rng(23);
  auto bdry = rqa::sample_boundary(10, 2, 0.0, rng);
  CHECK_THROWS_AS(rqa::interior_residual(prob, prob.exact_solution(), bdry),
                  std::invalid_argument);
  auto interior = rqa::sample_interior(10, 2, 0.0, rng);
  CHECK_THROWS_AS(rqa::boundary_residual(prob, prob.exact_solution(), interior),
                  std::invalid_argument);
}

TEST_CASE("unknown problem names are rejected") {
  CHECK_THROWS_AS(rqa::make_problem("hyperbolic", 2), std::invalid_argument);
  CHECK_THROWS_AS(rqa::make_problem("elliptic", 0), std::invalid_argument);
}

#include <benchmark/benchmark.h>

#include "rqa/engine.hpp"
#include "rqa/geometry.hpp"
#include "rqa/problems.hpp"
#include "rqa/weighting.hpp"

namespace {

void BM_ForwardBundles(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int width = static_cast<int>(state.range(1));
  rqa::MlpParams params = rqa::init_mlp(1, d, false, width);
  rqa::Rng rng(7);
  rqa::PointBatch batch = rqa::sample_interior(200, d, 0.0, rng);
  for (auto _ : state) {
    auto bundles = rqa::forward_bundles(params, batch.xs, batch.ts);
    benchmark::DoNotOptimize(bundles);
  }
  state.SetItemsProcessed(state.iterations() * batch.size());
}
BENCHMARK(BM_ForwardBundles)->Args({2, 50})->Args({5, 100})->Args({20, 100});

void BM_ParameterGradient(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const int width = static_cast<int>(state.range(1));
  rqa::MlpParams params = rqa::init_mlp(1, d, false, width);
  rqa::Rng rng(7);
  rqa::PointBatch batch = rqa::sample_interior(200, d, 0.0, rng);
  rqa::EngineWorkspace ws;
  auto bundles = rqa::forward_bundles(params, batch.xs, batch.ts, &ws);
  std::vector<rqa::BundleAdjoint> seeds(bundles.size());
  for (std::size_t p = 0; p < seeds.size(); ++p) {
    seeds[p].value = 1.0;
    seeds[p].laplacian = 1.0;
    seeds[p].spatial_gradient = Eigen::VectorXd::Ones(d);
  }
  for (auto _ : state) {
    auto grad = rqa::parameter_gradient(params, ws, seeds);
    benchmark::DoNotOptimize(grad);
  }
}
BENCHMARK(BM_ParameterGradient)->Args({2, 50})->Args({5, 100});

void BM_RqaWeights(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  rqa::Rng rng(3);
  Eigen::VectorXd residuals(n);
  for (int i = 0; i < n; ++i) residuals(i) = rng.uniform(0.0, 1.0);
  for (auto _ : state) {
    auto w = rqa::rqa_adjust(rqa::lp_weights(residuals, 4.0), 0.9, 0.5);
    benchmark::DoNotOptimize(w);
  }
}
BENCHMARK(BM_RqaWeights)->Arg(1000)->Arg(10000);

void BM_InteriorResidualExact(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  rqa::PdeProblem problem = rqa::make_problem("elliptic", d);
  rqa::Rng rng(11);
  rqa::PointBatch batch = rqa::sample_interior(100, d, 0.0, rng);
  for (auto _ : state) {
    auto r = rqa::interior_residual(problem, problem.exact_solution(), batch);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_InteriorResidualExact)->Arg(2)->Arg(5);

}  // namespace

BENCHMARK_MAIN();

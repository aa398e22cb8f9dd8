#include "rqa/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <thread>

#include "rqa/csv.hpp"

namespace rqa {

std::string history_csv(const RunRecord& record) {
  std::ostringstream out;
  out << "iter,loss,l2_error,max_error,wall_ms\n";
  for (const EvalRow& row : record.rows) {
    out << row.iter << ',' << format_number(row.loss) << ','
        << format_number(row.l2_error) << ',' << format_number(row.max_error)
        << ',' << format_number(row.wall_ms) << '\n';
  }
  return out.str();
}

std::string weight_dump_csv(const WeightDump& dump) {
  const int d = static_cast<int>(dump.batch.xs.rows());
  std::ostringstream out;
  out << "index";
  for (int i = 0; i < d; ++i) out << ",x" << i;
  out << ",t,residual,weight_raw,weight_adjusted\n";
  for (Eigen::Index p = 0; p < dump.batch.size(); ++p) {
    out << p;
    for (int i = 0; i < d; ++i) out << ',' << format_number(dump.batch.xs(i, p));
    out << ',' << format_number(dump.batch.ts(p)) << ','
        << format_number(dump.residuals(p)) << ','
        << format_number(dump.raw(p)) << ','
        << format_number(dump.adjusted(p)) << '\n';
  }
  return out.str();
}

RunRecord run_single(const TrainConfig& config,
                     const std::filesystem::path& outdir,
                     std::span<const int> dump_iterations) {
  std::filesystem::create_directories(outdir);
  TrainHooks hooks;
  hooks.dump_iterations.assign(dump_iterations.begin(), dump_iterations.end());
  if (!hooks.dump_iterations.empty()) {
    hooks.on_dump = [&outdir](int iter, const WeightDump& dump) {
      write_file_atomic(outdir / ("weights_iter" + std::to_string(iter) + ".csv"),
                        weight_dump_csv(dump));
    };
  }
  TrainResult result = train(config, hooks);
  write_file_atomic(outdir / "history.csv", history_csv(result.record));
  return result.record;
}

int max_workers() {
  if (const char* env = std::getenv("RQA_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config,
                                std::span<const std::uint64_t> seeds,
                                const std::filesystem::path& outdir) {
  if (seeds.empty()) throw std::invalid_argument("sweep needs at least one seed");
  std::filesystem::create_directories(outdir);

  std::vector<SweepCell> cells;
  for (const auto& s : config.strategies)
    for (double p : config.ps)
      for (double qc : config.q_cuts)
        for (double qt : config.q_targets) cells.push_back({s, p, qc, qt});

  struct Job {
    std::size_t cell;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (std::size_t c = 0; c < cells.size(); ++c)
    for (std::uint64_t seed : seeds) jobs.push_back({c, seed});

  std::vector<SweepRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      try {
        const SweepCell& cell = cells[jobs[j].cell];
        TrainConfig cfg = config.base;
        cfg.strategy = cell.strategy;
        cfg.wparams.p = cell.p;
        cfg.wparams.q_cut = cell.q_cut;
        cfg.wparams.q_target = cell.q_target;
        cfg.seed = jobs[j].seed;
        TrainResult result = train(cfg);
        rows[j] = {cell, jobs[j].seed, result.record.final_l2,
                   result.record.final_max};
      } catch (...) {
        std::scoped_lock lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(jobs.size());
        return;
      }
    }
  };

  const int n_workers =
      std::min<int>(max_workers(), static_cast<int>(jobs.size()));
  std::vector<std::thread> pool;
  for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  std::ostringstream summary;
  summary << "strategy,p,q_cut,q_target,seed,final_l2,final_max\n";
  for (const SweepRow& row : rows) {
    summary << row.cell.strategy << ',' << format_number(row.cell.p) << ','
            << format_number(row.cell.q_cut) << ','
            << format_number(row.cell.q_target) << ',' << row.seed << ','
            << format_number(row.final_l2) << ','
            << format_number(row.final_max) << '\n';
  }
  write_file_atomic(outdir / "summary.csv", summary.str());

  // Sample statistics per cell (std with n-1; zero for a single seed).
  auto mean_std = [](const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double var = 0.0;
    if (v.size() > 1) {
      for (double x : v) var += (x - mean) * (x - mean);
      var /= static_cast<double>(v.size() - 1);
    }
    return std::pair<double, double>(mean, std::sqrt(var));
  };

  std::ostringstream agg;
  agg << "strategy,p,q_cut,q_target,n,mean_l2,std_l2,mean_max,std_max\n";
  for (std::size_t c = 0; c < cells.size(); ++c) {
    std::vector<double> l2s, maxs;
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      if (jobs[j].cell != c) continue;
      l2s.push_back(rows[j].final_l2);
      maxs.push_back(rows[j].final_max);
    }
    auto [ml2, sl2] = mean_std(l2s);
    auto [mmax, smax] = mean_std(maxs);
    agg << cells[c].strategy << ',' << format_number(cells[c].p) << ','
        << format_number(cells[c].q_cut) << ','
        << format_number(cells[c].q_target) << ',' << l2s.size() << ','
        << format_number(ml2) << ',' << format_number(sl2) << ','
        << format_number(mmax) << ',' << format_number(smax) << '\n';
  }
  write_file_atomic(outdir / "summary_agg.csv", agg.str());
  return rows;
}

}  // namespace rqa

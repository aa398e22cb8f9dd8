#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "rqa/config.hpp"
#include "rqa/trainer.hpp"

namespace rqa {

// history.csv content: header iter,loss,l2_error,max_error,wall_ms, one row
// per recorded evaluation.
std::string history_csv(const RunRecord& record);

// weights_iter<k>.csv content: index,x0..x{d-1},t,residual,weight_raw,
// weight_adjusted.
std::string weight_dump_csv(const WeightDump& dump);

// Executes the trainer and writes history.csv (plus weights_iter<k>.csv for
// each requested iteration) into outdir.
RunRecord run_single(const TrainConfig& config,
                     const std::filesystem::path& outdir,
                     std::span<const int> dump_iterations = {});

struct SweepCell {
  std::string strategy;
  double p = 0.0;
  double q_cut = 0.0;
  double q_target = 0.0;
};

struct SweepRow {
  SweepCell cell;
  std::uint64_t seed = 0;
  double final_l2 = 0.0;
  double final_max = 0.0;
};

// Cartesian grid of the experiment axes, every cell run for every seed.
// Training substreams are keyed by seed only, so all cells of a given seed
// see identical per-iteration batches. Writes summary.csv and
// summary_agg.csv (mean and sample std per cell) into outdir.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config,
                                std::span<const std::uint64_t> seeds,
                                const std::filesystem::path& outdir);

// Worker cap for sweep cells: RQA_THREADS when set, else the hardware
// concurrency.
int max_workers();

}  // namespace rqa

// Experiment runner for the adaptive PINN trainer.
//
// Subcommands:
//   solve --config <path> [--out <dir>] [--dump-weights <iters>]
//   sweep --config <path> --seeds <k1,k2,...> [--out <dir>]
//   check --config <path>
//
// Exit codes: 0 success, 2 config error, 3 training divergence.

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "rqa/config.hpp"
#include "rqa/csv.hpp"
#include "rqa/experiment.hpp"

namespace {

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> values;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(std::stoi(item));
  return values;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& csv) {
  std::vector<std::uint64_t> values;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(std::stoull(item));
  return values;
}

int cmd_solve(const std::string& config_path, const std::string& out_dir,
              const std::string& dump_iters) {
  rqa::TrainConfig cfg = rqa::parse_train_config(config_path);
  std::vector<int> dumps;
  if (!dump_iters.empty()) dumps = parse_int_list(dump_iters);
  rqa::RunRecord record = rqa::run_single(cfg, out_dir, dumps);
  std::cout << "final_l2=" << rqa::format_number(record.final_l2)
            << " final_max=" << rqa::format_number(record.final_max) << '\n';
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& seeds_csv,
              const std::string& out_dir) {
  rqa::ExperimentConfig cfg = rqa::parse_experiment_config(config_path);
  std::vector<std::uint64_t> seeds = parse_seed_list(seeds_csv);
  auto rows = rqa::run_sweep(cfg, seeds, out_dir);
  std::cout << rows.size() << " runs written to " << out_dir << '\n';
  return 0;
}

int cmd_check(const std::string& config_path) {
  rqa::TrainConfig cfg = rqa::parse_train_config(config_path);
  rqa::PdeProblem problem = rqa::make_problem(cfg.problem, cfg.dim);
  rqa::Rng rng = rqa::Rng::substream(cfg.seed, rqa::Stream::kInterior, 0);
  rqa::PointBatch batch = rqa::sample_interior(
      100, cfg.dim, problem.time_dependent ? problem.horizon : 0.0, rng);
  Eigen::VectorXd res =
      rqa::interior_residual(problem, problem.exact_solution(), batch);
  const double max_res = res.maxCoeff();
  std::cout << "config ok: problem=" << cfg.problem << " d=" << cfg.dim
            << " strategy=" << cfg.strategy << '\n';
  std::cout << "manufactured-residual self-test: max |N[u]-f| = "
            << rqa::format_number(max_res) << (max_res < 1e-6 ? " (ok)" : " (FAIL)")
            << '\n';
  return max_res < 1e-6 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive residual-weighted PINN solver"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", dump_iters, seeds_csv;

  CLI::App* solve = app.add_subcommand("solve", "run one training config");
  solve->add_option("--config", config_path)->required();
  solve->add_option("--out", out_dir);
  solve->add_option("--dump-weights", dump_iters,
                    "comma-separated iterations to dump interior weights at");

  CLI::App* sweep = app.add_subcommand("sweep", "run a strategy/parameter grid");
  sweep->add_option("--config", config_path)->required();
  sweep->add_option("--seeds", seeds_csv)->required();
  sweep->add_option("--out", out_dir);

  CLI::App* check = app.add_subcommand("check", "validate config and self-test");
  check->add_option("--config", config_path)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(config_path, out_dir, dump_iters);
    if (sweep->parsed()) return cmd_sweep(config_path, seeds_csv, out_dir);
    if (check->parsed()) return cmd_check(config_path);
  } catch (const rqa::ConfigError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const rqa::TrainingDivergence& e) {
    std::cerr << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

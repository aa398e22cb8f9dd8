#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "rqa/trainer.hpp"

namespace rqa {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, int line, const std::string& what)
      : std::runtime_error("config error at line " + std::to_string(line) +
                           ", key '" + key + "': " + what),
        key(std::move(key)),
        line(line) {}
  std::string key;
  int line;
};

// Grid of training configurations: the base config plus comma-separated
// lists for the sweep axes. Singleton lists everywhere mean a single cell.
struct ExperimentConfig {
  TrainConfig base;
  std::vector<std::string> strategies;
  std::vector<double> ps;
  std::vector<double> q_cuts;
  std::vector<double> q_targets;
};

// Flat key=value files, one per line, '#' comments. Grid keys (strategy, p,
// q_cut, q_target) accept comma-separated lists in experiment configs; a
// plain training config rejects lists.
TrainConfig parse_train_config(const std::filesystem::path& path);
ExperimentConfig parse_experiment_config(const std::filesystem::path& path);

}  // namespace rqa

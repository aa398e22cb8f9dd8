#include "rqa/config.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace rqa {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Entry {
  std::string value;
  int line;
};

std::map<std::string, Entry> read_entries(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("<file>", 0, "cannot open '" + path.string() + "'");
  std::map<std::string, Entry> entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(line, lineno, "expected key=value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(line, lineno, "empty key");
    if (entries.count(key))
      throw ConfigError(key, lineno, "duplicate key");
    entries[key] = {value, lineno};
  }
  return entries;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> parts;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(trim(item));
  if (parts.empty()) parts.push_back("");
  return parts;
}

double parse_double(const std::string& key, const Entry& e) {
  try {
    std::size_t used = 0;
    double v = std::stod(e.value, &used);
    if (used != e.value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key, e.line, "expected a number, got '" + e.value + "'");
  }
}

std::int64_t parse_int(const std::string& key, const Entry& e) {
  try {
    std::size_t used = 0;
    std::int64_t v = std::stoll(e.value, &used);
    if (used != e.value.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(key, e.line, "expected an integer, got '" + e.value + "'");
  }
}

const char* const kKnownKeys[] = {
    "problem",     "dimension",       "strategy",       "p",
    "q_cut",       "q_target",        "eta",            "ratio",
    "iterations",  "n_interior",      "n_boundary",     "n_initial",
    "lambda_boundary", "lambda_initial", "width",       "seed",
    "eval_every",  "n_test"};

// Applies scalar-valued keys (everything except the grid axes) to cfg.
// Returns the leftover grid-axis entries.
std::map<std::string, Entry> apply_scalars(
    const std::map<std::string, Entry>& entries, TrainConfig& cfg) {
  std::map<std::string, Entry> grid;
  for (const auto& [key, e] : entries) {
    bool known = false;
    for (const char* k : kKnownKeys) known |= (key == k);
    if (!known) throw ConfigError(key, e.line, "unknown key");

    if (key == "strategy" || key == "p" || key == "q_cut" || key == "q_target") {
      grid[key] = e;
      continue;
    }
    if (key == "problem") cfg.problem = e.value;
    else if (key == "dimension") cfg.dim = static_cast<int>(parse_int(key, e));
    else if (key == "eta") cfg.wparams.eta = parse_double(key, e);
    else if (key == "ratio") cfg.wparams.ratio = parse_double(key, e);
    else if (key == "iterations") cfg.iterations = static_cast<int>(parse_int(key, e));
    else if (key == "n_interior") cfg.n_interior = static_cast<int>(parse_int(key, e));
    else if (key == "n_boundary") cfg.n_boundary = static_cast<int>(parse_int(key, e));
    else if (key == "n_initial") cfg.n_initial = static_cast<int>(parse_int(key, e));
    else if (key == "lambda_boundary") cfg.lambda_boundary = parse_double(key, e);
    else if (key == "lambda_initial") cfg.lambda_initial = parse_double(key, e);
    else if (key == "width") cfg.width = static_cast<int>(parse_int(key, e));
    else if (key == "seed") cfg.seed = static_cast<std::uint64_t>(parse_int(key, e));
    else if (key == "eval_every") cfg.eval_every = static_cast<int>(parse_int(key, e));
    else if (key == "n_test") cfg.n_test = static_cast<int>(parse_int(key, e));
  }
  return grid;
}

void validate_wrapped(const TrainConfig& cfg, const std::filesystem::path& path) {
  try {
    cfg.validate();
  } catch (const std::invalid_argument& ex) {
    throw ConfigError("<validate>", 0,
                      std::string(ex.what()) + " in '" + path.string() + "'");
  }
}

}  // namespace

TrainConfig parse_train_config(const std::filesystem::path& path) {
  auto entries = read_entries(path);
  TrainConfig cfg;
  auto grid = apply_scalars(entries, cfg);
  for (const auto& [key, e] : grid) {
    if (e.value.find(',') != std::string::npos)
      throw ConfigError(key, e.line, "expects a single value, got a list");
    if (key == "strategy") {
      try {
        make_strategy(e.value, WeightParams{});
      } catch (const std::invalid_argument& ex) {
        throw ConfigError(key, e.line, ex.what());
      }
      cfg.strategy = e.value;
    } else if (key == "p") {
      cfg.wparams.p = parse_double(key, e);
    } else if (key == "q_cut") {
      cfg.wparams.q_cut = parse_double(key, e);
    } else if (key == "q_target") {
      cfg.wparams.q_target = parse_double(key, e);
    }
  }
  validate_wrapped(cfg, path);
  return cfg;
}

ExperimentConfig parse_experiment_config(const std::filesystem::path& path) {
  auto entries = read_entries(path);
  ExperimentConfig exp;
  auto grid = apply_scalars(entries, exp.base);

  exp.strategies = {exp.base.strategy};
  exp.ps = {exp.base.wparams.p};
  exp.q_cuts = {exp.base.wparams.q_cut};
  exp.q_targets = {exp.base.wparams.q_target};

  for (const auto& [key, e] : grid) {
    auto parts = split_list(e.value);
    if (key == "strategy") {
      exp.strategies.clear();
      for (const auto& s : parts) {
        try {
          make_strategy(s, WeightParams{});
        } catch (const std::invalid_argument& ex) {
          throw ConfigError(key, e.line, ex.what());
        }
        exp.strategies.push_back(s);
      }
    } else {
      std::vector<double> values;
      for (const auto& s : parts) values.push_back(parse_double(key, {s, e.line}));
      if (key == "p") exp.ps = values;
      else if (key == "q_cut") exp.q_cuts = values;
      else if (key == "q_target") exp.q_targets = values;
    }
  }

  // Validate one representative cell per axis value.
  for (const auto& s : exp.strategies)
    for (double p : exp.ps)
      for (double qc : exp.q_cuts)
        for (double qt : exp.q_targets) {
          TrainConfig cell = exp.base;
          cell.strategy = s;
          cell.wparams.p = p;
          cell.wparams.q_cut = qc;
          cell.wparams.q_target = qt;
          validate_wrapped(cell, path);
        }
  return exp;
}

}  // namespace rqa

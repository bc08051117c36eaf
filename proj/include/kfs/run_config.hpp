#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "kfs/baselines.hpp"
#include "kfs/criterion.hpp"
#include "kfs/dataset.hpp"
#include "kfs/memetic.hpp"

namespace kfs {

// Everything a CLI run needs. Built from flat dotted keys ("ma.np",
// "kernel.delta", ...) layered as defaults < config file < flags.
struct RunConfig {
  std::filesystem::path data;
  std::filesystem::path out = ".";
  double train_fraction = 0.66;
  std::uint64_t seed = 1;
  int workers = 1;

  KernelConfig kernel;
  MAConfig ma;
  BaselineConfig baseline;

  std::vector<OptimizerKind> compare_kinds = {
      OptimizerKind::kMA, OptimizerKind::kBDE, OptimizerKind::kGA,
      OptimizerKind::kBPSO};
  std::size_t compare_runs = 20;
  bool compare_oracle = true;         // certify against the oracle when small
  std::size_t compare_oracle_max_n = 12;

  std::size_t eval_k = 5;
  std::string mask;                   // evaluate: names or hex; ';' separates several
  std::size_t oracle_max_n = 20;
  SynthSpec synth;
  bool log_timing = false;            // add elapsed_ms to runlog.jsonl

  void validate() const;
};

using ConfigValues = std::map<std::string, nlohmann::json>;

// Every key RunConfig understands.
const std::vector<std::string>& known_config_keys();

// Nested objects become dotted keys: {"ma": {"np": 40}} -> "ma.np".
ConfigValues flatten_config(const nlohmann::json& doc);
ConfigValues load_config_file(const std::filesystem::path& path);

// Raw command-line text: JSON literals (numbers, booleans, arrays) are parsed
// as such, anything else is kept as a string.
nlohmann::json parse_override_value(const std::string& raw);

// Throws ConfigError on unknown keys or ill-typed values.
RunConfig build_run_config(const ConfigValues& values);

}  // namespace kfs

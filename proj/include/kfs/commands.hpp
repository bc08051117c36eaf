#pragma once

#include <ostream>
#include <utility>

#include "kfs/dataset.hpp"
#include "kfs/run_config.hpp"

namespace kfs {

// Standardized train/test pair: split with cfg.seed, z-score parameters fitted
// on the training part and applied to both.
std::pair<Dataset, Dataset> prepare_data(const RunConfig& cfg);

// Each command writes its artifacts under cfg.out (created if missing) and a
// short summary to `info`. Errors are thrown as kfs::Error.

// selection.json, runlog.jsonl, metrics.json
void cmd_select(const RunConfig& cfg, std::ostream& info);
// compare.csv
void cmd_compare(const RunConfig& cfg, std::ostream& info);
// oracle.json
void cmd_oracle(const RunConfig& cfg, std::ostream& info);
// synthetic.csv (ignores cfg.data)
void cmd_synth(const RunConfig& cfg, std::ostream& info);
// metrics.json for a single mask; evaluations.csv when cfg.mask lists several
// masks separated by ';'
void cmd_evaluate(const RunConfig& cfg, std::ostream& info);

}  // namespace kfs

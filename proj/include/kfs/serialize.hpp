#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "kfs/evaluation.hpp"
#include "kfs/feature_mask.hpp"
#include "kfs/memetic.hpp"
#include "kfs/oracle.hpp"

namespace kfs {

// Shortest text that round-trips to the same double.
std::string format_double(double v);

// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

// Feature names of the selected bits, in column order.
std::vector<std::string> selected_names(const FeatureMask& mask,
                                        const std::vector<std::string>& names);

// Accepts "0x"-prefixed hex, a comma-separated list of feature names (the
// "!inf" suffix of synthetic columns may be omitted), or bare hex digits.
FeatureMask parse_mask(std::string_view text,
                       const std::vector<std::string>& names);

// One runlog record. elapsed_ms is wall-clock and therefore only written when
// include_timing is set; without it the log is reproducible byte for byte.
nlohmann::json to_json(const GenerationRecord& rec, bool include_timing);
std::string runlog_jsonl(const RunLog& log, bool include_timing);

nlohmann::json to_json(const SelectionResult& result,
                       const std::vector<std::string>& names);
nlohmann::json to_json(const MetricsReport& report);
nlohmann::json to_json(const OracleResult& result,
                       const std::vector<std::string>& names);

// Batch evaluation rows: mask_hex,dimension,a,kappa,auc,eta
std::string metrics_csv_header();
std::string metrics_csv_row(const FeatureMask& mask, const MetricsReport& r);

}  // namespace kfs

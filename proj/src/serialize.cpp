#include "kfs/serialize.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "kfs/error.hpp"

namespace kfs {

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buf, ptr);
}

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw Error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot move '" + tmp.string() + "' to '" + path.string() +
                "': " + ec.message());
  }
}

std::vector<std::string> selected_names(const FeatureMask& mask,
                                        const std::vector<std::string>& names) {
  std::vector<std::string> out;
  for (std::size_t j : mask.selected()) out.push_back(names.at(j));
  return out;
}

namespace {

bool all_hex(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    const bool ok = (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') ||
                    (c >= 'A' && c <= 'F');
    if (!ok) return false;
  }
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

std::optional<std::size_t> find_name(std::string_view token,
                                     const std::vector<std::string>& names) {
  for (std::size_t j = 0; j < names.size(); ++j) {
    std::string_view n = names[j];
    if (n == token) return j;
    if (n.ends_with(kInformativeSuffix)) {
      n.remove_suffix(kInformativeSuffix.size());
      if (n == token) return j;
    }
  }
  return std::nullopt;
}

}  // namespace

FeatureMask parse_mask(std::string_view text,
                       const std::vector<std::string>& names) {
  text = trim(text);
  if (text.starts_with("0x") || text.starts_with("0X")) {
    return FeatureMask::from_hex(text, names.size());
  }
  FeatureMask by_name(names.size());
  bool names_ok = !text.empty();
  std::size_t start = 0;
  while (names_ok && start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string_view::npos) comma = text.size();
    const auto idx = find_name(trim(text.substr(start, comma - start)), names);
    if (idx) {
      by_name.set(*idx);
    } else {
      names_ok = false;
    }
    start = comma + 1;
  }
  if (names_ok) return by_name;
  if (all_hex(text)) return FeatureMask::from_hex(text, names.size());
  throw Error("mask '" + std::string(text) +
              "' is neither a list of feature names nor hex bits");
}

nlohmann::json to_json(const GenerationRecord& rec, bool include_timing) {
  nlohmann::json j;
  j["g"] = rec.g;
  j["best_fitness"] = rec.best_fitness;
  j["mean_fitness"] = rec.mean_fitness;
  j["sigma_sq"] = rec.sigma_sq;
  j["f_g"] = rec.f_g;
  j["cr_g"] = rec.cr_g;
  j["best_mask"] = rec.best_mask.to_hex();
  j["evaluations_so_far"] = rec.evaluations_so_far;
  if (include_timing) j["elapsed_ms"] = rec.elapsed_ms;
  return j;
}

std::string runlog_jsonl(const RunLog& log, bool include_timing) {
  std::string out;
  for (const auto& rec : log.generations) {
    out += to_json(rec, include_timing).dump();
    out += '\n';
  }
  return out;
}

nlohmann::json to_json(const SelectionResult& result,
                       const std::vector<std::string>& names) {
  nlohmann::json j;
  j["best_mask"] = {{"features", selected_names(result.best_mask, names)},
                    {"hex", result.best_mask.to_hex()}};
  j["best_fitness"] = result.best_fitness;
  j["terminated_by"] = to_string(result.terminated_by);
  j["generations"] = result.log.generations.size();
  j["total_evaluations"] = result.total_evaluations;
  return j;
}

nlohmann::json to_json(const MetricsReport& r) {
  nlohmann::json counts = nlohmann::json::array();
  const std::size_t n = r.confusion.n_classes();
  for (std::size_t a = 0; a < n; ++a) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t p = 0; p < n; ++p) row.push_back(r.confusion.at(a, p));
    counts.push_back(std::move(row));
  }
  nlohmann::json j;
  j["a"] = r.a;
  j["kappa"] = r.kappa;
  j["auc"] = r.auc;
  j["eta"] = r.eta;
  j["confusion"] = {{"class_ids", r.confusion.class_ids}, {"counts", counts}};
  j["dimension"] = r.dimension;
  if (r.auc_one_vs_rest) j["auc_one_vs_rest"] = true;
  return j;
}

nlohmann::json to_json(const OracleResult& result,
                       const std::vector<std::string>& names) {
  nlohmann::json j;
  j["best_mask"] = {{"features", selected_names(result.best_mask, names)},
                    {"hex", result.best_mask.to_hex()}};
  j["best_fitness"] = result.best_fitness;
  j["evaluated"] = result.evaluated;
  j["runner_up_fitness"] = result.runner_up_fitness
                               ? nlohmann::json(*result.runner_up_fitness)
                               : nlohmann::json(nullptr);
  return j;
}

std::string metrics_csv_header() { return "mask_hex,dimension,a,kappa,auc,eta\n"; }

std::string metrics_csv_row(const FeatureMask& mask, const MetricsReport& r) {
  return mask.to_hex() + "," + std::to_string(r.dimension) + "," +
         format_double(r.a) + "," + format_double(r.kappa) + "," +
         format_double(r.auc) + "," + format_double(r.eta) + "\n";
}

}  // namespace kfs

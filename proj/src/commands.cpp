#include "kfs/commands.hpp"

#include <filesystem>

#include "kfs/baselines.hpp"
#include "kfs/error.hpp"
#include "kfs/evaluation.hpp"
#include "kfs/memetic.hpp"
#include "kfs/oracle.hpp"
#include "kfs/serialize.hpp"

namespace kfs {

namespace {

std::filesystem::path out_dir(const RunConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.out, ec);
  if (ec) {
    throw Error("cannot create output directory '" + cfg.out.string() +
                "': " + ec.message());
  }
  return cfg.out;
}

Dataset load_data(const RunConfig& cfg) {
  if (cfg.data.empty()) throw ConfigError("no data file given (--data)");
  if (!std::filesystem::exists(cfg.data)) {
    throw DatasetError("data file '" + cfg.data.string() + "' does not exist");
  }
  return load_csv(cfg.data);
}

std::string pretty(const nlohmann::json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::pair<Dataset, Dataset> prepare_data(const RunConfig& cfg) {
  const Dataset full = load_data(cfg);
  auto [train, test] = split(full, cfg.train_fraction, cfg.seed);
  const auto params = zscore_fit(train);
  return {zscore_apply(train, params), zscore_apply(test, params)};
}

void cmd_select(const RunConfig& cfg, std::ostream& info) {
  const auto [train, test] = prepare_data(cfg);
  const auto dir = out_dir(cfg);
  const SelectionResult result = run_ma(train, cfg.kernel, cfg.ma, cfg.workers);
  const MetricsReport metrics =
      evaluate_subset(train, test, result.best_mask, cfg.eval_k);

  const auto& names = train.feature_names();
  write_file_atomic(dir / "selection.json", pretty(to_json(result, names)));
  write_file_atomic(dir / "runlog.jsonl",
                    runlog_jsonl(result.log, cfg.log_timing));
  write_file_atomic(dir / "metrics.json", pretty(to_json(metrics)));

  info << "selected " << result.best_mask.count() << "/" << names.size()
       << " features, gc=" << format_double(result.best_fitness) << " ("
       << to_string(result.terminated_by) << " after "
       << result.log.generations.size() << " generations), test eta="
       << format_double(metrics.eta) << "\n";
}

void cmd_compare(const RunConfig& cfg, std::ostream& info) {
  const auto [train, test] = prepare_data(cfg);
  const auto dir = out_dir(cfg);
  CompareOptions opts;
  opts.kinds = cfg.compare_kinds;
  opts.runs = cfg.compare_runs;
  opts.base_seed = cfg.seed;
  opts.ma = cfg.ma;
  opts.baseline = cfg.baseline;
  opts.workers = cfg.workers;
  if (cfg.compare_oracle && train.n_features() <= cfg.compare_oracle_max_n) {
    opts.reference_optimum =
        exhaustive_best(train, cfg.kernel, cfg.compare_oracle_max_n, cfg.workers)
            .best_fitness;
  }
  const ComparisonTable table = compare(train, cfg.kernel, opts);
  write_file_atomic(dir / "compare.csv", comparison_csv(table));
  info << "reference fitness " << format_double(table.reference_fitness)
       << (table.oracle_certified ? " (oracle)" : " (best observed)") << "\n";
  for (const auto& row : table.rows) {
    info << row.optimizer << ": mean " << format_double(row.mean_fitness)
         << ", success " << format_double(row.success_rate_pct) << "%\n";
  }
}

void cmd_oracle(const RunConfig& cfg, std::ostream& info) {
  const Dataset full = load_data(cfg);
  if (full.n_features() > cfg.oracle_max_n) {
    throw ConfigError("feature count " + std::to_string(full.n_features()) +
                      " exceeds max_n " + std::to_string(cfg.oracle_max_n));
  }
  const auto [train, test] = prepare_data(cfg);
  const auto dir = out_dir(cfg);
  const OracleResult result =
      exhaustive_best(train, cfg.kernel, cfg.oracle_max_n, cfg.workers);
  write_file_atomic(dir / "oracle.json",
                    pretty(to_json(result, train.feature_names())));
  info << "oracle optimum gc=" << format_double(result.best_fitness) << " over "
       << result.evaluated << " subsets, mask " << result.best_mask.to_hex()
       << "\n";
}

void cmd_synth(const RunConfig& cfg, std::ostream& info) {
  const auto dir = out_dir(cfg);
  const Dataset ds = synth_clusters(cfg.synth, cfg.seed);
  const auto path = dir / "synthetic.csv";
  write_csv(ds, path);
  info << "wrote " << ds.n_samples() << " samples x " << ds.n_features()
       << " features to " << path.string() << "\n";
}

void cmd_evaluate(const RunConfig& cfg, std::ostream& info) {
  if (cfg.mask.empty()) throw ConfigError("no mask given (--mask)");
  const auto [train, test] = prepare_data(cfg);
  const auto dir = out_dir(cfg);

  std::vector<std::string> specs;
  std::size_t start = 0;
  while (start <= cfg.mask.size()) {
    auto semi = cfg.mask.find(';', start);
    if (semi == std::string::npos) semi = cfg.mask.size();
    if (semi > start) specs.push_back(cfg.mask.substr(start, semi - start));
    start = semi + 1;
  }
  if (specs.empty()) throw ConfigError("no mask given (--mask)");

  std::string csv = metrics_csv_header();
  MetricsReport first;
  for (std::size_t s = 0; s < specs.size(); ++s) {
    const FeatureMask mask = parse_mask(specs[s], train.feature_names());
    if (mask.none()) throw ConfigError("mask '" + specs[s] + "' selects nothing");
    const MetricsReport r = evaluate_subset(train, test, mask, cfg.eval_k);
    if (s == 0) first = r;
    csv += metrics_csv_row(mask, r);
  }
  write_file_atomic(dir / "metrics.json", pretty(to_json(first)));
  if (specs.size() > 1) write_file_atomic(dir / "evaluations.csv", csv);
  info << pretty(to_json(first));
}

}  // namespace kfs

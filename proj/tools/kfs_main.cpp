// kfs: feature selection with the kernelized fuzzy-rough separability
// criterion and a BDE + tabu search memetic optimizer.
//
//   kfs select   --data train.csv --out run/ [--seed N] [--workers N] [--ma.np=40 ...]
//   kfs compare  --data train.csv --out run/ [--baseline.kinds=MA,BDE,GA,BPSO]
//   kfs oracle   --data small.csv --out run/
//   kfs synth    --out data/ [--synth.n_noise=7 ...]
//   kfs evaluate --data train.csv --mask Tz1,Tz4 --out run/

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "kfs/commands.hpp"
#include "kfs/error.hpp"
#include "kfs/run_config.hpp"

namespace {

struct CommonFlags {
  std::string data;
  std::string config;
  std::string out;
  std::string mask;
  std::optional<std::uint64_t> seed;
  std::optional<int> workers;
};

void add_common(CLI::App* sub, CommonFlags& f) {
  sub->add_option("--data", f.data, "CSV dataset with a 'label' column");
  sub->add_option("--config", f.config, "JSON config (flat dotted or nested keys)");
  sub->add_option("--out", f.out, "output directory");
  sub->add_option("--seed", f.seed, "seed for split, synthesis and optimizers");
  sub->add_option("--workers", f.workers, "max concurrent fitness evaluations");
  sub->allow_extras();
}

// Leftover "--key=value" / "--key value" arguments become dotted overrides.
kfs::ConfigValues parse_overrides(const std::vector<std::string>& extras) {
  kfs::ConfigValues out;
  for (std::size_t i = 0; i < extras.size(); ++i) {
    const std::string& arg = extras[i];
    if (!arg.starts_with("--")) {
      throw kfs::ConfigError("unexpected argument '" + arg + "'");
    }
    std::string key = arg.substr(2);
    std::string value;
    if (const auto eq = key.find('='); eq != std::string::npos) {
      value = key.substr(eq + 1);
      key.resize(eq);
    } else if (i + 1 < extras.size() && !extras[i + 1].starts_with("--")) {
      value = extras[++i];
    } else {
      value = "true";
    }
    out[key] = kfs::parse_override_value(value);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernelized fuzzy-rough feature selection"};
  app.require_subcommand(1);

  CommonFlags flags;
  auto* select = app.add_subcommand("select", "run the memetic selector");
  auto* compare = app.add_subcommand("compare", "compare MA against baselines");
  auto* oracle = app.add_subcommand("oracle", "exhaustive optimum for small N");
  auto* synth = app.add_subcommand("synth", "write a synthetic two-class dataset");
  auto* evaluate = app.add_subcommand("evaluate", "k-NN metrics for a given mask");
  for (auto* sub : {select, compare, oracle, synth, evaluate}) add_common(sub, flags);
  evaluate->add_option("--mask", flags.mask,
                       "feature names (comma-separated) or hex bits; ';' for several");

  CLI11_PARSE(app, argc, argv);

  try {
    CLI::App* chosen = app.get_subcommands().front();
    kfs::ConfigValues values;
    if (!flags.config.empty()) values = kfs::load_config_file(flags.config);
    for (auto& [k, v] : parse_overrides(chosen->remaining())) values[k] = v;
    if (!flags.data.empty()) values["data"] = flags.data;
    if (!flags.out.empty()) values["out"] = flags.out;
    if (!flags.mask.empty()) values["mask"] = flags.mask;
    if (flags.seed) values["seed"] = *flags.seed;
    if (flags.workers) values["workers"] = *flags.workers;

    const kfs::RunConfig cfg = kfs::build_run_config(values);
    if (chosen == select) {
      kfs::cmd_select(cfg, std::cout);
    } else if (chosen == compare) {
      kfs::cmd_compare(cfg, std::cout);
    } else if (chosen == oracle) {
      kfs::cmd_oracle(cfg, std::cout);
    } else if (chosen == synth) {
      kfs::cmd_synth(cfg, std::cout);
    } else {
      kfs::cmd_evaluate(cfg, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "kfs: error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

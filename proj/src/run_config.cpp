#include "kfs/run_config.hpp"

#include <algorithm>
#include <fstream>
#include <functional>

#include "kfs/error.hpp"

namespace kfs {

namespace {

using Setter = std::function<void(RunConfig&, const nlohmann::json&)>;

template <typename T>
T as(const nlohmann::json& v, const std::string& key) {
  try {
    if constexpr (std::is_same_v<T, bool>) {
      if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "true" || s == "1") return true;
        if (s == "false" || s == "0") return false;
        throw ConfigError(key + ": expected a boolean");
      }
      if (v.is_number_integer()) return v.get<int>() != 0;
      return v.get<bool>();
    } else if constexpr (std::is_integral_v<T>) {
      if (v.is_number_float()) {
        const double d = v.get<double>();
        if (d != static_cast<double>(static_cast<T>(d))) {
          throw ConfigError(key + ": expected an integer");
        }
        return static_cast<T>(d);
      }
      if constexpr (std::is_unsigned_v<T>) {
        if (v.is_number_integer() && v.get<long long>() < 0) {
          throw ConfigError(key + ": expected a non-negative integer");
        }
      }
      return v.get<T>();
    } else {
      return v.get<T>();
    }
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(key + ": unexpected value " + v.dump());
  }
}

std::vector<OptimizerKind> as_kinds(const nlohmann::json& v,
                                    const std::string& key) {
  std::vector<std::string> names;
  if (v.is_array()) {
    for (const auto& e : v) names.push_back(as<std::string>(e, key));
  } else {
    const auto s = as<std::string>(v, key);
    std::size_t start = 0;
    while (start <= s.size()) {
      auto comma = s.find(',', start);
      if (comma == std::string::npos) comma = s.size();
      if (comma > start) names.push_back(s.substr(start, comma - start));
      start = comma + 1;
    }
  }
  std::vector<OptimizerKind> kinds;
  for (const auto& n : names) kinds.push_back(parse_optimizer_kind(n));
  return kinds;
}

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> kSetters = [] {
    std::map<std::string, Setter> m;
#define KFS_KEY(name, expr) \
  m[name] = [](RunConfig& c, const nlohmann::json& v) { expr; }
    KFS_KEY("data", c.data = as<std::string>(v, "data"));
    KFS_KEY("out", c.out = as<std::string>(v, "out"));
    KFS_KEY("train_fraction", c.train_fraction = as<double>(v, "train_fraction"));
    KFS_KEY("seed", c.seed = as<std::uint64_t>(v, "seed"));
    KFS_KEY("workers", c.workers = as<int>(v, "workers"));

    KFS_KEY("kernel.delta", c.kernel.delta = as<double>(v, "kernel.delta"));
    KFS_KEY("kernel.per_feature_normalization",
            c.kernel.per_feature_normalization =
                as<bool>(v, "kernel.per_feature_normalization"));
    KFS_KEY("kernel.n_k", c.kernel.n_k = as<std::size_t>(v, "kernel.n_k"));

    KFS_KEY("ma.np", c.ma.np = as<std::size_t>(v, "ma.np"));
    KFS_KEY("ma.g_max", c.ma.g_max = as<std::size_t>(v, "ma.g_max"));
    KFS_KEY("ma.f_min", c.ma.f_min = as<double>(v, "ma.f_min"));
    KFS_KEY("ma.f_max", c.ma.f_max = as<double>(v, "ma.f_max"));
    KFS_KEY("ma.cr_min", c.ma.cr_min = as<double>(v, "ma.cr_min"));
    KFS_KEY("ma.cr_max", c.ma.cr_max = as<double>(v, "ma.cr_max"));
    KFS_KEY("ma.tl", c.ma.tl = as<std::size_t>(v, "ma.tl"));
    KFS_KEY("ma.ts_iters", c.ma.ts_iters = as<std::size_t>(v, "ma.ts_iters"));
    KFS_KEY("ma.ts_max_moves",
            c.ma.ts_max_moves = as<std::size_t>(v, "ma.ts_max_moves"));
    KFS_KEY("ma.fitness_stop", c.ma.fitness_stop = as<double>(v, "ma.fitness_stop"));
    KFS_KEY("ma.init_neighbors",
            c.ma.init_neighbors = as<std::size_t>(v, "ma.init_neighbors"));
    KFS_KEY("ma.elite_count",
            c.ma.elite_count = as<std::size_t>(v, "ma.elite_count"));

    KFS_KEY("baseline.kinds", c.compare_kinds = as_kinds(v, "baseline.kinds"));
    KFS_KEY("baseline.np", c.baseline.np = as<std::size_t>(v, "baseline.np"));
    KFS_KEY("baseline.g_max",
            c.baseline.g_max = as<std::size_t>(v, "baseline.g_max"));
    KFS_KEY("baseline.ga_crossover",
            c.baseline.ga_crossover = as<double>(v, "baseline.ga_crossover"));
    KFS_KEY("baseline.ga_mutation",
            c.baseline.ga_mutation = as<double>(v, "baseline.ga_mutation"));
    KFS_KEY("baseline.pso_c1", c.baseline.pso_c1 = as<double>(v, "baseline.pso_c1"));
    KFS_KEY("baseline.pso_c2", c.baseline.pso_c2 = as<double>(v, "baseline.pso_c2"));
    KFS_KEY("baseline.pso_inertia",
            c.baseline.pso_inertia = as<double>(v, "baseline.pso_inertia"));
    KFS_KEY("baseline.pso_vmax",
            c.baseline.pso_vmax = as<double>(v, "baseline.pso_vmax"));
    KFS_KEY("baseline.bde_f", c.baseline.bde_f = as<double>(v, "baseline.bde_f"));
    KFS_KEY("baseline.bde_cr", c.baseline.bde_cr = as<double>(v, "baseline.bde_cr"));
    KFS_KEY("baseline.fitness_stop",
            c.baseline.fitness_stop = as<double>(v, "baseline.fitness_stop"));

    KFS_KEY("compare.runs", c.compare_runs = as<std::size_t>(v, "compare.runs"));
    KFS_KEY("compare.oracle", c.compare_oracle = as<bool>(v, "compare.oracle"));
    KFS_KEY("compare.oracle_max_n",
            c.compare_oracle_max_n = as<std::size_t>(v, "compare.oracle_max_n"));

    KFS_KEY("eval.k", c.eval_k = as<std::size_t>(v, "eval.k"));
    KFS_KEY("mask", c.mask = as<std::string>(v, "mask"));
    KFS_KEY("oracle.max_n", c.oracle_max_n = as<std::size_t>(v, "oracle.max_n"));

    KFS_KEY("synth.n_informative",
            c.synth.n_informative = as<std::size_t>(v, "synth.n_informative"));
    KFS_KEY("synth.n_noise", c.synth.n_noise = as<std::size_t>(v, "synth.n_noise"));
    KFS_KEY("synth.samples_per_class",
            c.synth.samples_per_class =
                as<std::size_t>(v, "synth.samples_per_class"));
    KFS_KEY("synth.cluster_separation",
            c.synth.cluster_separation = as<double>(v, "synth.cluster_separation"));
    KFS_KEY("synth.noise_std", c.synth.noise_std = as<double>(v, "synth.noise_std"));

    KFS_KEY("log.timing", c.log_timing = as<bool>(v, "log.timing"));
#undef KFS_KEY
    return m;
  }();
  return kSetters;
}

void flatten_into(const nlohmann::json& node, const std::string& prefix,
                  ConfigValues& out) {
  if (node.is_object()) {
    for (const auto& [k, v] : node.items()) {
      flatten_into(v, prefix.empty() ? k : prefix + "." + k, out);
    }
  } else {
    out[prefix] = node;
  }
}

}  // namespace

void RunConfig::validate() const {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ConfigError("train_fraction must lie in (0, 1)");
  }
  if (workers < 1) throw ConfigError("workers must be >= 1");
  kernel.validate();
  ma.validate();
  BaselineConfig bc = baseline;
  for (auto kind : compare_kinds) {
    if (kind == OptimizerKind::kMA) continue;
    bc.kind = kind;
    bc.validate();
  }
  if (compare_runs < 1) throw ConfigError("compare.runs must be >= 1");
  if (eval_k < 1) throw ConfigError("eval.k must be >= 1");
}

const std::vector<std::string>& known_config_keys() {
  static const std::vector<std::string> kKeys = [] {
    std::vector<std::string> keys;
    for (const auto& [k, _] : setters()) keys.push_back(k);
    return keys;
  }();
  return kKeys;
}

ConfigValues flatten_config(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  ConfigValues out;
  flatten_into(doc, "", out);
  return out;
}

ConfigValues load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  try {
    return flatten_config(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + path.string() + "': " + e.what());
  }
}

nlohmann::json parse_override_value(const std::string& raw) {
  auto parsed = nlohmann::json::parse(raw, nullptr, /*allow_exceptions=*/false);
  if (parsed.is_discarded() || parsed.is_object()) return raw;
  return parsed;
}

RunConfig build_run_config(const ConfigValues& values) {
  RunConfig cfg;
  const auto& table = setters();
  for (const auto& [key, value] : values) {
    const auto it = table.find(key);
    if (it == table.end()) throw ConfigError("unknown config key '" + key + "'");
    it->second(cfg, value);
  }
  cfg.baseline.np = values.count("baseline.np") ? cfg.baseline.np : cfg.ma.np;
  cfg.baseline.g_max =
      values.count("baseline.g_max") ? cfg.baseline.g_max : cfg.ma.g_max;
  if (!values.count("baseline.fitness_stop")) {
    cfg.baseline.fitness_stop = cfg.ma.fitness_stop;
  }
  cfg.ma.seed = cfg.seed;
  cfg.baseline.seed = cfg.seed;
  cfg.validate();
  return cfg;
}

}  // namespace kfs

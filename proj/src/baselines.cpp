#include "kfs/baselines.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <numeric>

#include "kfs/error.hpp"
#include "kfs/serialize.hpp"
#include "random_util.hpp"

namespace kfs {

std::string to_string(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::kMA:
      return "MA";
    case OptimizerKind::kGA:
      return "GA";
    case OptimizerKind::kBPSO:
      return "BPSO";
    case OptimizerKind::kBDE:
      return "BDE";
  }
  return "?";
}

OptimizerKind parse_optimizer_kind(const std::string& name) {
  std::string up = name;
  std::transform(up.begin(), up.end(), up.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  if (up == "MA") return OptimizerKind::kMA;
  if (up == "GA") return OptimizerKind::kGA;
  if (up == "BPSO" || up == "DPSO") return OptimizerKind::kBPSO;
  if (up == "BDE") return OptimizerKind::kBDE;
  throw ConfigError("unknown optimizer '" + name + "'");
}

void BaselineConfig::validate() const {
  if (np < 2) throw ConfigError("baseline.np must be >= 2");
  if (kind == OptimizerKind::kBDE && np < 4) {
    throw ConfigError("baseline.np must be >= 4 for BDE");
  }
  auto prob = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw ConfigError(std::string(name) + " must lie in [0, 1]");
    }
  };
  prob(ga_crossover, "baseline.ga_crossover");
  prob(ga_mutation, "baseline.ga_mutation");
  prob(bde_cr, "baseline.bde_cr");
  if (!(bde_f > 0.0)) throw ConfigError("baseline.bde_f must be > 0");
  if (!(pso_vmax > 0.0)) throw ConfigError("baseline.pso_vmax must be > 0");
}

namespace {

using Clock = std::chrono::steady_clock;

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) /
         static_cast<double>(v.size());
}

std::size_t argmax(const std::vector<double>& v) {
  return static_cast<std::size_t>(
      std::distance(v.begin(), std::max_element(v.begin(), v.end())));
}

// Shared bookkeeping for the population loops: best-so-far tracking, the
// per-generation record and the stop test.
class RunTracker {
 public:
  RunTracker(FitnessFunction& fitness, double fitness_stop)
      : fitness_(fitness),
        stop_(fitness_stop),
        t0_(Clock::now()),
        evals0_(fitness.evaluations()) {}

  void offer(const FeatureMask& mask, double f) {
    if (f > result_.best_fitness || result_.best_mask.size() == 0) {
      result_.best_fitness = f;
      result_.best_mask = mask;
    }
  }

  // Returns true when the run should stop.
  bool close_generation(std::size_t g, const std::vector<double>& fit,
                        double rate_a, double rate_b) {
    GenerationRecord rec;
    rec.g = g;
    rec.best_fitness = result_.best_fitness;
    rec.mean_fitness = mean_of(fit);
    rec.sigma_sq = group_variance(fit);
    rec.f_g = rate_a;
    rec.cr_g = rate_b;
    rec.best_mask = result_.best_mask;
    rec.evaluations_so_far = fitness_.evaluations() - evals0_;
    rec.elapsed_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - t0_).count();
    result_.log.generations.push_back(std::move(rec));
    if (result_.best_fitness > stop_) {
      result_.terminated_by = Termination::kFitnessStop;
      return true;
    }
    return false;
  }

  SelectionResult finish() {
    result_.total_evaluations = fitness_.evaluations() - evals0_;
    return std::move(result_);
  }

 private:
  FitnessFunction& fitness_;
  double stop_;
  Clock::time_point t0_;
  std::size_t evals0_;
  SelectionResult result_;
};

Population random_population(std::size_t np, std::size_t n_features,
                             Rng& rng) {
  Population pop(np, FeatureMask(n_features));
  for (auto& m : pop) {
    for (std::size_t j = 0; j < n_features; ++j) m.set(j, coin(rng));
    repair_empty(m, rng);
  }
  return pop;
}

SelectionResult run_ga(FitnessFunction& fitness, const BaselineConfig& cfg) {
  const std::size_t n = fitness.n_features();
  Rng rng(cfg.seed);
  Population pop = random_population(cfg.np, n, rng);
  std::vector<double> fit = fitness.evaluate(pop);
  RunTracker tracker(fitness, cfg.fitness_stop);
  {
    const std::size_t b = argmax(fit);
    tracker.offer(pop[b], fit[b]);
  }

  auto tournament = [&]() {
    const std::size_t a = uniform_index(rng, cfg.np);
    const std::size_t b = uniform_index(rng, cfg.np);
    return fit[b] > fit[a] ? b : a;
  };

  for (std::size_t g = 1; g <= cfg.g_max; ++g) {
    Population next;
    next.reserve(cfg.np);
    next.push_back(pop[argmax(fit)]);
    while (next.size() < cfg.np) {
      FeatureMask c1 = pop[tournament()];
      FeatureMask c2 = pop[tournament()];
      if (uniform01(rng) < cfg.ga_crossover) {
        for (std::size_t j = 0; j < n; ++j) {
          if (coin(rng) && c1.test(j) != c2.test(j)) {
            c1.flip(j);
            c2.flip(j);
          }
        }
      }
      for (auto* c : {&c1, &c2}) {
        for (std::size_t j = 0; j < n; ++j) {
          if (uniform01(rng) < cfg.ga_mutation) c->flip(j);
        }
        repair_empty(*c, rng);
      }
      next.push_back(std::move(c1));
      if (next.size() < cfg.np) next.push_back(std::move(c2));
    }
    pop = std::move(next);
    fit = fitness.evaluate(pop);
    const std::size_t b = argmax(fit);
    tracker.offer(pop[b], fit[b]);
    if (tracker.close_generation(g, fit, cfg.ga_mutation, cfg.ga_crossover)) {
      break;
    }
  }
  return tracker.finish();
}

SelectionResult run_bpso(FitnessFunction& fitness, const BaselineConfig& cfg) {
  const std::size_t n = fitness.n_features();
  Rng rng(cfg.seed);
  Population x = random_population(cfg.np, n, rng);
  std::vector<double> v(cfg.np * n);
  for (double& vel : v) vel = (2.0 * uniform01(rng) - 1.0) * cfg.pso_vmax;

  std::vector<double> fit = fitness.evaluate(x);
  Population pbest = x;
  std::vector<double> pbest_fit = fit;
  std::size_t gbest = argmax(pbest_fit);
  RunTracker tracker(fitness, cfg.fitness_stop);
  tracker.offer(pbest[gbest], pbest_fit[gbest]);

  for (std::size_t g = 1; g <= cfg.g_max; ++g) {
    const FeatureMask leader = pbest[gbest];
    for (std::size_t i = 0; i < cfg.np; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double xj = x[i].test(j) ? 1.0 : 0.0;
        const double pj = pbest[i].test(j) ? 1.0 : 0.0;
        const double gj = leader.test(j) ? 1.0 : 0.0;
        const double r1 = uniform01(rng);
        const double r2 = uniform01(rng);
        double& vel = v[i * n + j];
        vel = cfg.pso_inertia * vel + cfg.pso_c1 * r1 * (pj - xj) +
              cfg.pso_c2 * r2 * (gj - xj);
        vel = std::clamp(vel, -cfg.pso_vmax, cfg.pso_vmax);
        const double s = 1.0 / (1.0 + std::exp(-vel));
        x[i].set(j, uniform01(rng) < s);
      }
      repair_empty(x[i], rng);
    }
    fit = fitness.evaluate(x);
    for (std::size_t i = 0; i < cfg.np; ++i) {
      if (fit[i] > pbest_fit[i]) {
        pbest_fit[i] = fit[i];
        pbest[i] = x[i];
      }
    }
    gbest = argmax(pbest_fit);
    tracker.offer(pbest[gbest], pbest_fit[gbest]);
    if (tracker.close_generation(g, fit, cfg.pso_inertia, 0.0)) break;
  }
  return tracker.finish();
}

SelectionResult run_plain_bde(FitnessFunction& fitness,
                              const BaselineConfig& cfg) {
  MAConfig ma;
  ma.np = cfg.np;
  ma.g_max = cfg.g_max;
  ma.f_min = ma.f_max = cfg.bde_f;
  ma.cr_min = ma.cr_max = cfg.bde_cr;
  ma.elite_count = 0;
  ma.init_neighbors = 0;
  ma.fitness_stop = cfg.fitness_stop;
  ma.seed = cfg.seed;
  return run_ma(fitness, ma);
}

}  // namespace

SelectionResult run_baseline(FitnessFunction& fitness,
                             const BaselineConfig& cfg) {
  cfg.validate();
  if (fitness.n_features() == 0) throw Error("dataset has no features");
  switch (cfg.kind) {
    case OptimizerKind::kGA:
      return run_ga(fitness, cfg);
    case OptimizerKind::kBPSO:
      return run_bpso(fitness, cfg);
    case OptimizerKind::kBDE:
      return run_plain_bde(fitness, cfg);
    case OptimizerKind::kMA:
      break;
  }
  throw ConfigError("MA is not a baseline; use run_ma");
}

SelectionResult run_baseline(const Dataset& ds, const KernelConfig& kcfg,
                             const BaselineConfig& cfg, int workers) {
  CriterionFitness fitness(ds, kcfg, workers);
  return run_baseline(fitness, cfg);
}

ComparisonTable compare(const Dataset& ds, const KernelConfig& kcfg,
                        const CompareOptions& options) {
  if (options.runs < 1) throw ConfigError("compare.runs must be >= 1");
  if (options.kinds.empty()) throw ConfigError("no optimizers to compare");

  ComparisonTable table;
  std::vector<double> total_time(options.kinds.size(), 0.0);
  for (std::size_t k = 0; k < options.kinds.size(); ++k) {
    ComparisonRow row;
    row.optimizer = to_string(options.kinds[k]);
    for (std::size_t r = 0; r < options.runs; ++r) {
      const std::uint64_t seed = options.base_seed + r;
      CriterionFitness fitness(ds, kcfg, options.workers);
      const auto t0 = Clock::now();
      SelectionResult res;
      if (options.kinds[k] == OptimizerKind::kMA) {
        MAConfig ma = options.ma;
        ma.seed = seed;
        res = run_ma(fitness, ma);
      } else {
        BaselineConfig bc = options.baseline;
        bc.kind = options.kinds[k];
        bc.seed = seed;
        res = run_baseline(fitness, bc);
      }
      total_time[k] += std::chrono::duration<double>(Clock::now() - t0).count();
      row.final_fitness.push_back(res.best_fitness);
    }
    row.mean_time_s = total_time[k] / static_cast<double>(options.runs);
    row.best_fitness =
        *std::max_element(row.final_fitness.begin(), row.final_fitness.end());
    row.mean_fitness = mean_of(row.final_fitness);
    table.rows.push_back(std::move(row));
  }

  if (options.reference_optimum) {
    table.reference_fitness = *options.reference_optimum;
    table.oracle_certified = true;
  } else {
    table.reference_fitness = table.rows.front().best_fitness;
    for (const auto& row : table.rows) {
      table.reference_fitness = std::max(table.reference_fitness, row.best_fitness);
    }
  }
  for (auto& row : table.rows) {
    std::size_t hits = 0;
    for (double f : row.final_fitness) {
      if (std::abs(f - table.reference_fitness) <= kSuccessTolerance) ++hits;
    }
    row.success_rate_pct =
        100.0 * static_cast<double>(hits) / static_cast<double>(options.runs);
  }
  return table;
}

std::string comparison_csv(const ComparisonTable& table) {
  std::string out =
      "optimizer,mean_time_s,best_fitness,mean_fitness,success_rate_pct\n";
  for (const auto& row : table.rows) {
    out += row.optimizer + "," + format_double(row.mean_time_s) + "," +
           format_double(row.best_fitness) + "," +
           format_double(row.mean_fitness) + "," +
           format_double(row.success_rate_pct) + "\n";
  }
  return out;
}

}  // namespace kfs

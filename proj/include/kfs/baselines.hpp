#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kfs/criterion.hpp"
#include "kfs/dataset.hpp"
#include "kfs/fitness.hpp"
#include "kfs/memetic.hpp"

namespace kfs {

enum class OptimizerKind { kMA, kGA, kBPSO, kBDE };

std::string to_string(OptimizerKind kind);
// Accepts "MA", "GA", "BPSO" (alias "DPSO"), "BDE", case-insensitive.
OptimizerKind parse_optimizer_kind(const std::string& name);

struct BaselineConfig {
  OptimizerKind kind = OptimizerKind::kGA;
  std::size_t np = 80;
  std::size_t g_max = 300;
  double ga_crossover = 0.85;
  double ga_mutation = 0.01;
  double pso_c1 = 2.0;
  double pso_c2 = 2.0;
  double pso_inertia = 1.0;
  double pso_vmax = 4.0;
  double bde_f = 0.65;   // midpoint of the adaptive F range
  double bde_cr = 0.55;  // midpoint of the adaptive CR range
  double fitness_stop = 0.9950;
  std::uint64_t seed = 1;

  void validate() const;
};

// GA: size-2 tournaments, uniform crossover, per-bit mutation, elitism 1.
// BPSO: sigmoid transfer with clamped velocities.
// BDE: the memetic BDE operators with fixed F and CR, no tabu search.
SelectionResult run_baseline(FitnessFunction& fitness, const BaselineConfig& cfg);
SelectionResult run_baseline(const Dataset& ds, const KernelConfig& kcfg,
                             const BaselineConfig& cfg, int workers = 1);

struct CompareOptions {
  std::vector<OptimizerKind> kinds;
  std::size_t runs = 1;
  std::uint64_t base_seed = 1;  // run r uses base_seed + r for every optimizer
  MAConfig ma;
  BaselineConfig baseline;      // kind and seed are overwritten per run
  // Certified optimum (e.g. from the exhaustive oracle). When absent, the
  // best final fitness seen by any optimizer is the reference.
  std::optional<double> reference_optimum;
  int workers = 1;
};

struct ComparisonRow {
  std::string optimizer;
  double mean_time_s = 0;
  double best_fitness = 0;
  double mean_fitness = 0;
  double success_rate_pct = 0;
  std::vector<double> final_fitness;  // one per run
};

struct ComparisonTable {
  std::vector<ComparisonRow> rows;
  double reference_fitness = 0;
  bool oracle_certified = false;
};

// Runs within this distance of the reference count as successes.
inline constexpr double kSuccessTolerance = 1e-9;

ComparisonTable compare(const Dataset& ds, const KernelConfig& kcfg,
                        const CompareOptions& options);

// Columns: optimizer,mean_time_s,best_fitness,mean_fitness,success_rate_pct
std::string comparison_csv(const ComparisonTable& table);

}  // namespace kfs

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "kfs/criterion.hpp"
#include "kfs/dataset.hpp"
#include "kfs/feature_mask.hpp"
#include "kfs/fitness.hpp"

namespace kfs {

using Rng = std::mt19937_64;
using Population = std::vector<FeatureMask>;

struct MAConfig {
  std::size_t np = 80;         // population size, >= 4
  std::size_t g_max = 300;     // generations; 0 returns the best initial individual
  double f_min = 0.4;
  double f_max = 0.9;
  double cr_min = 0.3;
  double cr_max = 0.8;
  std::size_t tl = 20;         // tabu tenure, in TS iterations
  std::size_t ts_iters = 200;  // TS iterations per invocation
  double fitness_stop = 0.9950;
  std::size_t init_neighbors = 5;
  std::size_t elite_count = 1;  // 0 gives plain adaptive BDE
  std::size_t ts_max_moves = 500;  // candidate-list size for large neighborhoods
  std::uint64_t seed = 1;

  void validate() const;
};

enum class Termination { kGenerationLimit, kFitnessStop };

std::string to_string(Termination t);

struct GenerationRecord {
  std::size_t g = 0;
  double best_fitness = 0;
  double mean_fitness = 0;
  double sigma_sq = 0;
  double f_g = 0;
  double cr_g = 0;
  FeatureMask best_mask;
  std::size_t evaluations_so_far = 0;
  double elapsed_ms = 0;
};

struct RunLog {
  std::vector<GenerationRecord> generations;
};

struct SelectionResult {
  FeatureMask best_mask;
  double best_fitness = kEmptyMaskFitness;
  RunLog log;
  Termination terminated_by = Termination::kGenerationLimit;
  std::size_t total_evaluations = 0;
};

// Group fitness variance: sum of ((f_i - mean) / f_best)^2 with the
// denominator guarded as max(|f_best|, 1e-12).
double group_variance(std::span<const double> fitnesses);

struct AdaptedParams {
  double f_g = 0;
  double cr_g = 0;
};

// Scale factor shrinks and crossover rate grows as the population contracts.
// Both outputs are clamped into their configured ranges.
AdaptedParams adapt_params(double sigma_sq, const MAConfig& cfg);

// Sets one uniformly chosen bit when the mask is empty.
void repair_empty(FeatureMask& mask, Rng& rng);

// mutant_j = r1_j XOR ((r2_j XOR r3_j) AND [u_j < f_g]), one u_j per bit.
FeatureMask bde_mutate(const FeatureMask& r1, const FeatureMask& r2,
                       const FeatureMask& r3, double f_g, Rng& rng);
// Draws distinct r1, r2, r3 != i from the population.
FeatureMask bde_mutate(const Population& pop, std::size_t i, double f_g,
                       Rng& rng);

// Binomial crossover: bit j_rand always comes from the mutant, every other bit
// with probability cr_g.
FeatureMask bde_crossover(const FeatureMask& target, const FeatureMask& mutant,
                          double cr_g, std::size_t j_rand, Rng& rng);
FeatureMask bde_crossover(const FeatureMask& target, const FeatureMask& mutant,
                          double cr_g, Rng& rng);

// Greedy selection; an equally fit trial replaces the target.
inline bool trial_survives(double target_fitness, double trial_fitness) {
  return trial_fitness >= target_fitness;
}
FeatureMask bde_select(const FeatureMask& target, const FeatureMask& trial,
                       FitnessFunction& fitness);

// --- Tabu search -----------------------------------------------------------

// A flip toggles position `a`; a swap exchanges selected `a` with unselected
// `b`.
struct Move {
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::size_t a = 0;
  std::size_t b = kNone;

  bool is_swap() const { return b != kNone; }
  FeatureMask apply(const FeatureMask& m) const;
};

// All single-bit flips that leave at least one bit set, followed by all
// (selected, unselected) swaps.
std::vector<Move> neighborhood(const FeatureMask& mask);

// Recency memory over feature positions: a position touched at iteration t
// stays tabu through iteration t + tenure.
class TabuList {
 public:
  TabuList(std::size_t n_positions, std::size_t tenure);

  bool is_tabu(const Move& move, std::size_t iteration) const;
  void record(const Move& move, std::size_t iteration);

 private:
  bool position_tabu(std::size_t p, std::size_t iteration) const {
    return released_at_[p] > iteration;
  }

  std::size_t tenure_;
  std::vector<std::size_t> released_at_;
};

// Index of the best admissible move (non-tabu, or tabu but strictly better
// than best_fitness). When every move is tabu and none aspirates, the best
// move overall is returned. Ties go to the earlier move. nullopt only for an
// empty move list.
std::optional<std::size_t> select_move(std::span<const Move> moves,
                                       std::span<const double> fitnesses,
                                       const TabuList& tabu,
                                       std::size_t iteration,
                                       double best_fitness);

struct TabuResult {
  FeatureMask best;
  double best_fitness = kEmptyMaskFitness;
  std::size_t iterations = 0;
};

TabuResult ts_local_search(const FeatureMask& start, const MAConfig& cfg,
                           FitnessFunction& fitness, Rng& rng);

// --- Driver ----------------------------------------------------------------

Population init_population(std::size_t n_features, const MAConfig& cfg,
                           FitnessFunction& fitness, Rng& rng);

SelectionResult run_ma(FitnessFunction& fitness, const MAConfig& cfg);
// Builds a memoized CriterionFitness for the run. `ds` must already be
// standardized.
SelectionResult run_ma(const Dataset& ds, const KernelConfig& kcfg,
                       const MAConfig& cfg, int workers = 1);

}  // namespace kfs

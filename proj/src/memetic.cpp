#include "kfs/memetic.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iterator>
#include <numeric>

#include "kfs/error.hpp"
#include "random_util.hpp"

namespace kfs {

void MAConfig::validate() const {
  if (np < 4) throw ConfigError("ma.np must be >= 4");
  if (!(f_min > 0.0 && f_min <= f_max)) {
    throw ConfigError("ma.f_min/f_max must satisfy 0 < f_min <= f_max");
  }
  if (!(cr_min > 0.0 && cr_min <= cr_max && cr_max <= 1.0)) {
    throw ConfigError("ma.cr_min/cr_max must satisfy 0 < cr_min <= cr_max <= 1");
  }
  if (tl < 1) throw ConfigError("ma.tl must be >= 1");
  if (ts_max_moves < 1) throw ConfigError("ma.ts_max_moves must be >= 1");
  if (elite_count > np) throw ConfigError("ma.elite_count must be <= ma.np");
}

std::string to_string(Termination t) {
  return t == Termination::kFitnessStop ? "fitness_stop" : "generation_limit";
}

double group_variance(std::span<const double> fitnesses) {
  if (fitnesses.empty()) throw Error("group_variance of an empty population");
  const double mean =
      std::accumulate(fitnesses.begin(), fitnesses.end(), 0.0) /
      static_cast<double>(fitnesses.size());
  const double best = *std::max_element(fitnesses.begin(), fitnesses.end());
  const double den = std::max(std::abs(best), 1e-12);
  double s = 0;
  for (double f : fitnesses) {
    const double z = (f - mean) / den;
    s += z * z;
  }
  return s;
}

AdaptedParams adapt_params(double sigma_sq, const MAConfig& cfg) {
  const double spread = 1.0 - sigma_sq / static_cast<double>(cfg.np);
  AdaptedParams p;
  p.f_g = std::clamp(cfg.f_max - (cfg.f_max - cfg.f_min) * spread, cfg.f_min,
                     cfg.f_max);
  p.cr_g = std::clamp(cfg.cr_min + (cfg.cr_max - cfg.cr_min) * spread,
                      cfg.cr_min, cfg.cr_max);
  return p;
}

void repair_empty(FeatureMask& mask, Rng& rng) {
  if (mask.size() == 0 || mask.any()) return;
  mask.set(uniform_index(rng, mask.size()));
}

FeatureMask bde_mutate(const FeatureMask& r1, const FeatureMask& r2,
                       const FeatureMask& r3, double f_g, Rng& rng) {
  const FeatureMask diff = r2 ^ r3;
  FeatureMask out = r1;
  for (std::size_t j = 0; j < out.size(); ++j) {
    const bool apply = uniform01(rng) < f_g;
    if (apply && diff.test(j)) out.flip(j);
  }
  return out;
}

FeatureMask bde_mutate(const Population& pop, std::size_t i, double f_g,
                       Rng& rng) {
  const std::size_t n = pop.size();
  if (n < 4) throw Error("BDE mutation needs a population of at least 4");
  std::size_t r[3];
  for (int k = 0; k < 3; ++k) {
    std::size_t c;
    do {
      c = uniform_index(rng, n);
    } while (c == i || std::find(r, r + k, c) != r + k);
    r[k] = c;
  }
  return bde_mutate(pop[r[0]], pop[r[1]], pop[r[2]], f_g, rng);
}

FeatureMask bde_crossover(const FeatureMask& target, const FeatureMask& mutant,
                          double cr_g, std::size_t j_rand, Rng& rng) {
  if (target.size() != mutant.size()) throw Error("mask length mismatch");
  FeatureMask trial = target;
  for (std::size_t j = 0; j < trial.size(); ++j) {
    const bool cross = uniform01(rng) < cr_g;
    if (j == j_rand || cross) trial.set(j, mutant.test(j));
  }
  return trial;
}

FeatureMask bde_crossover(const FeatureMask& target, const FeatureMask& mutant,
                          double cr_g, Rng& rng) {
  const std::size_t j_rand = uniform_index(rng, target.size());
  return bde_crossover(target, mutant, cr_g, j_rand, rng);
}

FeatureMask bde_select(const FeatureMask& target, const FeatureMask& trial,
                       FitnessFunction& fitness) {
  const FeatureMask pair[2] = {target, trial};
  const auto f = fitness.evaluate(pair);
  return trial_survives(f[0], f[1]) ? trial : target;
}

// ---------------------------------------------------------------------------
// Tabu search

FeatureMask Move::apply(const FeatureMask& m) const {
  FeatureMask out = m;
  out.flip(a);
  if (is_swap()) out.flip(b);
  return out;
}

std::vector<Move> neighborhood(const FeatureMask& mask) {
  std::vector<Move> moves;
  const std::size_t selected = mask.count();
  for (std::size_t j = 0; j < mask.size(); ++j) {
    if (mask.test(j) && selected == 1) continue;
    moves.push_back({j, Move::kNone});
  }
  for (std::size_t a = 0; a < mask.size(); ++a) {
    if (!mask.test(a)) continue;
    for (std::size_t b = 0; b < mask.size(); ++b) {
      if (!mask.test(b)) moves.push_back({a, b});
    }
  }
  return moves;
}

TabuList::TabuList(std::size_t n_positions, std::size_t tenure)
    : tenure_(tenure), released_at_(n_positions, 0) {}

bool TabuList::is_tabu(const Move& move, std::size_t iteration) const {
  return position_tabu(move.a, iteration) ||
         (move.is_swap() && position_tabu(move.b, iteration));
}

void TabuList::record(const Move& move, std::size_t iteration) {
  released_at_[move.a] = iteration + tenure_ + 1;
  if (move.is_swap()) released_at_[move.b] = iteration + tenure_ + 1;
}

std::optional<std::size_t> select_move(std::span<const Move> moves,
                                       std::span<const double> fitnesses,
                                       const TabuList& tabu,
                                       std::size_t iteration,
                                       double best_fitness) {
  std::optional<std::size_t> admissible;
  std::optional<std::size_t> any;
  for (std::size_t k = 0; k < moves.size(); ++k) {
    const double f = fitnesses[k];
    if (!any || f > fitnesses[*any]) any = k;
    const bool ok = !tabu.is_tabu(moves[k], iteration) || f > best_fitness;
    if (ok && (!admissible || f > fitnesses[*admissible])) admissible = k;
  }
  return admissible ? admissible : any;
}

TabuResult ts_local_search(const FeatureMask& start, const MAConfig& cfg,
                           FitnessFunction& fitness, Rng& rng) {
  if (start.none()) throw Error("tabu search needs a non-empty start mask");
  TabuResult result;
  FeatureMask current = start;
  result.best = start;
  result.best_fitness = fitness.evaluate_one(start);

  TabuList tabu(start.size(), cfg.tl);
  std::vector<FeatureMask> candidates;
  for (std::size_t it = 1; it <= cfg.ts_iters; ++it) {
    std::vector<Move> moves = neighborhood(current);
    if (moves.empty()) break;
    if (moves.size() > cfg.ts_max_moves) {
      std::vector<Move> sampled;
      sampled.reserve(cfg.ts_max_moves);
      std::sample(moves.begin(), moves.end(), std::back_inserter(sampled),
                  cfg.ts_max_moves, rng);
      moves = std::move(sampled);
    }
    candidates.clear();
    for (const auto& mv : moves) candidates.push_back(mv.apply(current));
    const auto f = fitness.evaluate(candidates);

    const auto chosen = select_move(moves, f, tabu, it, result.best_fitness);
    current = std::move(candidates[*chosen]);
    tabu.record(moves[*chosen], it);
    result.iterations = it;
    if (f[*chosen] > result.best_fitness) {
      result.best_fitness = f[*chosen];
      result.best = current;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Driver

Population init_population(std::size_t n_features, const MAConfig& cfg,
                           FitnessFunction& fitness, Rng& rng) {
  Population pop(cfg.np, FeatureMask(n_features));
  for (auto& m : pop) {
    for (std::size_t j = 0; j < n_features; ++j) m.set(j, coin(rng));
    repair_empty(m, rng);
  }
  if (cfg.init_neighbors == 0) return pop;

  // Draw every neighbor first so the RNG stream does not depend on how the
  // batch is evaluated.
  std::vector<FeatureMask> batch;
  batch.reserve(cfg.np * (cfg.init_neighbors + 1));
  for (const auto& m : pop) {
    batch.push_back(m);
    for (std::size_t k = 0; k < cfg.init_neighbors; ++k) {
      FeatureMask nb = m;
      nb.flip(uniform_index(rng, n_features));
      batch.push_back(std::move(nb));
    }
  }
  const auto f = fitness.evaluate(batch);
  const std::size_t stride = cfg.init_neighbors + 1;
  for (std::size_t i = 0; i < pop.size(); ++i) {
    std::size_t best = i * stride;
    for (std::size_t k = 1; k < stride; ++k) {
      if (f[i * stride + k] > f[best]) best = i * stride + k;
    }
    pop[i] = batch[best];
  }
  return pop;
}

namespace {

std::size_t argmax(std::span<const double> v) {
  return static_cast<std::size_t>(
      std::distance(v.begin(), std::max_element(v.begin(), v.end())));
}

double mean(std::span<const double> v) {
  return std::accumulate(v.begin(), v.end(), 0.0) /
         static_cast<double>(v.size());
}

}  // namespace

SelectionResult run_ma(FitnessFunction& fitness, const MAConfig& cfg) {
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t evals_at_start = fitness.evaluations();
  const std::size_t n_features = fitness.n_features();
  if (n_features == 0) throw Error("dataset has no features");
  Rng rng(cfg.seed);

  Population pop = init_population(n_features, cfg, fitness, rng);
  std::vector<double> fit = fitness.evaluate(pop);

  SelectionResult result;
  {
    const std::size_t b = argmax(fit);
    result.best_mask = pop[b];
    result.best_fitness = fit[b];
  }

  Population trials(cfg.np);
  std::vector<std::size_t> order(cfg.np);
  for (std::size_t g = 1; g <= cfg.g_max; ++g) {
    const double sigma_sq = group_variance(fit);
    const AdaptedParams params = adapt_params(sigma_sq, cfg);

    for (std::size_t i = 0; i < cfg.np; ++i) {
      const FeatureMask mutant = bde_mutate(pop, i, params.f_g, rng);
      trials[i] = bde_crossover(pop[i], mutant, params.cr_g, rng);
    }
    const auto trial_fit = fitness.evaluate(trials);
    for (std::size_t i = 0; i < cfg.np; ++i) {
      if (trial_survives(fit[i], trial_fit[i])) {
        pop[i] = trials[i];
        fit[i] = trial_fit[i];
      }
    }

    if (cfg.elite_count > 0) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return fit[a] > fit[b]; });
      for (std::size_t e = 0; e < cfg.elite_count; ++e) {
        const std::size_t i = order[e];
        TabuResult ts = ts_local_search(pop[i], cfg, fitness, rng);
        if (ts.best_fitness > fit[i]) {
          pop[i] = std::move(ts.best);
          fit[i] = ts.best_fitness;
        }
      }
    }

    const std::size_t b = argmax(fit);
    if (fit[b] > result.best_fitness) {
      result.best_fitness = fit[b];
      result.best_mask = pop[b];
    }

    GenerationRecord rec;
    rec.g = g;
    rec.best_fitness = result.best_fitness;
    rec.mean_fitness = mean(fit);
    rec.sigma_sq = sigma_sq;
    rec.f_g = params.f_g;
    rec.cr_g = params.cr_g;
    rec.best_mask = result.best_mask;
    rec.evaluations_so_far = fitness.evaluations() - evals_at_start;
    rec.elapsed_ms = std::chrono::duration<double, std::milli>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
    result.log.generations.push_back(std::move(rec));

    if (result.best_fitness > cfg.fitness_stop) {
      result.terminated_by = Termination::kFitnessStop;
      break;
    }
  }
  result.total_evaluations = fitness.evaluations() - evals_at_start;
  return result;
}

SelectionResult run_ma(const Dataset& ds, const KernelConfig& kcfg,
                       const MAConfig& cfg, int workers) {
  CriterionFitness fitness(ds, kcfg, workers);
  return run_ma(fitness, cfg);
}

}  // namespace kfs

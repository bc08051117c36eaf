#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

#include "kfs/criterion.hpp"
#include "kfs/dataset.hpp"
#include "kfs/feature_mask.hpp"

namespace kfs {

// Fitness of the empty mask; strictly below the gc lower bound of -0.5 so an
// empty subset is never preferred.
inline constexpr double kEmptyMaskFitness = -1.0;

// gc of the mask, or kEmptyMaskFitness when nothing is selected.
double fitness(const FeatureMask& mask, const Dataset& ds,
               const KernelConfig& cfg);

// Batch fitness oracle used by every optimizer. Implementations must be
// deterministic: the same masks always map to the same values, whatever the
// batch composition.
class FitnessFunction {
 public:
  virtual ~FitnessFunction() = default;

  virtual std::size_t n_features() const = 0;
  virtual std::vector<double> evaluate(std::span<const FeatureMask> masks) = 0;
  // Number of distinct non-empty masks actually computed so far.
  virtual std::size_t evaluations() const = 0;

  double evaluate_one(const FeatureMask& mask) {
    return evaluate(std::span<const FeatureMask>(&mask, 1)).front();
  }
};

// Memoized gc over one dataset. The cache belongs to the calling thread;
// misses within a batch are computed concurrently (up to `workers` OpenMP
// threads), then inserted in batch order, so cache contents and the
// evaluation counter do not depend on scheduling.
class CriterionFitness final : public FitnessFunction {
 public:
  CriterionFitness(const Dataset& ds, KernelConfig cfg, int workers = 1);

  std::size_t n_features() const override { return ds_.n_features(); }
  std::vector<double> evaluate(std::span<const FeatureMask> masks) override;
  std::size_t evaluations() const override { return evaluations_; }

  const Dataset& dataset() const { return ds_; }
  const KernelConfig& kernel() const { return cfg_; }
  std::size_t cache_size() const { return cache_.size(); }

 private:
  const Dataset& ds_;
  KernelConfig cfg_;
  int workers_;
  std::unordered_map<FeatureMask, double> cache_;
  std::size_t evaluations_ = 0;
};

// Memoized wrapper around an arbitrary mask -> value function. Used for
// synthetic landscapes in tests; empty masks still map to kEmptyMaskFitness.
class FunctionFitness final : public FitnessFunction {
 public:
  FunctionFitness(std::size_t n_features,
                  std::function<double(const FeatureMask&)> fn);

  std::size_t n_features() const override { return n_features_; }
  std::vector<double> evaluate(std::span<const FeatureMask> masks) override;
  std::size_t evaluations() const override { return evaluations_; }

 private:
  std::size_t n_features_;
  std::function<double(const FeatureMask&)> fn_;
  std::unordered_map<FeatureMask, double> cache_;
  std::size_t evaluations_ = 0;
};

}  // namespace kfs

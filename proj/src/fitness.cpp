#include "kfs/fitness.hpp"

#include <omp.h>

#include <utility>

namespace kfs {

double fitness(const FeatureMask& mask, const Dataset& ds,
               const KernelConfig& cfg) {
  if (mask.none()) return kEmptyMaskFitness;
  return gc(ds, mask, cfg, 1).gc;
}

CriterionFitness::CriterionFitness(const Dataset& ds, KernelConfig cfg,
                                   int workers)
    : ds_(ds), cfg_(cfg), workers_(workers < 1 ? 1 : workers) {
  cfg_.validate();
}

std::vector<double> CriterionFitness::evaluate(
    std::span<const FeatureMask> masks) {
  std::vector<double> out(masks.size(), kEmptyMaskFitness);
  // Distinct misses in first-seen order, and which output slots they feed.
  std::vector<const FeatureMask*> misses;
  std::unordered_map<FeatureMask, std::size_t> miss_slot;
  std::vector<std::ptrdiff_t> pending(masks.size(), -1);
  for (std::size_t k = 0; k < masks.size(); ++k) {
    const FeatureMask& m = masks[k];
    if (m.none()) continue;
    if (auto it = cache_.find(m); it != cache_.end()) {
      out[k] = it->second;
      continue;
    }
    auto [it, inserted] = miss_slot.try_emplace(m, misses.size());
    if (inserted) misses.push_back(&m);
    pending[k] = static_cast<std::ptrdiff_t>(it->second);
  }
  if (misses.empty()) return out;

  std::vector<double> computed(misses.size());
  if (misses.size() == 1 || workers_ == 1) {
    // Let the kernel use the team for the pairwise loop instead.
    for (std::size_t u = 0; u < misses.size(); ++u) {
      computed[u] = gc(ds_, *misses[u], cfg_, workers_).gc;
    }
  } else {
    const auto n_misses = static_cast<std::ptrdiff_t>(misses.size());
#pragma omp parallel for num_threads(workers_) schedule(dynamic, 1)
    for (std::ptrdiff_t u = 0; u < n_misses; ++u) {
      computed[static_cast<std::size_t>(u)] =
          gc(ds_, *misses[static_cast<std::size_t>(u)], cfg_, 1).gc;
    }
  }
  for (std::size_t u = 0; u < misses.size(); ++u) {
    cache_.emplace(*misses[u], computed[u]);
  }
  evaluations_ += misses.size();
  for (std::size_t k = 0; k < masks.size(); ++k) {
    if (pending[k] >= 0) out[k] = computed[static_cast<std::size_t>(pending[k])];
  }
  return out;
}

FunctionFitness::FunctionFitness(std::size_t n_features,
                                 std::function<double(const FeatureMask&)> fn)
    : n_features_(n_features), fn_(std::move(fn)) {}

std::vector<double> FunctionFitness::evaluate(
    std::span<const FeatureMask> masks) {
  std::vector<double> out;
  out.reserve(masks.size());
  for (const auto& m : masks) {
    if (m.none()) {
      out.push_back(kEmptyMaskFitness);
      continue;
    }
    auto it = cache_.find(m);
    if (it == cache_.end()) {
      it = cache_.emplace(m, fn_(m)).first;
      ++evaluations_;
    }
    out.push_back(it->second);
  }
  return out;
}

}  // namespace kfs

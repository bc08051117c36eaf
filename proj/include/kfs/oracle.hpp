#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "kfs/criterion.hpp"
#include "kfs/dataset.hpp"
#include "kfs/feature_mask.hpp"

namespace kfs {

inline constexpr std::size_t kDefaultOracleMaxFeatures = 20;

struct OracleResult {
  FeatureMask best_mask;
  double best_fitness = 0;
  std::uint64_t evaluated = 0;  // 2^N - 1
  // Second-best gc in the same ordering; absent when N == 1.
  std::optional<double> runner_up_fitness;
};

// Scores every non-empty mask. Ties on gc go to the smaller popcount, then to
// the smaller integer value of the mask (feature 0 = least significant bit).
// Throws ConfigError when N > max_n.
OracleResult exhaustive_best(const Dataset& ds, const KernelConfig& kcfg,
                             std::size_t max_n = kDefaultOracleMaxFeatures,
                             int threads = 0);

namespace reference {

// Single-threaded enumeration in ascending integer order.
OracleResult exhaustive_best(const Dataset& ds, const KernelConfig& kcfg,
                             std::size_t max_n = kDefaultOracleMaxFeatures);

}  // namespace reference

}  // namespace kfs

#pragma once

#include <cstddef>
#include <random>

namespace kfs {

inline double uniform01(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline bool coin(std::mt19937_64& rng) { return (rng() >> 63) != 0; }

}  // namespace kfs

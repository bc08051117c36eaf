#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "kfs/dataset.hpp"
#include "kfs/feature_mask.hpp"

namespace kfs {

struct KernelConfig {
  double delta = 1.0;                    // Gaussian width
  bool per_feature_normalization = true;  // width scaled by popcount(mask)
  std::size_t n_k = 3;                    // neighbors per other class

  void validate() const;
};

// The separability criterion for one (dataset, mask) pair.
// gc == (g_gamma + g_omega) / 2 exactly.
struct CriterionValue {
  double g_gamma = 0;  // [0, 1]
  double g_omega = 0;  // [-1, 1]
  double gc = 0;       // [-0.5, 1]
};

struct ClassNeighbors {
  std::size_t class_index = 0;       // position in Dataset::class_ids()
  std::vector<std::size_t> samples;  // nearest first, ties by index
};

// For each sample, its nearest min(n_k, |d|) samples from every class d
// other than its own, classes in ascending class_index order.
struct NeighborSets {
  std::vector<std::vector<ClassNeighbors>> per_sample;
};

struct ApproxMemberships {
  double lower_s = 0;      // inf over y outside d of 1 - k
  double lower_theta = 0;  // inf over y outside d of sqrt(1 - k^2)
  double upper_t = 0;      // sup over y in d of k
  double upper_sigma = 0;  // sup over y in d of 1 - sqrt(1 - k^2)
};

// Kernel width actually used for a mask: delta, times popcount(mask) when
// per-feature normalization is on. Throws CriterionError on an empty mask.
double effective_width(const FeatureMask& mask, const KernelConfig& cfg);

// Squared Euclidean distance over the selected features.
double masked_sq_distance(std::span<const double> x, std::span<const double> y,
                          std::span<const std::size_t> selected);

// exp(-d2 / width)
inline double similarity_from_sq_distance(double d2, double width);

double gaussian_kernel(std::span<const double> x, std::span<const double> y,
                       const FeatureMask& mask, const KernelConfig& cfg);

ApproxMemberships approx_memberships(std::size_t i, int class_id,
                                     const Dataset& ds, const FeatureMask& mask,
                                     const KernelConfig& cfg);

// threads == 0 uses the OpenMP default team size; 1 runs serially.
NeighborSets find_neighbors(const Dataset& ds, const FeatureMask& mask,
                            const KernelConfig& cfg, int threads = 0);

// OpenMP kernel. The result is bitwise identical for every thread count:
// per-sample terms are computed in parallel and reduced in sample order.
CriterionValue gc(const Dataset& ds, const FeatureMask& mask,
                  const KernelConfig& cfg, int threads = 0);
double g_gamma(const Dataset& ds, const FeatureMask& mask,
               const KernelConfig& cfg, int threads = 0);
double g_omega(const Dataset& ds, const FeatureMask& mask,
               const KernelConfig& cfg, int threads = 0);

// Straightforward single-threaded implementation kept as the comparison
// baseline for the OpenMP kernel (tests and bench/).
namespace reference {

NeighborSets find_neighbors(const Dataset& ds, const FeatureMask& mask,
                            const KernelConfig& cfg);
CriterionValue gc(const Dataset& ds, const FeatureMask& mask,
                  const KernelConfig& cfg);

}  // namespace reference

// ---------------------------------------------------------------------------

inline double similarity_from_sq_distance(double d2, double width) {
  return std::exp(-d2 / width);
}

namespace detail {

// Lower-approximation term sqrt(1 - k^2) for one neighbor.
inline double lower_theta_term(double k) { return std::sqrt(1.0 - k * k); }

// Adds one (sample, other class) block to the running per-sample sums.
// lower_terms holds sqrt(1 - k^2) for the block's neighbors, nearest first.
inline void accumulate_block(std::span<const double> lower_terms,
                             double& gamma_sum, double& omega_sum) {
  double certain = 0;
  double possible = 0;
  for (double t : lower_terms) {
    certain += t;
    possible += 1.0 - t;
  }
  const double count = static_cast<double>(lower_terms.size());
  gamma_sum += certain / count;
  omega_sum += (certain - possible) / count;
}

CriterionValue finish(std::span<const double> gamma_per_sample,
                      std::span<const double> omega_per_sample,
                      std::size_t n_classes);

}  // namespace detail

}  // namespace kfs

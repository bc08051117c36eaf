#include <algorithm>
#include <string>

#include "kfs/criterion.hpp"
#include "kfs/error.hpp"

namespace kfs::reference {

NeighborSets find_neighbors(const Dataset& ds, const FeatureMask& mask,
                            const KernelConfig& cfg) {
  cfg.validate();
  if (mask.size() != ds.n_features()) {
    throw CriterionError("mask length does not match feature count");
  }
  if (mask.none()) throw CriterionError("empty feature mask");
  const auto selected = mask.selected();
  const std::size_t n = ds.n_samples();

  NeighborSets out;
  out.per_sample.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < ds.n_classes(); ++c) {
      if (c == ds.class_index(i)) continue;
      std::vector<std::pair<double, std::size_t>> members;
      for (std::size_t j = 0; j < n; ++j) {
        if (ds.class_index(j) != c) continue;
        members.emplace_back(masked_sq_distance(ds.row(i), ds.row(j), selected),
                             j);
      }
      std::sort(members.begin(), members.end());
      const std::size_t keep = std::min(cfg.n_k, members.size());
      ClassNeighbors block;
      block.class_index = c;
      for (std::size_t m = 0; m < keep; ++m) {
        block.samples.push_back(members[m].second);
      }
      out.per_sample[i].push_back(std::move(block));
    }
  }
  return out;
}

CriterionValue gc(const Dataset& ds, const FeatureMask& mask,
                  const KernelConfig& cfg) {
  const NeighborSets neighbors = reference::find_neighbors(ds, mask, cfg);
  const double width = effective_width(mask, cfg);
  const auto selected = mask.selected();
  const std::size_t n = ds.n_samples();

  std::vector<double> gamma(n, 0.0);
  std::vector<double> omega(n, 0.0);
  std::vector<double> terms;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& block : neighbors.per_sample[i]) {
      terms.clear();
      for (std::size_t y : block.samples) {
        const double k = similarity_from_sq_distance(
            masked_sq_distance(ds.row(i), ds.row(y), selected), width);
        terms.push_back(detail::lower_theta_term(k));
      }
      detail::accumulate_block(terms, gamma[i], omega[i]);
    }
  }
  return detail::finish(gamma, omega, ds.n_classes());
}

}  // namespace kfs::reference

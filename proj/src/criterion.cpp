#include "kfs/criterion.hpp"

#include <omp.h>

#include <algorithm>
#include <limits>
#include <string>

#include "kfs/error.hpp"

namespace kfs {

void KernelConfig::validate() const {
  if (!(delta > 0.0)) throw ConfigError("kernel.delta must be > 0");
  if (n_k < 1) throw ConfigError("kernel.n_k must be >= 1");
}

double effective_width(const FeatureMask& mask, const KernelConfig& cfg) {
  const std::size_t p = mask.count();
  if (p == 0) throw CriterionError("empty feature mask");
  return cfg.per_feature_normalization ? cfg.delta * static_cast<double>(p)
                                       : cfg.delta;
}

double masked_sq_distance(std::span<const double> x, std::span<const double> y,
                          std::span<const std::size_t> selected) {
  double d2 = 0;
  for (std::size_t j : selected) {
    const double d = x[j] - y[j];
    d2 += d * d;
  }
  return d2;
}

double gaussian_kernel(std::span<const double> x, std::span<const double> y,
                       const FeatureMask& mask, const KernelConfig& cfg) {
  const double width = effective_width(mask, cfg);
  if (x.size() != mask.size() || y.size() != mask.size()) {
    throw CriterionError("row length does not match mask length");
  }
  const auto selected = mask.selected();
  return similarity_from_sq_distance(masked_sq_distance(x, y, selected), width);
}

ApproxMemberships approx_memberships(std::size_t i, int class_id,
                                     const Dataset& ds, const FeatureMask& mask,
                                     const KernelConfig& cfg) {
  if (mask.size() != ds.n_features()) {
    throw CriterionError("mask length does not match feature count");
  }
  const double width = effective_width(mask, cfg);
  if (i >= ds.n_samples()) throw CriterionError("sample index out of range");
  const auto& ids = ds.class_ids();
  if (!std::binary_search(ids.begin(), ids.end(), class_id)) {
    throw CriterionError("class " + std::to_string(class_id) + " is empty");
  }
  const auto selected = mask.selected();
  ApproxMemberships out;
  out.lower_s = std::numeric_limits<double>::infinity();
  out.lower_theta = std::numeric_limits<double>::infinity();
  bool any_outside = false;
  for (std::size_t y = 0; y < ds.n_samples(); ++y) {
    const double k = similarity_from_sq_distance(
        masked_sq_distance(ds.row(i), ds.row(y), selected), width);
    const double theta = detail::lower_theta_term(k);
    if (ds.label(y) == class_id) {
      out.upper_t = std::max(out.upper_t, k);
      out.upper_sigma = std::max(out.upper_sigma, 1.0 - theta);
    } else {
      any_outside = true;
      out.lower_s = std::min(out.lower_s, 1.0 - k);
      out.lower_theta = std::min(out.lower_theta, theta);
    }
  }
  if (!any_outside) throw CriterionError("no outside-class samples");
  return out;
}

namespace detail {

CriterionValue finish(std::span<const double> gamma_per_sample,
                      std::span<const double> omega_per_sample,
                      std::size_t n_classes) {
  double gamma = 0;
  double omega = 0;
  for (std::size_t i = 0; i < gamma_per_sample.size(); ++i) {
    gamma += gamma_per_sample[i];
    omega += omega_per_sample[i];
  }
  const double norm = static_cast<double>(n_classes - 1) *
                      static_cast<double>(gamma_per_sample.size());
  CriterionValue v;
  v.g_gamma = gamma / norm;
  v.g_omega = omega / norm;
  v.gc = (v.g_gamma + v.g_omega) / 2.0;
  return v;
}

}  // namespace detail

namespace {

struct Candidate {
  double d2;
  std::size_t index;
};

// Selected columns gathered into a dense row-major block so the inner loop
// streams contiguous memory.
class PackedRows {
 public:
  PackedRows(const Dataset& ds, const FeatureMask& mask)
      : n_(ds.n_samples()), selected_(mask.selected()) {
    p_ = selected_.size();
    data_.resize(n_ * p_);
    for (std::size_t i = 0; i < n_; ++i) {
      const auto r = ds.row(i);
      for (std::size_t c = 0; c < p_; ++c) data_[i * p_ + c] = r[selected_[c]];
    }
  }

  double sq_distance(std::size_t a, std::size_t b) const {
    const double* x = data_.data() + a * p_;
    const double* y = data_.data() + b * p_;
    double d2 = 0;
    for (std::size_t c = 0; c < p_; ++c) {
      const double d = x[c] - y[c];
      d2 += d * d;
    }
    return d2;
  }

 private:
  std::size_t n_;
  std::size_t p_;
  std::vector<std::size_t> selected_;
  std::vector<double> data_;
};

// Bounded per-class candidate lists for one query sample. Slots for class c
// live at [c * n_k, c * n_k + count[c]), kept sorted by (d2, index).
class NearestPerClass {
 public:
  NearestPerClass(std::size_t n_classes, std::size_t n_k)
      : n_k_(n_k), slots_(n_classes * n_k), count_(n_classes, 0) {}

  void reset() { std::fill(count_.begin(), count_.end(), 0); }

  // Candidates arrive in ascending index order, so a candidate equal in
  // distance to the current worst never displaces it.
  void offer(std::size_t c, double d2, std::size_t index) {
    Candidate* base = slots_.data() + c * n_k_;
    std::size_t& cnt = count_[c];
    if (cnt == n_k_ && !(d2 < base[cnt - 1].d2)) return;
    std::size_t pos = cnt == n_k_ ? n_k_ - 1 : cnt;
    while (pos > 0 && d2 < base[pos - 1].d2) {
      base[pos] = base[pos - 1];
      --pos;
    }
    base[pos] = {d2, index};
    if (cnt < n_k_) ++cnt;
  }

  std::span<const Candidate> of(std::size_t c) const {
    return {slots_.data() + c * n_k_, count_[c]};
  }

 private:
  std::size_t n_k_;
  std::vector<Candidate> slots_;
  std::vector<std::size_t> count_;
};

void scan_sample(const Dataset& ds, const PackedRows& rows, std::size_t i,
                 NearestPerClass& nearest) {
  nearest.reset();
  const std::size_t own = ds.class_index(i);
  for (std::size_t j = 0; j < ds.n_samples(); ++j) {
    const std::size_t c = ds.class_index(j);
    if (c == own) continue;
    nearest.offer(c, rows.sq_distance(i, j), j);
  }
}

int team_size(int threads) {
  return threads > 0 ? threads : omp_get_max_threads();
}

void check_inputs(const Dataset& ds, const FeatureMask& mask,
                  const KernelConfig& cfg) {
  cfg.validate();
  if (mask.size() != ds.n_features()) {
    throw CriterionError("mask has " + std::to_string(mask.size()) +
                         " bits, dataset has " +
                         std::to_string(ds.n_features()) + " features");
  }
  if (mask.none()) throw CriterionError("empty feature mask");
}

}  // namespace

NeighborSets find_neighbors(const Dataset& ds, const FeatureMask& mask,
                            const KernelConfig& cfg, int threads) {
  check_inputs(ds, mask, cfg);
  const PackedRows rows(ds, mask);
  const std::size_t n = ds.n_samples();
  const std::size_t n_classes = ds.n_classes();
  NeighborSets out;
  out.per_sample.resize(n);

#pragma omp parallel num_threads(team_size(threads))
  {
    NearestPerClass nearest(n_classes, cfg.n_k);
#pragma omp for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
      scan_sample(ds, rows, i, nearest);
      auto& blocks = out.per_sample[i];
      for (std::size_t c = 0; c < n_classes; ++c) {
        if (c == ds.class_index(i)) continue;
        ClassNeighbors block;
        block.class_index = c;
        for (const auto& cand : nearest.of(c)) block.samples.push_back(cand.index);
        blocks.push_back(std::move(block));
      }
    }
  }
  return out;
}

CriterionValue gc(const Dataset& ds, const FeatureMask& mask,
                  const KernelConfig& cfg, int threads) {
  check_inputs(ds, mask, cfg);
  const double width = effective_width(mask, cfg);
  const PackedRows rows(ds, mask);
  const std::size_t n = ds.n_samples();
  const std::size_t n_classes = ds.n_classes();
  std::vector<double> gamma(n, 0.0);
  std::vector<double> omega(n, 0.0);

#pragma omp parallel num_threads(team_size(threads))
  {
    NearestPerClass nearest(n_classes, cfg.n_k);
    std::vector<double> terms(cfg.n_k);
#pragma omp for schedule(static)
    for (std::size_t i = 0; i < n; ++i) {
      scan_sample(ds, rows, i, nearest);
      double g = 0;
      double w = 0;
      for (std::size_t c = 0; c < n_classes; ++c) {
        if (c == ds.class_index(i)) continue;
        const auto block = nearest.of(c);
        for (std::size_t m = 0; m < block.size(); ++m) {
          terms[m] = detail::lower_theta_term(
              similarity_from_sq_distance(block[m].d2, width));
        }
        detail::accumulate_block({terms.data(), block.size()}, g, w);
      }
      gamma[i] = g;
      omega[i] = w;
    }
  }
  return detail::finish(gamma, omega, n_classes);
}

double g_gamma(const Dataset& ds, const FeatureMask& mask,
               const KernelConfig& cfg, int threads) {
  return gc(ds, mask, cfg, threads).g_gamma;
}

double g_omega(const Dataset& ds, const FeatureMask& mask,
               const KernelConfig& cfg, int threads) {
  return gc(ds, mask, cfg, threads).g_omega;
}

}  // namespace kfs

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace kfs {

// Suffix marking ground-truth informative columns in synthetic datasets.
inline constexpr std::string_view kInformativeSuffix = "!inf";

// Immutable labelled sample matrix, stored row-major.
class Dataset {
 public:
  // Throws DatasetError unless: samples.size() == labels.size() * names.size(),
  // all values finite, >= 2 distinct labels, names unique.
  Dataset(std::vector<double> samples, std::vector<int> labels,
          std::vector<std::string> feature_names);

  std::size_t n_samples() const { return labels_.size(); }
  std::size_t n_features() const { return names_.size(); }
  std::size_t n_classes() const { return class_ids_.size(); }

  std::span<const double> row(std::size_t i) const {
    return {samples_.data() + i * n_features(), n_features()};
  }
  double at(std::size_t i, std::size_t j) const {
    return samples_[i * n_features() + j];
  }
  std::span<const double> values() const { return samples_; }

  const std::vector<int>& labels() const { return labels_; }
  int label(std::size_t i) const { return labels_[i]; }
  // Sorted distinct labels.
  const std::vector<int>& class_ids() const { return class_ids_; }
  // Position of sample i's label within class_ids().
  std::size_t class_index(std::size_t i) const { return class_index_[i]; }
  std::size_t class_size(std::size_t c) const { return class_sizes_[c]; }

  const std::vector<std::string>& feature_names() const { return names_; }

  // Rows in the given order. Throws if the subset loses a class (fewer than
  // two distinct labels left).
  Dataset subset(std::span<const std::size_t> rows) const;

 private:
  std::vector<double> samples_;
  std::vector<int> labels_;
  std::vector<std::string> names_;
  std::vector<int> class_ids_;
  std::vector<std::size_t> class_index_;
  std::vector<std::size_t> class_sizes_;
};

// CSV with a header row and a column named exactly "label".
Dataset load_csv(const std::filesystem::path& path);
Dataset parse_csv(std::string_view text, const std::string& source = "<memory>");
std::string to_csv(const Dataset& ds);
void write_csv(const Dataset& ds, const std::filesystem::path& path);

struct StandardizationParams {
  std::vector<double> means;
  std::vector<double> stds;  // population std (divisor n)
};

// Columns with std below this are mapped to all-zeros by zscore_apply.
inline constexpr double kZeroVarianceThreshold = 1e-12;

StandardizationParams zscore_fit(const Dataset& ds);
Dataset zscore_apply(const Dataset& ds, const StandardizationParams& params);

struct SplitIndices {
  std::vector<std::size_t> train;  // ascending
  std::vector<std::size_t> test;   // ascending
};

// Uniform random partition with |train| = round(train_fraction * |U|). Every
// class must appear on both sides; the permutation is redrawn up to 100 times
// before giving up with DatasetError.
SplitIndices split_indices(const Dataset& ds, double train_fraction,
                           std::uint64_t seed);
std::pair<Dataset, Dataset> split(const Dataset& ds, double train_fraction,
                                  std::uint64_t seed);

struct SynthSpec {
  std::size_t n_informative = 3;
  std::size_t n_noise = 7;
  std::size_t samples_per_class = 100;
  double cluster_separation = 6.0;
  double noise_std = 1.0;
};

// Two-class (-1/+1) Gaussian data. Informative columns have class means
// -separation/2 and +separation/2 with std noise_std; noise columns are N(0,1)
// regardless of class. Column order is shuffled by the seed and informative
// columns carry the kInformativeSuffix.
Dataset synth_clusters(const SynthSpec& spec, std::uint64_t seed);

// Indices of columns whose name ends with kInformativeSuffix.
std::vector<std::size_t> informative_features(const Dataset& ds);

struct CatalogEntry {
  std::string code;
  std::string description;
};

struct FeatureCatalog {
  std::vector<CatalogEntry> entries;
};

// The 33 system-level transient-stability features Tz1..Tz33.
const FeatureCatalog& catalog();

}  // namespace kfs

#include "kfs/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <unordered_set>

#include "kfs/error.hpp"
#include "kfs/serialize.hpp"

namespace kfs {

Dataset::Dataset(std::vector<double> samples, std::vector<int> labels,
                 std::vector<std::string> feature_names)
    : samples_(std::move(samples)),
      labels_(std::move(labels)),
      names_(std::move(feature_names)) {
  if (names_.empty()) throw DatasetError("dataset has no feature columns");
  if (samples_.size() != labels_.size() * names_.size()) {
    throw DatasetError("sample matrix has " + std::to_string(samples_.size()) +
                       " values, expected " +
                       std::to_string(labels_.size()) + " x " +
                       std::to_string(names_.size()));
  }
  for (std::size_t k = 0; k < samples_.size(); ++k) {
    if (!std::isfinite(samples_[k])) {
      throw DatasetError("non-finite value at row " +
                         std::to_string(k / names_.size()) + ", column " +
                         std::to_string(k % names_.size()));
    }
  }
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (!seen.insert(n).second) {
      throw DatasetError("duplicate feature name '" + n + "'");
    }
  }

  class_ids_ = labels_;
  std::sort(class_ids_.begin(), class_ids_.end());
  class_ids_.erase(std::unique(class_ids_.begin(), class_ids_.end()),
                   class_ids_.end());
  if (class_ids_.size() < 2) {
    throw DatasetError("fewer than 2 classes");
  }
  class_index_.resize(labels_.size());
  class_sizes_.assign(class_ids_.size(), 0);
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const auto it =
        std::lower_bound(class_ids_.begin(), class_ids_.end(), labels_[i]);
    class_index_[i] = static_cast<std::size_t>(it - class_ids_.begin());
    ++class_sizes_[class_index_[i]];
  }
}

Dataset Dataset::subset(std::span<const std::size_t> rows) const {
  std::vector<double> values;
  values.reserve(rows.size() * n_features());
  std::vector<int> labels;
  labels.reserve(rows.size());
  for (std::size_t r : rows) {
    if (r >= n_samples()) throw DatasetError("row index out of range");
    const auto src = row(r);
    values.insert(values.end(), src.begin(), src.end());
    labels.push_back(labels_[r]);
  }
  return Dataset(std::move(values), std::move(labels), names_);
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(trim(line.substr(start)));
      break;
    }
    out.push_back(trim(line.substr(start, comma - start)));
    start = comma + 1;
  }
  return out;
}

bool parse_double(std::string_view s, double& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

bool parse_int(std::string_view s, int& out) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (ec == std::errc() && ptr == s.data() + s.size()) return true;
  // Accept integral floats such as "1.0".
  double d = 0;
  if (parse_double(s, d) && d == std::floor(d) && std::abs(d) < 1e9) {
    out = static_cast<int>(d);
    return true;
  }
  return false;
}

}  // namespace

Dataset parse_csv(std::string_view text, const std::string& source) {
  std::vector<std::string_view> lines;
  {
    std::size_t start = 0;
    while (start <= text.size()) {
      std::size_t nl = text.find('\n', start);
      if (nl == std::string_view::npos) nl = text.size();
      lines.push_back(text.substr(start, nl - start));
      start = nl + 1;
    }
  }
  std::size_t line_no = 0;
  while (line_no < lines.size() && trim(lines[line_no]).empty()) ++line_no;
  if (line_no == lines.size()) throw DatasetError(source + ": empty file");

  std::string_view header_line = lines[line_no];
  if (header_line.starts_with("\xEF\xBB\xBF")) header_line.remove_prefix(3);
  const auto header = split_fields(header_line);
  std::size_t label_col = header.size();
  std::vector<std::string> names;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (header[c] == "label") {
      if (label_col != header.size()) {
        throw DatasetError(source + ": duplicate label column");
      }
      label_col = c;
    } else {
      names.emplace_back(header[c]);
    }
  }
  if (label_col == header.size()) {
    throw DatasetError(source + ": missing label column");
  }

  std::vector<double> values;
  std::vector<int> labels;
  for (std::size_t l = line_no + 1; l < lines.size(); ++l) {
    if (trim(lines[l]).empty()) continue;
    const auto fields = split_fields(lines[l]);
    const std::string where = source + ": line " + std::to_string(l + 1);
    if (fields.size() != header.size()) {
      throw DatasetError(where + ": ragged row (" +
                         std::to_string(fields.size()) + " fields, expected " +
                         std::to_string(header.size()) + ")");
    }
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (c == label_col) {
        int lab = 0;
        if (!parse_int(fields[c], lab)) {
          throw DatasetError(where + ", column " + std::to_string(c + 1) +
                             " (label): non-integer label '" +
                             std::string(fields[c]) + "'");
        }
        labels.push_back(lab);
      } else {
        double v = 0;
        if (!parse_double(fields[c], v)) {
          throw DatasetError(where + ", column " + std::to_string(c + 1) +
                             " (" + std::string(header[c]) +
                             "): non-numeric cell '" + std::string(fields[c]) +
                             "'");
        }
        values.push_back(v);
      }
    }
  }
  if (labels.empty()) throw DatasetError(source + ": no data rows");
  try {
    return Dataset(std::move(values), std::move(labels), std::move(names));
  } catch (const DatasetError& e) {
    throw DatasetError(source + ": " + e.what());
  }
}

Dataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError("cannot open data file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str(), path.string());
}

std::string to_csv(const Dataset& ds) {
  std::string out;
  for (const auto& n : ds.feature_names()) {
    out += n;
    out += ',';
  }
  out += "label\n";
  for (std::size_t i = 0; i < ds.n_samples(); ++i) {
    for (double v : ds.row(i)) {
      out += format_double(v);
      out += ',';
    }
    out += std::to_string(ds.label(i));
    out += '\n';
  }
  return out;
}

void write_csv(const Dataset& ds, const std::filesystem::path& path) {
  write_file_atomic(path, to_csv(ds));
}

// ---------------------------------------------------------------------------
// Standardization

StandardizationParams zscore_fit(const Dataset& ds) {
  const std::size_t n = ds.n_samples();
  const std::size_t p = ds.n_features();
  StandardizationParams params;
  params.means.assign(p, 0.0);
  params.stds.assign(p, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    double sum = 0;
    for (std::size_t i = 0; i < n; ++i) sum += ds.at(i, j);
    const double mean = sum / static_cast<double>(n);
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = ds.at(i, j) - mean;
      ss += d * d;
    }
    params.means[j] = mean;
    params.stds[j] = std::sqrt(ss / static_cast<double>(n));
  }
  return params;
}

Dataset zscore_apply(const Dataset& ds, const StandardizationParams& params) {
  const std::size_t p = ds.n_features();
  if (params.means.size() != p || params.stds.size() != p) {
    throw DatasetError("standardization parameters cover " +
                       std::to_string(params.means.size()) +
                       " features, dataset has " + std::to_string(p));
  }
  std::vector<double> out(ds.values().begin(), ds.values().end());
  for (std::size_t i = 0; i < ds.n_samples(); ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      double& v = out[i * p + j];
      v = params.stds[j] < kZeroVarianceThreshold
              ? 0.0
              : (v - params.means[j]) / params.stds[j];
    }
  }
  return Dataset(std::move(out), ds.labels(), ds.feature_names());
}

// ---------------------------------------------------------------------------
// Split

SplitIndices split_indices(const Dataset& ds, double train_fraction,
                           std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw DatasetError("train_fraction must lie in (0, 1)");
  }
  const std::size_t n = ds.n_samples();
  const auto n_train =
      static_cast<std::size_t>(std::llround(train_fraction * static_cast<double>(n)));
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> perm(n);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::size_t> train(perm.begin(), perm.begin() + n_train);
    std::vector<std::size_t> test(perm.begin() + n_train, perm.end());
    std::vector<bool> in_train(ds.n_classes(), false);
    std::vector<bool> in_test(ds.n_classes(), false);
    for (auto i : train) in_train[ds.class_index(i)] = true;
    for (auto i : test) in_test[ds.class_index(i)] = true;
    const bool ok =
        std::all_of(in_train.begin(), in_train.end(), [](bool b) { return b; }) &&
        std::all_of(in_test.begin(), in_test.end(), [](bool b) { return b; });
    if (ok) {
      std::sort(train.begin(), train.end());
      std::sort(test.begin(), test.end());
      return {std::move(train), std::move(test)};
    }
  }
  throw DatasetError(
      "cannot split with every class present in both train and test");
}

std::pair<Dataset, Dataset> split(const Dataset& ds, double train_fraction,
                                  std::uint64_t seed) {
  const auto idx = split_indices(ds, train_fraction, seed);
  return {ds.subset(idx.train), ds.subset(idx.test)};
}

// ---------------------------------------------------------------------------
// Synthetic data

Dataset synth_clusters(const SynthSpec& spec, std::uint64_t seed) {
  if (spec.n_informative < 1) throw DatasetError("n_informative must be >= 1");
  if (spec.samples_per_class < 1) {
    throw DatasetError("samples_per_class must be >= 1");
  }
  if (!(spec.cluster_separation >= 0.0)) {
    throw DatasetError("cluster_separation must be >= 0");
  }
  if (!(spec.noise_std >= 0.0)) throw DatasetError("noise_std must be >= 0");

  const std::size_t p = spec.n_informative + spec.n_noise;
  const std::size_t n = 2 * spec.samples_per_class;
  std::mt19937_64 rng(seed);

  // column_of[k] is the output column of generator column k; generator
  // columns [0, n_informative) are informative.
  std::vector<std::size_t> column_of(p);
  std::iota(column_of.begin(), column_of.end(), std::size_t{0});
  std::shuffle(column_of.begin(), column_of.end(), rng);

  std::normal_distribution<double> unit(0.0, 1.0);
  std::vector<double> values(n * p);
  std::vector<int> labels(n);
  const double half = spec.cluster_separation / 2.0;
  for (std::size_t i = 0; i < n; ++i) {
    const bool positive = i >= spec.samples_per_class;
    labels[i] = positive ? 1 : -1;
    for (std::size_t k = 0; k < p; ++k) {
      const double z = unit(rng);
      double v;
      if (k < spec.n_informative) {
        v = (positive ? half : -half) + spec.noise_std * z;
      } else {
        v = z;
      }
      values[i * p + column_of[k]] = v;
    }
  }

  std::vector<std::string> names(p);
  for (std::size_t k = 0; k < p; ++k) {
    std::string name = "f" + std::to_string(column_of[k]);
    if (k < spec.n_informative) name += kInformativeSuffix;
    names[column_of[k]] = std::move(name);
  }
  return Dataset(std::move(values), std::move(labels), std::move(names));
}

std::vector<std::size_t> informative_features(const Dataset& ds) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < ds.n_features(); ++j) {
    if (ds.feature_names()[j].ends_with(kInformativeSuffix)) out.push_back(j);
  }
  return out;
}

}  // namespace kfs

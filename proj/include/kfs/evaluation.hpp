#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "kfs/dataset.hpp"
#include "kfs/feature_mask.hpp"

namespace kfs {

// Rows are actual classes, columns predicted classes, both in class_ids order.
struct ConfusionMatrix {
  std::vector<int> class_ids;
  std::vector<std::size_t> counts;  // row-major, class_ids.size()^2

  std::size_t n_classes() const { return class_ids.size(); }
  std::size_t at(std::size_t actual, std::size_t predicted) const {
    return counts[actual * n_classes() + predicted];
  }
  std::size_t total() const;
};

ConfusionMatrix confusion_matrix(std::span<const int> actual,
                                 std::span<const int> predicted,
                                 std::vector<int> class_ids);

struct KnnPrediction {
  std::vector<int> class_ids;       // train and test labels, sorted
  std::vector<int> labels;          // predicted label per test sample
  std::vector<double> class_scores; // vote fraction, n_test x class_ids.size()
  std::vector<double> positive_scores;  // vote fraction of the largest class id
};

// Majority vote of the k nearest training samples under the selected-feature
// Euclidean distance. Neighbor ties go to the lower training index, vote ties
// to the larger class id. k larger than the training set is capped.
KnnPrediction knn_predict(const Dataset& train, const Dataset& test,
                          const FeatureMask& mask, std::size_t k,
                          int threads = 0);

double accuracy(const ConfusionMatrix& c);

// Cohen's kappa; 0 when chance agreement is 1.
double kappa(const ConfusionMatrix& c);

// Mann-Whitney estimate of the ROC area: the fraction of (positive, negative)
// pairs ranked correctly, counting ties as half.
double auc(std::span<const double> scores, std::span<const int> labels,
           int positive_label);

double eta(double a, double kappa, double auc);

struct MetricsReport {
  double a = 0;
  double kappa = 0;
  double auc = 0;
  double eta = 0;
  ConfusionMatrix confusion;
  std::size_t dimension = 0;
  // Set for more than two classes, where auc is the unweighted mean of the
  // one-vs-rest areas.
  bool auc_one_vs_rest = false;
};

inline constexpr std::size_t kDefaultKnnK = 5;

MetricsReport evaluate_subset(const Dataset& train, const Dataset& test,
                              const FeatureMask& mask,
                              std::size_t k = kDefaultKnnK);

}  // namespace kfs

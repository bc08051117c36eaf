#include "kfs/evaluation.hpp"

#include <omp.h>

#include <algorithm>
#include <string>

#include "kfs/criterion.hpp"
#include "kfs/error.hpp"

namespace kfs {

std::size_t ConfusionMatrix::total() const {
  std::size_t t = 0;
  for (auto c : counts) t += c;
  return t;
}

namespace {

std::size_t index_of(const std::vector<int>& ids, int label) {
  const auto it = std::lower_bound(ids.begin(), ids.end(), label);
  if (it == ids.end() || *it != label) {
    throw Error("label " + std::to_string(label) + " not among class ids");
  }
  return static_cast<std::size_t>(it - ids.begin());
}

}  // namespace

ConfusionMatrix confusion_matrix(std::span<const int> actual,
                                 std::span<const int> predicted,
                                 std::vector<int> class_ids) {
  if (actual.size() != predicted.size()) {
    throw Error("actual and predicted label counts differ");
  }
  std::sort(class_ids.begin(), class_ids.end());
  class_ids.erase(std::unique(class_ids.begin(), class_ids.end()),
                  class_ids.end());
  ConfusionMatrix c;
  c.class_ids = std::move(class_ids);
  c.counts.assign(c.n_classes() * c.n_classes(), 0);
  for (std::size_t i = 0; i < actual.size(); ++i) {
    ++c.counts[index_of(c.class_ids, actual[i]) * c.n_classes() +
               index_of(c.class_ids, predicted[i])];
  }
  return c;
}

KnnPrediction knn_predict(const Dataset& train, const Dataset& test,
                          const FeatureMask& mask, std::size_t k, int threads) {
  if (train.n_samples() == 0) throw Error("empty training set");
  if (k < 1) throw Error("k must be >= 1");
  if (mask.none()) throw Error("empty feature mask");
  if (mask.size() != train.n_features() || mask.size() != test.n_features()) {
    throw Error("mask length does not match feature count");
  }

  KnnPrediction out;
  out.class_ids = train.class_ids();
  out.class_ids.insert(out.class_ids.end(), test.class_ids().begin(),
                       test.class_ids().end());
  std::sort(out.class_ids.begin(), out.class_ids.end());
  out.class_ids.erase(std::unique(out.class_ids.begin(), out.class_ids.end()),
                      out.class_ids.end());
  const std::size_t n_cls = out.class_ids.size();
  std::vector<std::size_t> train_cls(train.n_samples());
  for (std::size_t j = 0; j < train.n_samples(); ++j) {
    train_cls[j] = index_of(out.class_ids, train.label(j));
  }

  const std::size_t n_test = test.n_samples();
  const std::size_t kk = std::min(k, train.n_samples());
  const auto selected = mask.selected();
  out.labels.resize(n_test);
  out.class_scores.assign(n_test * n_cls, 0.0);
  out.positive_scores.resize(n_test);

  const auto n_test_signed = static_cast<std::ptrdiff_t>(n_test);
#pragma omp parallel num_threads(threads > 0 ? threads : omp_get_max_threads())
  {
    std::vector<std::pair<double, std::size_t>> dist(train.n_samples());
    std::vector<std::size_t> votes(n_cls);
#pragma omp for schedule(static)
    for (std::ptrdiff_t si = 0; si < n_test_signed; ++si) {
      const auto i = static_cast<std::size_t>(si);
      for (std::size_t j = 0; j < train.n_samples(); ++j) {
        dist[j] = {masked_sq_distance(test.row(i), train.row(j), selected), j};
      }
      std::partial_sort(dist.begin(), dist.begin() + static_cast<std::ptrdiff_t>(kk),
                        dist.end());
      std::fill(votes.begin(), votes.end(), 0);
      for (std::size_t m = 0; m < kk; ++m) ++votes[train_cls[dist[m].second]];
      std::size_t winner = 0;
      for (std::size_t c = 1; c < n_cls; ++c) {
        if (votes[c] >= votes[winner]) winner = c;
      }
      out.labels[i] = out.class_ids[winner];
      for (std::size_t c = 0; c < n_cls; ++c) {
        out.class_scores[i * n_cls + c] =
            static_cast<double>(votes[c]) / static_cast<double>(kk);
      }
      out.positive_scores[i] = out.class_scores[i * n_cls + n_cls - 1];
    }
  }
  return out;
}

double accuracy(const ConfusionMatrix& c) {
  const std::size_t total = c.total();
  if (total == 0) throw Error("empty confusion matrix");
  std::size_t diag = 0;
  for (std::size_t i = 0; i < c.n_classes(); ++i) diag += c.at(i, i);
  return static_cast<double>(diag) / static_cast<double>(total);
}

double kappa(const ConfusionMatrix& c) {
  const std::size_t total_count = c.total();
  if (total_count == 0) throw Error("empty confusion matrix");
  const auto total = static_cast<double>(total_count);
  const std::size_t n = c.n_classes();
  double diag = 0;
  double chance = 0;
  for (std::size_t i = 0; i < n; ++i) {
    diag += static_cast<double>(c.at(i, i));
    double row = 0;
    double col = 0;
    for (std::size_t j = 0; j < n; ++j) {
      row += static_cast<double>(c.at(i, j));
      col += static_cast<double>(c.at(j, i));
    }
    chance += row * col;
  }
  const double p_o = diag / total;
  const double p_e = chance / (total * total);
  if (p_e == 1.0) return 0.0;
  return (p_o - p_e) / (1.0 - p_e);
}

double auc(std::span<const double> scores, std::span<const int> labels,
           int positive_label) {
  if (scores.size() != labels.size()) {
    throw Error("score and label counts differ");
  }
  std::vector<double> pos;
  std::vector<double> neg;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    (labels[i] == positive_label ? pos : neg).push_back(scores[i]);
  }
  if (pos.empty() || neg.empty()) {
    throw Error("auc needs both positive and negative samples");
  }
  // Rank-based pair count: for each positive, negatives strictly below plus
  // half of the ties.
  std::sort(neg.begin(), neg.end());
  double wins = 0;
  for (double s : pos) {
    const auto lo = std::lower_bound(neg.begin(), neg.end(), s);
    const auto hi = std::upper_bound(neg.begin(), neg.end(), s);
    wins += static_cast<double>(lo - neg.begin()) +
            0.5 * static_cast<double>(hi - lo);
  }
  return wins / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

double eta(double a, double kappa, double auc) { return (a + kappa + auc) / 3.0; }

MetricsReport evaluate_subset(const Dataset& train, const Dataset& test,
                              const FeatureMask& mask, std::size_t k) {
  const KnnPrediction pred = knn_predict(train, test, mask, k);
  MetricsReport r;
  r.confusion = confusion_matrix(test.labels(), pred.labels, pred.class_ids);
  r.a = accuracy(r.confusion);
  r.kappa = kappa(r.confusion);
  r.dimension = mask.count();

  const std::size_t n_cls = pred.class_ids.size();
  if (n_cls == 2) {
    r.auc = auc(pred.positive_scores, test.labels(), pred.class_ids.back());
  } else {
    r.auc_one_vs_rest = true;
    double sum = 0;
    std::size_t used = 0;
    std::vector<double> col(test.n_samples());
    for (std::size_t c = 0; c < n_cls; ++c) {
      const int id = pred.class_ids[c];
      const auto& ls = test.labels();
      const bool has_pos = std::find(ls.begin(), ls.end(), id) != ls.end();
      const bool has_neg =
          std::any_of(ls.begin(), ls.end(), [id](int l) { return l != id; });
      if (!has_pos || !has_neg) continue;
      for (std::size_t i = 0; i < test.n_samples(); ++i) {
        col[i] = pred.class_scores[i * n_cls + c];
      }
      sum += auc(col, ls, id);
      ++used;
    }
    r.auc = used > 0 ? sum / static_cast<double>(used) : 0.5;
  }
  r.eta = eta(r.a, r.kappa, r.auc);
  return r;
}

}  // namespace kfs

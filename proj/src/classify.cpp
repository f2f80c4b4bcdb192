#include "eipvs/eval.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace eipvs {

std::string knn_vote(std::span<const double> distances, std::span<const std::string> labels, std::size_t k) {
  if (distances.size() != labels.size()) throw std::invalid_argument("knn_vote: size mismatch");
  if (distances.empty()) throw std::invalid_argument("knn_vote: no candidates");
  if (k < 1) throw std::invalid_argument("knn_vote: k must be at least 1");
  std::vector<std::size_t> order(distances.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t keep = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return distances[a] != distances[b] ? distances[a] < distances[b] : a < b;
                    });

  struct Tally {
    std::size_t votes = 0;
    double sum = 0.0;
  };
  std::map<std::string, Tally> tally;
  for (std::size_t r = 0; r < keep; ++r) {
    auto& t = tally[labels[order[r]]];
    ++t.votes;
    t.sum += distances[order[r]];
  }
  const std::string* best = nullptr;
  const Tally* best_tally = nullptr;
  // std::map iterates in label order, so a full tie keeps the first label.
  for (const auto& [label, t] : tally) {
    if (best == nullptr || t.votes > best_tally->votes ||
        (t.votes == best_tally->votes &&
         t.sum / static_cast<double>(t.votes) < best_tally->sum / static_cast<double>(best_tally->votes))) {
      best = &label;
      best_tally = &t;
    }
  }
  return *best;
}

namespace {

std::vector<std::string> labels_of(const LabeledDataset& d) {
  std::vector<std::string> out;
  out.reserve(d.size());
  for (const auto& e : d.entries) out.push_back(e.label);
  return out;
}

}  // namespace

std::string knn_classify(const LabeledDataset& train, const Series& query, std::size_t k, const DistanceSpec& spec) {
  if (train.empty()) throw std::invalid_argument("knn_classify: empty training set");
  std::vector<double> d(train.size());
  for (std::size_t i = 0; i < train.size(); ++i) d[i] = distance(spec, query, train.entries[i].series);
  const auto labels = labels_of(train);
  return knn_vote(d, labels, k);
}

ClassificationReport test_error(const LabeledDataset& train, const LabeledDataset& test, const DistanceSpec& spec,
                                std::size_t k, unsigned threads) {
  if (train.empty()) throw std::invalid_argument("test_error: empty training set");
  const auto train_series = train.series();
  const auto test_series = test.series();
  const Eigen::MatrixXd d = distance_matrix(spec, test_series, train_series, threads);
  const auto train_labels = labels_of(train);

  ClassificationReport report;
  std::vector<std::string> all = train.label_set();
  for (const auto& l : test.label_set()) all.push_back(l);
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  report.labels = all;
  report.confusion.assign(all.size(), std::vector<std::size_t>(all.size(), 0));
  auto slot = [&](const std::string& l) {
    return static_cast<std::size_t>(std::lower_bound(all.begin(), all.end(), l) - all.begin());
  };

  std::vector<double> row(train.size());
  for (std::size_t q = 0; q < test.size(); ++q) {
    for (std::size_t i = 0; i < train.size(); ++i) row[i] = d(static_cast<Index>(q), static_cast<Index>(i));
    std::string predicted = knn_vote(row, train_labels, k);
    const std::string& truth = test.entries[q].label;
    ++report.confusion[slot(truth)][slot(predicted)];
    if (predicted != truth) ++report.errors;
    report.predictions.push_back(std::move(predicted));
  }
  report.total = test.size();
  return report;
}

std::vector<double> default_nu_grid() { return {100, 10, 1, 1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 0}; }

double loo_error(const LabeledDataset& train, const DistanceSpec& spec, unsigned threads) {
  if (train.size() < 2) throw std::invalid_argument("leave-one-out needs at least two items");
  const auto series = train.series();
  const Eigen::MatrixXd d = distance_matrix(spec, series, threads);
  std::size_t errors = 0;
  for (Index i = 0; i < d.rows(); ++i) {
    Index nearest = -1;
    for (Index j = 0; j < d.cols(); ++j) {
      if (j == i) continue;
      if (nearest < 0 || d(i, j) < d(i, nearest)) nearest = j;
    }
    if (train.entries[static_cast<std::size_t>(nearest)].label != train.entries[static_cast<std::size_t>(i)].label)
      ++errors;
  }
  return static_cast<double>(errors) / static_cast<double>(train.size());
}

NuSelection select_nu(const LabeledDataset& train, std::span<const double> grid, TimeKernel kernel,
                      unsigned threads) {
  if (grid.empty()) throw std::invalid_argument("select_nu: empty grid");
  NuSelection sel;
  sel.grid.assign(grid.begin(), grid.end());
  bool first = true;
  for (double nu : grid) {
    const double e = loo_error(train, DistanceSpec::eip(nu, kernel), threads);
    sel.errors.push_back(e);
    if (first || e < sel.loo_error || (e == sel.loo_error && nu > sel.nu)) {
      sel.nu = nu;
      sel.loo_error = e;
      first = false;
    }
  }
  return sel;
}

double roc_auc(std::span<const ScoredLabel> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a].score < scores[b].score; });
  double positive_rank_sum = 0.0;
  std::size_t positives = 0;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]].score == scores[order[i]].score) ++j;
    const double mid_rank = 0.5 * static_cast<double>(i + 1 + j);  // mean of ranks i+1..j
    for (std::size_t r = i; r < j; ++r)
      if (scores[order[r]].positive) {
        positive_rank_sum += mid_rank;
        ++positives;
      }
    i = j;
  }
  const std::size_t negatives = scores.size() - positives;
  if (positives == 0 || negatives == 0) throw std::invalid_argument("roc_auc needs both classes");
  const double p = static_cast<double>(positives);
  return (positive_rank_sum - p * (p + 1.0) / 2.0) / (p * static_cast<double>(negatives));
}

}  // namespace eipvs

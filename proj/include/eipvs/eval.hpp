#ifndef EIPVS_EVAL_HPP
#define EIPVS_EVAL_HPP

#include "eipvs/dataset.hpp"
#include "eipvs/distances.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace eipvs {

// ---------------------------------------------------------------------------
// Nearest-neighbour classification

/// Majority label among the k smallest distances (ties between equal
/// distances go to the lower index). A tie in votes is broken by the smaller
/// mean distance of the tied labels, then by label order.
std::string knn_vote(std::span<const double> distances, std::span<const std::string> labels, std::size_t k);

std::string knn_classify(const LabeledDataset& train, const Series& query, std::size_t k, const DistanceSpec& spec);

struct ClassificationReport {
  std::vector<std::string> labels;  ///< sorted label set of train and test
  std::vector<std::vector<std::size_t>> confusion;  ///< [true][predicted]
  std::vector<std::string> predictions;
  std::size_t errors = 0;
  std::size_t total = 0;

  double error_rate() const { return total == 0 ? 0.0 : static_cast<double>(errors) / static_cast<double>(total); }
};

ClassificationReport test_error(const LabeledDataset& train, const LabeledDataset& test, const DistanceSpec& spec,
                                std::size_t k = 1, unsigned threads = 1);

/// Stiffness values searched by default: 100, 10, 1, ..., 1e-5, 0.
std::vector<double> default_nu_grid();

struct NuSelection {
  double nu = 0.0;
  double loo_error = 1.0;
  std::vector<double> grid;
  std::vector<double> errors;  ///< leave-one-out error per grid entry
};

/// Leave-one-out 1-NN error under the eip distance for every grid entry; the
/// lowest error wins, ties going to the larger nu.
NuSelection select_nu(const LabeledDataset& train, std::span<const double> grid,
                      TimeKernel kernel = TimeKernel::Gaussian, unsigned threads = 1);

/// Leave-one-out 1-NN error for a fixed distance.
double loo_error(const LabeledDataset& train, const DistanceSpec& spec, unsigned threads = 1);

struct ScoredLabel {
  double score = 0.0;
  bool positive = false;
};

/// Area under the ROC curve in Mann-Whitney form; tied scores count 1/2.
double roc_auc(std::span<const ScoredLabel> scores);

// ---------------------------------------------------------------------------
// Synthetic data

/// Cylinder / bell / funnel series: plateau, ramp up, ramp down of height
/// 6 + N(0,1) over a random [a, b] plus N(0,1) noise. Onset a is uniform in
/// [16, 32] and b - a uniform in [32, 96] for length 128, scaled for other
/// lengths. Timestamps are 1..length. Deterministic for a fixed seed.
LabeledDataset cbf_generate(std::size_t per_class, Index length = 128, std::uint64_t seed = 1);

// ---------------------------------------------------------------------------
// Timing

enum class BenchDistance { Euclidean, Dtw, Eip, IndexedEip };

BenchDistance parse_bench_distance(const std::string& name);
std::string bench_distance_name(BenchDistance d);

struct TimingConfig {
  std::vector<Index> lengths{10, 100, 1000};
  std::vector<BenchDistance> distances{BenchDistance::Euclidean, BenchDistance::Dtw, BenchDistance::Eip,
                                       BenchDistance::IndexedEip};
  std::size_t series = 100;  ///< the upper triangle of a series x series matrix is timed
  int repeats = 5;
  int warmups = 1;
  double nu = 1.0;
  std::uint64_t seed = 1;
};

struct TimingRow {
  BenchDistance distance;
  Index length;
  double seconds;  ///< median over repeats
};

/// Single-threaded wall-clock timing of pairwise distance computation on
/// random N(0, 1) series with index timestamps. The indexed eip excludes the
/// index build and times query embedding plus one dot product per pair.
std::vector<TimingRow> timing_bench(const TimingConfig& config);

/// Least-squares slope of log(seconds) against log(length).
double loglog_slope(std::span<const double> lengths, std::span<const double> seconds);

}  // namespace eipvs

#endif  // EIPVS_EVAL_HPP

#include "eipvs/elastic_index.hpp"
#include "eipvs/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <memory>
#include <random>
#include <stdexcept>

namespace eipvs {

BenchDistance parse_bench_distance(const std::string& name) {
  if (name == "ed" || name == "euclidean") return BenchDistance::Euclidean;
  if (name == "dtw") return BenchDistance::Dtw;
  if (name == "eip") return BenchDistance::Eip;
  if (name == "ieip" || name == "i-eip" || name == "indexed") return BenchDistance::IndexedEip;
  throw std::invalid_argument("unknown bench distance '" + name + "' (expected ed, dtw, eip or ieip)");
}

std::string bench_distance_name(BenchDistance d) {
  switch (d) {
    case BenchDistance::Euclidean: return "ed";
    case BenchDistance::Dtw: return "dtw";
    case BenchDistance::Eip: return "eip";
    case BenchDistance::IndexedEip: return "ieip";
  }
  return "?";
}

namespace {

std::vector<Series> random_series(std::size_t count, Index length, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const Timestamps t = index_timestamps(length);
  std::vector<Series> out;
  out.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    Series::Values v(1, length);
    for (Index i = 0; i < length; ++i) {
      double x = normal(rng);
      while (x == 0.0) x = normal(rng);
      v(0, i) = x;
    }
    out.emplace_back(std::move(v), t);
  }
  return out;
}

double median_seconds(const std::function<double()>& run, int repeats, int warmups) {
  volatile double sink = 0.0;
  for (int w = 0; w < warmups; ++w) sink = sink + run();
  std::vector<double> times;
  for (int r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    sink = sink + run();
    const auto stop = std::chrono::steady_clock::now();
    times.push_back(std::chrono::duration<double>(stop - start).count());
  }
  std::sort(times.begin(), times.end());
  const std::size_t n = times.size();
  return n % 2 == 1 ? times[n / 2] : 0.5 * (times[n / 2 - 1] + times[n / 2]);
}

}  // namespace

std::vector<TimingRow> timing_bench(const TimingConfig& config) {
  if (config.series < 2) throw std::invalid_argument("timing_bench needs at least two series");
  if (config.repeats < 1) throw std::invalid_argument("timing_bench needs at least one repeat");
  std::vector<TimingRow> rows;
  std::mt19937_64 rng(config.seed);
  const ElasticParams params = ElasticParams::eip(config.nu);

  for (Index length : config.lengths) {
    if (length < 1) throw std::invalid_argument("timing_bench: lengths must be positive");
    const std::vector<Series> data = random_series(config.series, length, rng);
    const std::size_t m = data.size();

    for (BenchDistance which : config.distances) {
      std::function<double()> run;
      // Per-length precomputation, excluded from the timed region.
      std::shared_ptr<KernelTable<double>> table;
      std::shared_ptr<ElasticMatrix> matrix;
      std::vector<Eigen::VectorXd> transformed;
      std::vector<double> self;

      switch (which) {
        case BenchDistance::Euclidean:
          run = [&] {
            double acc = 0.0;
            for (std::size_t i = 0; i < m; ++i)
              for (std::size_t j = i + 1; j < m; ++j) acc += euclidean_distance(data[i], data[j]);
            return acc;
          };
          break;
        case BenchDistance::Dtw:
          run = [&] {
            double acc = 0.0;
            for (std::size_t i = 0; i < m; ++i)
              for (std::size_t j = i + 1; j < m; ++j) acc += dtw_distance(data[i], data[j]);
            return acc;
          };
          break;
        case BenchDistance::Eip:
          table = std::make_shared<KernelTable<double>>(data[0].times(), data[0].times(), params);
          run = [&] {
            std::vector<double> s(m);
            for (std::size_t i = 0; i < m; ++i) s[i] = eip(data[i], data[i], *table);
            double acc = 0.0;
            for (std::size_t i = 0; i < m; ++i)
              for (std::size_t j = i + 1; j < m; ++j)
                acc += distance_from_products(s[i], s[j], eip(data[i], data[j], *table));
            return acc;
          };
          break;
        case BenchDistance::IndexedEip:
          matrix = std::make_shared<ElasticMatrix>(build_elastic_matrix(data[0].times(), config.nu));
          for (const auto& s : data) {
            const Eigen::VectorXd b = embed_on_grid(s, matrix->grid);
            transformed.push_back(apply_elastic_matrix(*matrix, b, 1));
            self.push_back(b.dot(transformed.back()));
          }
          run = [&] {
            double acc = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
              const Eigen::VectorXd a = embed_on_grid(data[i], matrix->grid);
              for (std::size_t j = i + 1; j < m; ++j)
                acc += distance_from_products(self[i], self[j], a.dot(transformed[j]));
            }
            return acc;
          };
          break;
      }
      rows.push_back({which, length, median_seconds(run, config.repeats, config.warmups)});
    }
  }
  return rows;
}

double loglog_slope(std::span<const double> lengths, std::span<const double> seconds) {
  if (lengths.size() != seconds.size() || lengths.size() < 2)
    throw std::invalid_argument("loglog_slope needs at least two matching points");
  const std::size_t n = lengths.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(lengths[i] > 0.0) || !(seconds[i] > 0.0)) throw std::invalid_argument("loglog_slope needs positive values");
    mx += std::log(lengths[i]);
    my += std::log(seconds[i]);
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = std::log(lengths[i]) - mx;
    sxy += dx * (std::log(seconds[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw std::invalid_argument("loglog_slope needs distinct lengths");
  return sxy / sxx;
}

}  // namespace eipvs

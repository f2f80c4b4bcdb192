#include "eipvs/distances.hpp"

#include "eipvs/elastic_index.hpp"
#include "eipvs/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

namespace eipvs {

double squared_euclidean_distance(const Series& a, const Series& b) {
  if (a.size() != b.size()) throw std::invalid_argument("euclidean distance needs equal lengths");
  if (!a.empty() && a.dim() != b.dim()) throw std::invalid_argument("euclidean distance: dimension mismatch");
  if (a.times() != b.times()) throw std::invalid_argument("euclidean distance needs aligned timestamps");
  const Index d = a.dim();
  const double* x = a.values().data();
  const double* y = b.values().data();
  // Per-sample partial sums accumulated in time order, the same association
  // the elastic recursion uses when the time kernel is the identity.
  double total = 0.0;
  for (Index i = 0; i < a.size(); ++i) {
    double sample = 0.0;
    for (Index c = 0; c < d; ++c) {
      const double diff = x[i * d + c] - y[i * d + c];
      sample += diff * diff;
    }
    total += sample;
  }
  return total;
}

double euclidean_distance(const Series& a, const Series& b) { return std::sqrt(squared_euclidean_distance(a, b)); }

double dtw_distance(const Series& a, const Series& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("dtw needs non-empty series");
  if (a.dim() != b.dim()) throw std::invalid_argument("dtw: dimension mismatch");
  const Index d = a.dim();
  const Index n = a.size();
  const Index m = b.size();
  const double* x = a.values().data();
  const double* y = b.values().data();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> prev(static_cast<std::size_t>(m + 1), inf);
  std::vector<double> cur(static_cast<std::size_t>(m + 1), inf);
  prev[0] = 0.0;
  for (Index i = 1; i <= n; ++i) {
    cur[0] = inf;
    for (Index j = 1; j <= m; ++j) {
      double cost = 0.0;
      for (Index c = 0; c < d; ++c) {
        const double diff = x[(i - 1) * d + c] - y[(j - 1) * d + c];
        cost += diff * diff;
      }
      const auto uj = static_cast<std::size_t>(j);
      cur[uj] = cost + std::min({prev[uj], cur[uj - 1], prev[uj - 1]});
    }
    std::swap(prev, cur);
  }
  return std::sqrt(prev[static_cast<std::size_t>(m)]);
}

DistanceKind parse_distance_kind(const std::string& name) {
  if (name == "ed" || name == "euclidean") return DistanceKind::Euclidean;
  if (name == "dtw") return DistanceKind::Dtw;
  if (name == "eip") return DistanceKind::Eip;
  throw std::invalid_argument("unknown distance '" + name + "' (expected ed, dtw or eip)");
}

std::string distance_kind_name(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::Euclidean: return "ed";
    case DistanceKind::Dtw: return "dtw";
    case DistanceKind::Eip: return "eip";
  }
  return "?";
}

double distance(const DistanceSpec& spec, const Series& a, const Series& b) {
  switch (spec.kind) {
    case DistanceKind::Euclidean: return euclidean_distance(a, b);
    case DistanceKind::Dtw: return dtw_distance(a, b);
    case DistanceKind::Eip: return eip_distance(a, b, spec.params);
  }
  throw std::logic_error("unreachable distance kind");
}

bool share_sampling(std::span<const Series> a, std::span<const Series> b) {
  const Series* first = !a.empty() ? &a.front() : (!b.empty() ? &b.front() : nullptr);
  if (first == nullptr) return true;
  for (auto group : {a, b})
    for (const auto& s : group)
      if (s.times() != first->times() || s.dim() != first->dim()) return false;
  return true;
}

namespace {

struct ProjectedSet {
  std::vector<Eigen::VectorXd> embedded;
  std::vector<Eigen::VectorXd> transformed;
  std::vector<double> self;
};

ProjectedSet project(const ElasticMatrix& matrix, std::span<const Series> items, Index dim, unsigned threads) {
  ProjectedSet out;
  out.embedded.resize(items.size());
  out.transformed.resize(items.size());
  out.self.resize(items.size());
  parallel_for(items.size(), threads, [&](std::size_t i) {
    out.embedded[i] = embed_on_grid(items[i], matrix.grid);
    out.transformed[i] = apply_elastic_matrix(matrix, out.embedded[i], dim);
    out.self[i] = out.embedded[i].dot(out.transformed[i]);
  });
  return out;
}

std::vector<double> self_products(const ElasticParams& params, std::span<const Series> items, unsigned threads) {
  std::vector<double> self(items.size());
  parallel_for(items.size(), threads, [&](std::size_t i) { self[i] = eip(items[i], items[i], params); });
  return self;
}

}  // namespace

Eigen::MatrixXd distance_matrix(const DistanceSpec& spec, std::span<const Series> rows, std::span<const Series> cols,
                                unsigned threads) {
  Eigen::MatrixXd out(static_cast<Index>(rows.size()), static_cast<Index>(cols.size()));
  if (rows.empty() || cols.empty()) return out;

  if (spec.kind == DistanceKind::Eip && share_sampling(rows, cols) && !rows.front().empty()) {
    const ElasticMatrix matrix = build_elastic_matrix(rows.front().times(), spec.params.nu, spec.params.kernel);
    const Index dim = rows.front().dim();
    const ProjectedSet r = project(matrix, rows, dim, threads);
    const ProjectedSet c = project(matrix, cols, dim, threads);
    parallel_for(rows.size(), threads, [&](std::size_t i) {
      for (std::size_t j = 0; j < cols.size(); ++j)
        out(static_cast<Index>(i), static_cast<Index>(j)) =
            distance_from_products(r.self[i], c.self[j], r.embedded[i].dot(c.transformed[j]));
    });
    return out;
  }
  if (spec.kind == DistanceKind::Eip) {
    const auto rs = self_products(spec.params, rows, threads);
    const auto cs = self_products(spec.params, cols, threads);
    parallel_for(rows.size(), threads, [&](std::size_t i) {
      for (std::size_t j = 0; j < cols.size(); ++j)
        out(static_cast<Index>(i), static_cast<Index>(j)) =
            distance_from_products(rs[i], cs[j], eip(rows[i], cols[j], spec.params));
    });
    return out;
  }
  parallel_for(rows.size(), threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < cols.size(); ++j)
      out(static_cast<Index>(i), static_cast<Index>(j)) = distance(spec, rows[i], cols[j]);
  });
  return out;
}

Eigen::MatrixXd distance_matrix(const DistanceSpec& spec, std::span<const Series> items, unsigned threads) {
  const auto m = static_cast<Index>(items.size());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
  if (items.empty()) return out;

  std::function<double(std::size_t, std::size_t)> pair;
  ProjectedSet projected;
  std::vector<double> self;
  if (spec.kind == DistanceKind::Eip && share_sampling(items, {}) && !items.front().empty()) {
    const ElasticMatrix matrix = build_elastic_matrix(items.front().times(), spec.params.nu, spec.params.kernel);
    projected = project(matrix, items, items.front().dim(), threads);
    pair = [&](std::size_t i, std::size_t j) {
      return distance_from_products(projected.self[i], projected.self[j],
                                    projected.embedded[i].dot(projected.transformed[j]));
    };
  } else if (spec.kind == DistanceKind::Eip) {
    self = self_products(spec.params, items, threads);
    pair = [&](std::size_t i, std::size_t j) {
      return distance_from_products(self[i], self[j], eip(items[i], items[j], spec.params));
    };
  } else {
    pair = [&](std::size_t i, std::size_t j) { return distance(spec, items[i], items[j]); };
  }
  parallel_for(items.size(), threads, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < items.size(); ++j) {
      const double v = pair(i, j);
      out(static_cast<Index>(i), static_cast<Index>(j)) = v;
      out(static_cast<Index>(j), static_cast<Index>(i)) = v;
    }
  });
  return out;
}

}  // namespace eipvs

#ifndef EIPVS_SERIES_HPP
#define EIPVS_SERIES_HPP

#include <Eigen/Core>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eipvs {

using Index = Eigen::Index;

/// Timestamps are plain 64-bit floats; equality between timestamps is exact.
using Timestamps = std::vector<double>;

/// A discrete, possibly non-uniformly sampled, multivariate time series.
///
/// Samples are stored column-wise: column i of values() is the d-dimensional
/// value observed at time(i). The empty series (no columns) is the null
/// series. The type itself does not enforce ordering or the no-zero-value
/// rule; validate() reports on both, and the algebra checks its inputs.
template <typename Scalar>
class TimeSeries {
 public:
  using Values = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Value = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  TimeSeries() : values_(1, 0) {}

  explicit TimeSeries(Index dim) : values_(dim, 0) {
    if (dim < 1) throw std::invalid_argument("series dimension must be positive");
  }

  TimeSeries(Values values, Timestamps times)
      : values_(std::move(values)), times_(std::move(times)) {
    if (values_.rows() < 1) throw std::invalid_argument("series dimension must be positive");
    if (static_cast<std::size_t>(values_.cols()) != times_.size())
      throw std::invalid_argument("series has " + std::to_string(values_.cols()) +
                                  " values but " + std::to_string(times_.size()) +
                                  " timestamps");
  }

  /// Univariate series from parallel value/timestamp lists.
  static TimeSeries univariate(const std::vector<Scalar>& values, Timestamps times) {
    Values v(1, static_cast<Index>(values.size()));
    for (std::size_t i = 0; i < values.size(); ++i) v(0, static_cast<Index>(i)) = values[i];
    return TimeSeries(std::move(v), std::move(times));
  }

  /// Univariate series from (value, timestamp) pairs.
  static TimeSeries from_samples(std::initializer_list<std::pair<Scalar, double>> samples) {
    Values v(1, static_cast<Index>(samples.size()));
    Timestamps t;
    t.reserve(samples.size());
    Index i = 0;
    for (const auto& [value, time] : samples) {
      v(0, i++) = value;
      t.push_back(time);
    }
    return TimeSeries(std::move(v), std::move(t));
  }

  Index size() const { return values_.cols(); }
  Index dim() const { return values_.rows(); }
  bool empty() const { return values_.cols() == 0; }

  const Values& values() const { return values_; }
  const Timestamps& times() const { return times_; }
  double time(Index i) const { return times_[static_cast<std::size_t>(i)]; }
  auto value(Index i) const { return values_.col(i); }
  /// Scalar value of a univariate series.
  const Scalar& operator[](Index i) const { return values_(0, i); }

  /// First n samples.
  TimeSeries prefix(Index n) const {
    if (n < 0 || n > size()) throw std::out_of_range("prefix length out of range");
    return TimeSeries(values_.leftCols(n), Timestamps(times_.begin(), times_.begin() + n));
  }

  friend bool operator==(const TimeSeries& a, const TimeSeries& b) {
    return a.dim() == b.dim() && a.times_ == b.times_ && a.values_ == b.values_;
  }

 private:
  Values values_;
  Timestamps times_;
};

using Series = TimeSeries<double>;

/// Timestamps 1..n, used for data that carries no explicit time.
inline Timestamps index_timestamps(Index n) {
  Timestamps t(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) t[static_cast<std::size_t>(i)] = static_cast<double>(i + 1);
  return t;
}

/// Maps timestamps affinely onto [0, 1]. A single timestamp maps to 0.
inline Timestamps normalize_timestamps(const Timestamps& t) {
  if (t.empty()) return {};
  const double lo = t.front();
  const double span = t.back() - lo;
  Timestamps out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = span > 0 ? (t[i] - lo) / span : 0.0;
  return out;
}

enum class Membership { InUStar, InUOnly, Invalid };

struct MembershipReport {
  Membership membership = Membership::InUStar;
  std::vector<Index> zero_value_indices;
  /// Indices i whose timestamp does not exceed the one at i - 1.
  std::vector<Index> non_increasing_indices;
};

template <typename Scalar>
MembershipReport validate(const TimeSeries<Scalar>& series) {
  MembershipReport report;
  for (Index i = 0; i < series.size(); ++i) {
    bool zero = true;
    for (Index c = 0; c < series.dim(); ++c)
      if (series.values()(c, i) != Scalar(0)) zero = false;
    if (zero) report.zero_value_indices.push_back(i);
    if (i > 0 && !(series.time(i) > series.time(i - 1)))
      report.non_increasing_indices.push_back(i);
  }
  if (!report.non_increasing_indices.empty())
    report.membership = Membership::Invalid;
  else if (!report.zero_value_indices.empty())
    report.membership = Membership::InUOnly;
  return report;
}

template <typename Scalar>
bool in_ustar(const TimeSeries<Scalar>& series) {
  return validate(series).membership == Membership::InUStar;
}

namespace detail {

template <typename Scalar>
void require_ustar(const TimeSeries<Scalar>& s, const char* what) {
  const auto report = validate(s);
  if (report.membership == Membership::InUStar) return;
  if (!report.non_increasing_indices.empty())
    throw std::invalid_argument(std::string(what) + ": timestamps not strictly increasing at index " +
                                std::to_string(report.non_increasing_indices.front()));
  throw std::invalid_argument(std::string(what) + ": zero value at index " +
                              std::to_string(report.zero_value_indices.front()));
}

}  // namespace detail

/// Scalar multiplication. A zero factor yields the null series, since zero
/// values are not members of the space.
template <typename Scalar>
TimeSeries<Scalar> scale(const Scalar& lambda, const TimeSeries<Scalar>& a) {
  if (lambda == Scalar(0)) return TimeSeries<Scalar>(a.dim());
  typename TimeSeries<Scalar>::Values v = lambda * a.values();
  return TimeSeries<Scalar>(std::move(v), a.times());
}

/// Timestamp-merging addition.
///
/// Samples at distinct timestamps are copied in time order; samples sharing a
/// timestamp are summed, and a sum that is exactly the zero vector is dropped.
/// The null series is the identity regardless of its declared dimension.
template <typename Scalar>
TimeSeries<Scalar> oplus(const TimeSeries<Scalar>& a, const TimeSeries<Scalar>& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.dim() != b.dim())
    throw std::invalid_argument("oplus: dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()) + ")");
  detail::require_ustar(a, "oplus");
  detail::require_ustar(b, "oplus");

  const Index d = a.dim();
  typename TimeSeries<Scalar>::Values out(d, a.size() + b.size());
  Timestamps times;
  times.reserve(static_cast<std::size_t>(a.size() + b.size()));
  Index i = 0, j = 0, k = 0;
  while (i < a.size() && j < b.size()) {
    if (a.time(i) < b.time(j)) {
      out.col(k++) = a.value(i);
      times.push_back(a.time(i++));
    } else if (a.time(i) > b.time(j)) {
      out.col(k++) = b.value(j);
      times.push_back(b.time(j++));
    } else {
      out.col(k) = a.value(i) + b.value(j);
      bool zero = true;
      for (Index c = 0; c < d; ++c)
        if (out(c, k) != Scalar(0)) zero = false;
      if (!zero) {
        times.push_back(a.time(i));
        ++k;
      }
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) {
    out.col(k++) = a.value(i);
    times.push_back(a.time(i));
  }
  for (; j < b.size(); ++j) {
    out.col(k++) = b.value(j);
    times.push_back(b.time(j));
  }
  out.conservativeResize(d, k);
  return TimeSeries<Scalar>(std::move(out), std::move(times));
}

template <typename Scalar>
TimeSeries<Scalar> operator+(const TimeSeries<Scalar>& a, const TimeSeries<Scalar>& b) {
  return oplus(a, b);
}

template <typename Scalar>
TimeSeries<Scalar> operator-(const TimeSeries<Scalar>& a, const TimeSeries<Scalar>& b) {
  return oplus(a, scale(Scalar(-1), b));
}

template <typename Scalar>
TimeSeries<Scalar> operator*(const Scalar& lambda, const TimeSeries<Scalar>& a) {
  return scale(lambda, a);
}

/// Places the samples of `a` on `grid`, zero-filling grid points where `a`
/// has no sample. The result has grid.size() * dim entries, sample-major:
/// entry i * dim + c holds coordinate c at grid point i.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> embed_on_grid(const TimeSeries<Scalar>& a,
                                                       const Timestamps& grid) {
  const Index d = a.dim();
  const Index n = static_cast<Index>(grid.size());
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> out = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(n * d);
  Index g = 0;
  for (Index i = 0; i < a.size(); ++i) {
    const double t = a.time(i);
    while (g < n && grid[static_cast<std::size_t>(g)] < t) ++g;
    if (g == n || grid[static_cast<std::size_t>(g)] != t)
      throw std::invalid_argument("embed_on_grid: timestamp " + std::to_string(t) +
                                  " is not a grid point");
    out.segment(g * d, d) = a.value(i);
    ++g;
  }
  return out;
}

/// A series whose sample values are themselves time series, giving a second
/// elastic dimension. Each inner series carries its own timestamps.
template <typename Scalar>
class NestedSeries {
 public:
  NestedSeries() = default;
  NestedSeries(std::vector<TimeSeries<Scalar>> inner, Timestamps times)
      : inner_(std::move(inner)), times_(std::move(times)) {
    if (inner_.size() != times_.size())
      throw std::invalid_argument("nested series: inner/timestamp count mismatch");
  }

  Index size() const { return static_cast<Index>(inner_.size()); }
  bool empty() const { return inner_.empty(); }
  const TimeSeries<Scalar>& inner(Index i) const { return inner_[static_cast<std::size_t>(i)]; }
  double time(Index i) const { return times_[static_cast<std::size_t>(i)]; }
  const Timestamps& times() const { return times_; }
  const std::vector<TimeSeries<Scalar>>& inners() const { return inner_; }

  friend bool operator==(const NestedSeries& a, const NestedSeries& b) {
    return a.times_ == b.times_ && a.inner_ == b.inner_;
  }

 private:
  std::vector<TimeSeries<Scalar>> inner_;
  Timestamps times_;
};

template <typename Scalar>
NestedSeries<Scalar> scale(const Scalar& lambda, const NestedSeries<Scalar>& a) {
  if (lambda == Scalar(0)) return {};
  std::vector<TimeSeries<Scalar>> inner;
  inner.reserve(static_cast<std::size_t>(a.size()));
  for (const auto& s : a.inners()) inner.push_back(scale(lambda, s));
  return NestedSeries<Scalar>(std::move(inner), a.times());
}

/// Same merge rule as the flat case; an inner sum equal to the null series
/// plays the role of the zero value and is dropped.
template <typename Scalar>
NestedSeries<Scalar> oplus(const NestedSeries<Scalar>& a, const NestedSeries<Scalar>& b) {
  std::vector<TimeSeries<Scalar>> inner;
  Timestamps times;
  Index i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a.time(i) < b.time(j)) {
      inner.push_back(a.inner(i));
      times.push_back(a.time(i++));
    } else if (a.time(i) > b.time(j)) {
      inner.push_back(b.inner(j));
      times.push_back(b.time(j++));
    } else {
      auto sum = oplus(a.inner(i), b.inner(j));
      if (!sum.empty()) {
        inner.push_back(std::move(sum));
        times.push_back(a.time(i));
      }
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) {
    inner.push_back(a.inner(i));
    times.push_back(a.time(i));
  }
  for (; j < b.size(); ++j) {
    inner.push_back(b.inner(j));
    times.push_back(b.time(j));
  }
  return NestedSeries<Scalar>(std::move(inner), std::move(times));
}

}  // namespace eipvs

#endif  // EIPVS_SERIES_HPP

#ifndef EIPVS_ELASTIC_PRODUCT_HPP
#define EIPVS_ELASTIC_PRODUCT_HPP

#include "eipvs/series.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace eipvs {

/// Time kernel g(t, s) = exp(-nu * d(t, s)) with d the squared (gaussian) or
/// plain (laplace) absolute time difference.
enum class TimeKernel { Gaussian, Laplace };

/// Constants of the elastic product recursion
///
///   M(p, q) = alpha * M(p-1, q) + beta * M(p-1, q-1) + f(a_p, b_q) g(t_p, t_q)
///           + alpha * M(p, q-1),      M(., 0) = M(0, .) = xi,
///
/// with f the Euclidean dot product (or a nested elastic product). Only
/// alpha = 1, beta = -1, xi = 0 yields an inner product.
struct ElasticParams {
  double alpha = 1.0;
  double beta = -1.0;
  double xi = 0.0;
  double nu = 0.0;  ///< stiffness, in 1/time^2 for the gaussian kernel
  TimeKernel kernel = TimeKernel::Gaussian;

  static ElasticParams eip(double nu, TimeKernel kernel = TimeKernel::Gaussian) {
    return {1.0, -1.0, 0.0, nu, kernel};
  }

  static ElasticParams general(double alpha, double beta, double xi, double nu,
                               TimeKernel kernel = TimeKernel::Gaussian) {
    return {alpha, beta, xi, nu, kernel};
  }

  bool is_eip() const { return alpha == 1.0 && beta == -1.0 && xi == 0.0; }
};

template <typename Scalar>
Scalar time_kernel(TimeKernel kernel, double nu, double t, double s) {
  using std::abs;
  using std::exp;
  const Scalar dt = Scalar(t) - Scalar(s);
  const Scalar rate(nu);
  const Scalar arg = kernel == TimeKernel::Gaussian ? Scalar(-(rate * dt * dt)) : Scalar(-(rate * abs(dt)));
  if constexpr (std::is_floating_point_v<Scalar>) {
    // exp() rounds to exactly zero below this point; skip the call.
    static const Scalar underflow = std::log(std::numeric_limits<Scalar>::denorm_min()) - Scalar(2);
    if (arg < underflow) return Scalar(0);
  }
  return exp(arg);
}

inline void check_params(const ElasticParams& params) {
  if (!(params.nu >= 0.0) || !std::isfinite(params.nu))
    throw std::invalid_argument("stiffness nu must be finite and non-negative");
  if (!std::isfinite(params.alpha) || !std::isfinite(params.beta) || !std::isfinite(params.xi))
    throw std::invalid_argument("elastic product constants must be finite");
}

namespace detail {

/// Evaluates the alpha = 1, beta = -1 recursion through the column increment
/// R(p, q) = M(p, q) - M(p, q-1), which satisfies R(p, q) = R(p-1, q) + cell
/// and R(0, q) = 0. No intermediate subtraction occurs. Memory is O(p).
template <typename Scalar, typename Cell>
Scalar running_sum_recursion(Index p, Index q, Cell&& cell, const Scalar& xi) {
  if (p == 0 || q == 0) return xi;
  std::vector<Scalar> m(static_cast<std::size_t>(p), xi);
  for (Index j = 0; j < q; ++j) {
    Scalar r(0);
    for (Index i = 0; i < p; ++i) {
      r += cell(i, j);
      m[static_cast<std::size_t>(i)] += r;
    }
  }
  return m.back();
}

/// Literal three-branch recursion with two rolling rows of length q + 1.
template <typename Scalar, typename Cell>
Scalar literal_recursion(Index p, Index q, Cell&& cell, const Scalar& alpha, const Scalar& beta,
                         const Scalar& xi) {
  if (p == 0 || q == 0) return xi;
  std::vector<Scalar> prev(static_cast<std::size_t>(q + 1), xi);
  std::vector<Scalar> cur(static_cast<std::size_t>(q + 1), xi);
  for (Index i = 1; i <= p; ++i) {
    cur[0] = xi;
    for (Index j = 1; j <= q; ++j) {
      const auto uj = static_cast<std::size_t>(j);
      cur[uj] = alpha * prev[uj] + (beta * prev[uj - 1] + cell(i - 1, j - 1)) + alpha * cur[uj - 1];
    }
    std::swap(prev, cur);
  }
  return prev[static_cast<std::size_t>(q)];
}

/// Strict weak order used to fix the argument orientation, so that swapping
/// the operands reproduces the same summation order bit for bit. Shorter
/// series come first, which also bounds the working memory by the shorter one.
template <typename Scalar>
bool canonical_less(const TimeSeries<Scalar>& a, const TimeSeries<Scalar>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  if (a.dim() != b.dim()) return a.dim() < b.dim();
  if (a.times() != b.times()) return a.times() < b.times();
  const Scalar* x = a.values().data();
  const Scalar* y = b.values().data();
  for (Index k = 0; k < a.values().size(); ++k) {
    if (x[k] < y[k]) return true;
    if (y[k] < x[k]) return false;
  }
  return false;
}

template <typename Scalar>
bool canonical_less(const NestedSeries<Scalar>& a, const NestedSeries<Scalar>& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  if (a.times() != b.times()) return a.times() < b.times();
  for (Index i = 0; i < a.size(); ++i) {
    if (canonical_less(a.inner(i), b.inner(i))) return true;
    if (canonical_less(b.inner(i), a.inner(i))) return false;
  }
  return false;
}

template <typename Scalar>
void check_operands(const TimeSeries<Scalar>& a, const TimeSeries<Scalar>& b) {
  if (!a.empty() && !b.empty() && a.dim() != b.dim())
    throw std::invalid_argument("elastic product: dimension mismatch (" + std::to_string(a.dim()) +
                                " vs " + std::to_string(b.dim()) + ")");
  using std::isfinite;
  for (const auto* s : {&a, &b}) {
    const Scalar* v = s->values().data();
    for (Index k = 0; k < s->values().size(); ++k)
      if (!isfinite(v[k])) throw std::invalid_argument("elastic product: non-finite sample value");
  }
}

/// f(x_i, y_j): Euclidean dot product of two sample values.
template <typename Scalar>
struct DotProduct {
  const Scalar* x;
  const Scalar* y;
  Index d;

  Scalar operator()(Index i, Index j) const {
    if (d == 1) return x[i] * y[j];
    Scalar f(0);
    for (Index c = 0; c < d; ++c) f += x[i * d + c] * y[j * d + c];
    return f;
  }
};

template <typename Scalar, typename Cell>
Scalar evaluate(Index p, Index q, Cell&& cell, const ElasticParams& params) {
  if (params.alpha == 1.0 && params.beta == -1.0)
    return running_sum_recursion<Scalar>(p, q, cell, Scalar(params.xi));
  // Rows run over the second operand so that the rolling rows have the
  // length of the (shorter) first one.
  auto transposed = [&](Index i, Index j) { return cell(j, i); };
  return literal_recursion<Scalar>(q, p, transposed, Scalar(params.alpha), Scalar(params.beta),
                                   Scalar(params.xi));
}

}  // namespace detail

/// The elastic product for arbitrary recursion constants. Runs in
/// O(|a| |b|) time and O(min(|a|, |b|)) memory.
template <typename Scalar>
Scalar elastic_product(const TimeSeries<Scalar>& a, const TimeSeries<Scalar>& b,
                       const ElasticParams& params) {
  check_params(params);
  detail::check_operands(a, b);
  const bool swap = detail::canonical_less(b, a);
  const auto& x = swap ? b : a;
  const auto& y = swap ? a : b;
  const detail::DotProduct<Scalar> f{x.values().data(), y.values().data(), x.dim()};
  auto cell = [&](Index i, Index j) -> Scalar {
    return f(i, j) * time_kernel<Scalar>(params.kernel, params.nu, x.time(i), y.time(j));
  };
  return detail::evaluate<Scalar>(x.size(), y.size(), cell, params);
}

/// Elastic inner product: the recursion with alpha = 1, beta = -1, xi = 0.
template <typename Scalar>
Scalar eip(const TimeSeries<Scalar>& a, const TimeSeries<Scalar>& b, const ElasticParams& params) {
  if (!params.is_eip())
    throw std::invalid_argument("eip requires alpha = 1, beta = -1, xi = 0");
  return elastic_product(a, b, params);
}

template <typename Scalar>
Scalar eip_norm(const TimeSeries<Scalar>& a, const ElasticParams& params) {
  using std::sqrt;
  const Scalar self = eip(a, a, params);
  if (self < Scalar(0)) throw std::logic_error("eip_norm: negative self-product");
  return sqrt(self);
}

enum class DistanceForm {
  Expansion,   ///< sqrt(<a,a> + <b,b> - 2 <a,b>)
  Difference,  ///< norm of a (+) (-1 (x) b)
};

template <typename Scalar>
Scalar distance_from_products(const Scalar& aa, const Scalar& bb, const Scalar& ab) {
  using std::abs;
  using std::sqrt;
  const Scalar squared = aa + bb - Scalar(2) * ab;
  if (squared < Scalar(0)) {
    // Rounding can push a vanishing distance slightly below zero.
    const Scalar scale = abs(aa) + abs(bb);
    if (-squared > Scalar(1e-9) * scale)
      throw std::logic_error("eip distance: negative squared distance");
    return Scalar(0);
  }
  return sqrt(squared);
}

template <typename Scalar>
Scalar eip_distance(const TimeSeries<Scalar>& a, const TimeSeries<Scalar>& b,
                    const ElasticParams& params, DistanceForm form = DistanceForm::Expansion) {
  if (form == DistanceForm::Difference) {
    detail::check_operands(a, b);
    return eip_norm(oplus(a, scale(Scalar(-1), b)), params);
  }
  return distance_from_products(eip(a, a, params), eip(b, b, params), eip(a, b, params));
}

/// Elastic product with a nested elastic product as the sample-level product
/// f, giving two elastic time dimensions.
template <typename Scalar>
Scalar elastic_product(const NestedSeries<Scalar>& a, const NestedSeries<Scalar>& b,
                       const ElasticParams& outer, const ElasticParams& inner) {
  check_params(outer);
  check_params(inner);
  const bool swap = detail::canonical_less(b, a);
  const auto& x = swap ? b : a;
  const auto& y = swap ? a : b;
  auto cell = [&](Index i, Index j) -> Scalar {
    return elastic_product(x.inner(i), y.inner(j), inner) *
           time_kernel<Scalar>(outer.kernel, outer.nu, x.time(i), y.time(j));
  };
  return detail::evaluate<Scalar>(x.size(), y.size(), cell, outer);
}

template <typename Scalar>
Scalar eip(const NestedSeries<Scalar>& a, const NestedSeries<Scalar>& b, const ElasticParams& outer,
           const ElasticParams& inner) {
  if (!outer.is_eip() || !inner.is_eip())
    throw std::invalid_argument("eip requires alpha = 1, beta = -1, xi = 0 at both levels");
  return elastic_product(a, b, outer, inner);
}

/// Time-kernel values g(r_i, c_j) for fixed row and column timestamps.
/// Reused across many products when series share their sampling.
template <typename Scalar>
class KernelTable {
 public:
  KernelTable(Timestamps rows, Timestamps cols, const ElasticParams& params)
      : rows_(std::move(rows)), cols_(std::move(cols)), params_(params) {
    check_params(params_);
    g_.resize(static_cast<Index>(rows_.size()), static_cast<Index>(cols_.size()));
    for (Index j = 0; j < g_.cols(); ++j)
      for (Index i = 0; i < g_.rows(); ++i)
        g_(i, j) = time_kernel<Scalar>(params_.kernel, params_.nu, rows_[static_cast<std::size_t>(i)],
                                       cols_[static_cast<std::size_t>(j)]);
  }

  const Timestamps& row_times() const { return rows_; }
  const Timestamps& col_times() const { return cols_; }
  const ElasticParams& params() const { return params_; }
  const Scalar& operator()(Index i, Index j) const { return g_(i, j); }

 private:
  Timestamps rows_;
  Timestamps cols_;
  ElasticParams params_;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> g_;
};

/// Same value as eip(a, b, table.params()), bit for bit, reading g from the
/// table. a and b must be sampled at the table's row and column timestamps
/// (either orientation).
template <typename Scalar>
Scalar eip(const TimeSeries<Scalar>& a, const TimeSeries<Scalar>& b, const KernelTable<Scalar>& table) {
  const auto& params = table.params();
  if (!params.is_eip()) throw std::invalid_argument("eip requires alpha = 1, beta = -1, xi = 0");
  detail::check_operands(a, b);
  const bool swap = detail::canonical_less(b, a);
  const auto& x = swap ? b : a;
  const auto& y = swap ? a : b;
  const detail::DotProduct<Scalar> f{x.values().data(), y.values().data(), x.dim()};
  if (x.times() == table.row_times() && y.times() == table.col_times()) {
    auto cell = [&](Index i, Index j) -> Scalar { return f(i, j) * table(i, j); };
    return detail::running_sum_recursion<Scalar>(x.size(), y.size(), cell, Scalar(0));
  }
  if (x.times() == table.col_times() && y.times() == table.row_times()) {
    auto cell = [&](Index i, Index j) -> Scalar { return f(i, j) * table(j, i); };
    return detail::running_sum_recursion<Scalar>(x.size(), y.size(), cell, Scalar(0));
  }
  throw std::invalid_argument("eip: series timestamps do not match the kernel table");
}

}  // namespace eipvs

#endif  // EIPVS_ELASTIC_PRODUCT_HPP

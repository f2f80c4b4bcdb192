#ifndef EIPVS_ORTHOGONAL_HPP
#define EIPVS_ORTHOGONAL_HPP

#include "eipvs/elastic_product.hpp"
#include "eipvs/series.hpp"

#include <boost/math/constants/constants.hpp>

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace eipvs {

/// Raised when a family member lies (numerically) in the span of its
/// predecessors.
class DependenceError : public std::runtime_error {
 public:
  explicit DependenceError(Index index)
      : std::runtime_error("gram_schmidt: family member " + std::to_string(index) +
                           " depends on the previous ones"),
        index_(index) {}
  Index index() const { return index_; }

 private:
  Index index_;
};

/// Default replacement for exact zeros in generated bases: 2^-52.
inline constexpr double kDefaultEpsilon = 0x1p-52;

/// Relative residual below which a member counts as dependent: 1e-10 in
/// double, scaled by sqrt(eps_Scalar / eps_double) for wider scalars so that
/// extra precision also resolves nearer-dependent families.
template <typename Scalar>
double default_dependence_tolerance() {
  using std::sqrt;
  const Scalar ratio = std::numeric_limits<Scalar>::epsilon() / Scalar(std::numeric_limits<double>::epsilon());
  if (!(ratio < Scalar(1))) return 1e-10;
  return 1e-10 * static_cast<double>(sqrt(ratio));
}

/// Modified Gram-Schmidt in the elastic inner-product space: projections use
/// eip, combinations use (+) and (x), normalization uses eip_norm.
///
/// A member whose residual norm falls below `dependence_tolerance` times its
/// own norm raises DependenceError with that member's index. A negative
/// tolerance selects default_dependence_tolerance<Scalar>().
template <typename Scalar>
std::vector<TimeSeries<Scalar>> gram_schmidt(std::span<const TimeSeries<Scalar>> family,
                                             const ElasticParams& params,
                                             double dependence_tolerance = -1.0) {
  using std::sqrt;
  if (dependence_tolerance < 0.0) dependence_tolerance = default_dependence_tolerance<Scalar>();
  if (!params.is_eip()) throw std::invalid_argument("gram_schmidt requires eip parameters");
  std::vector<TimeSeries<Scalar>> basis;
  basis.reserve(family.size());
  for (std::size_t k = 0; k < family.size(); ++k) {
    const TimeSeries<Scalar>& x = family[k];
    TimeSeries<Scalar> v = x;
    for (const auto& e : basis) {
      const Scalar c = eip(v, e, params);
      v = oplus(v, scale(Scalar(-c), e));
    }
    const Scalar self = eip(v, v, params);
    const Scalar floor = Scalar(dependence_tolerance) * eip_norm(x, params);
    if (v.empty() || self <= floor * floor) throw DependenceError(static_cast<Index>(k));
    basis.push_back(scale(Scalar(Scalar(1) / sqrt(self)), v));
  }
  return basis;
}

template <typename Scalar>
std::vector<TimeSeries<Scalar>> gram_schmidt(const std::vector<TimeSeries<Scalar>>& family,
                                             const ElasticParams& params,
                                             double dependence_tolerance = -1.0) {
  return gram_schmidt(std::span<const TimeSeries<Scalar>>(family), params, dependence_tolerance);
}

/// Family of `count` series of increasing length on timestamps k / (count - 1):
/// member k has k + 1 samples, all equal to epsilon except a final 1.
template <typename Scalar = double>
std::vector<TimeSeries<Scalar>> make_spike_basis(Index count, const Scalar& epsilon = Scalar(kDefaultEpsilon)) {
  if (count < 1) throw std::invalid_argument("spike basis needs count >= 1");
  if (!(epsilon > Scalar(0))) throw std::invalid_argument("spike basis needs epsilon > 0");
  std::vector<TimeSeries<Scalar>> family;
  family.reserve(static_cast<std::size_t>(count));
  for (Index k = 0; k < count; ++k) {
    typename TimeSeries<Scalar>::Values v(1, k + 1);
    Timestamps t(static_cast<std::size_t>(k + 1));
    for (Index i = 0; i <= k; ++i) {
      v(0, i) = i == k ? Scalar(1) : epsilon;
      t[static_cast<std::size_t>(i)] = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    }
    family.emplace_back(std::move(v), std::move(t));
  }
  return family;
}

/// sin(2 pi k i / length), cos(2 pi k i / length) for k = 1..pairs, sampled at
/// i / (length - 1) on [0, 1]. Exact zeros become epsilon.
template <typename Scalar = double>
std::vector<TimeSeries<Scalar>> make_sincos_basis(Index pairs, Index length,
                                                  const Scalar& epsilon = Scalar(kDefaultEpsilon)) {
  using std::cos;
  using std::sin;
  if (pairs < 1 || length < 2) throw std::invalid_argument("sincos basis needs pairs >= 1, length >= 2");
  Timestamps t(static_cast<std::size_t>(length));
  for (Index i = 0; i < length; ++i)
    t[static_cast<std::size_t>(i)] = static_cast<double>(i) / static_cast<double>(length - 1);
  const Scalar two_pi = Scalar(2) * boost::math::constants::pi<Scalar>();
  std::vector<TimeSeries<Scalar>> family;
  for (Index k = 1; k <= pairs; ++k) {
    typename TimeSeries<Scalar>::Values s(1, length), c(1, length);
    for (Index i = 0; i < length; ++i) {
      const Scalar phase = two_pi * Scalar(k) * Scalar(i) / Scalar(length);
      s(0, i) = sin(phase);
      c(0, i) = cos(phase);
      if (s(0, i) == Scalar(0)) s(0, i) = epsilon;
      if (c(0, i) == Scalar(0)) c(0, i) = epsilon;
    }
    family.emplace_back(std::move(s), t);
    family.emplace_back(std::move(c), t);
  }
  return family;
}

}  // namespace eipvs

#endif  // EIPVS_ORTHOGONAL_HPP

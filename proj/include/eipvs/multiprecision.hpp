#ifndef EIPVS_MULTIPRECISION_HPP
#define EIPVS_MULTIPRECISION_HPP

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace eipvs {

/// 100 decimal digits. Needed where the elastic matrix is so ill-conditioned
/// that double arithmetic cannot orthogonalize (small nu on short time spans).
using HighPrecision = boost::multiprecision::cpp_bin_float_100;

}  // namespace eipvs

#endif  // EIPVS_MULTIPRECISION_HPP

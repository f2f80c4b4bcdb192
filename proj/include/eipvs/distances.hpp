#ifndef EIPVS_DISTANCES_HPP
#define EIPVS_DISTANCES_HPP

#include "eipvs/elastic_product.hpp"
#include "eipvs/series.hpp"

#include <Eigen/Core>

#include <span>
#include <string>

namespace eipvs {

/// Sum of squared coordinate differences of two series sampled at identical
/// timestamps. Throws if the timestamps differ.
double squared_euclidean_distance(const Series& a, const Series& b);
double euclidean_distance(const Series& a, const Series& b);

/// Unconstrained dynamic time warping with squared Euclidean local cost and
/// the symmetric (match / insert / delete) step pattern; returns the square
/// root of the accumulated cost.
double dtw_distance(const Series& a, const Series& b);

enum class DistanceKind { Euclidean, Dtw, Eip };

struct DistanceSpec {
  DistanceKind kind = DistanceKind::Eip;
  ElasticParams params = ElasticParams::eip(1.0);

  static DistanceSpec euclidean() { return {DistanceKind::Euclidean, ElasticParams::eip(0.0)}; }
  static DistanceSpec dtw() { return {DistanceKind::Dtw, ElasticParams::eip(0.0)}; }
  static DistanceSpec eip(double nu, TimeKernel kernel = TimeKernel::Gaussian) {
    return {DistanceKind::Eip, ElasticParams::eip(nu, kernel)};
  }
};

DistanceKind parse_distance_kind(const std::string& name);
std::string distance_kind_name(DistanceKind kind);

double distance(const DistanceSpec& spec, const Series& a, const Series& b);

/// True when every series is sampled at the same timestamps, which lets
/// eip distances go through an elastic index instead of the recursion.
bool share_sampling(std::span<const Series> a, std::span<const Series> b);

/// D[i][j] = distance(rows[i], cols[j]). Eip distances use the indexed
/// matrix form when all series share one sampling, else the recursion with
/// self-products computed once per series.
Eigen::MatrixXd distance_matrix(const DistanceSpec& spec, std::span<const Series> rows,
                                std::span<const Series> cols, unsigned threads = 1);

/// Symmetric variant over one collection; each unordered pair is computed once.
Eigen::MatrixXd distance_matrix(const DistanceSpec& spec, std::span<const Series> items, unsigned threads = 1);

}  // namespace eipvs

#endif  // EIPVS_DISTANCES_HPP

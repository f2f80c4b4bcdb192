#ifndef EIPVS_KERNELS_HPP
#define EIPVS_KERNELS_HPP

#include "eipvs/elastic_product.hpp"
#include "eipvs/series.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace eipvs {

enum class KernelKind {
  GaussianEip,       ///< exp(-d_eip^2 / (2 sigma^2))
  GaussianEuclid,    ///< exp(-d_ed^2 / (2 sigma^2)), aligned series only
  PolynomialEip,     ///< eip^p, p a positive integer
  ExpEip,            ///< exp(eip)
  ExpNegDistanceP,   ///< exp(-rate * d_eip^p), 0 < p <= 2
};

struct KernelSpec {
  KernelKind kind = KernelKind::GaussianEip;
  ElasticParams params = ElasticParams::eip(1.0);
  double sigma = 1.0;
  double degree = 1.0;  ///< polynomial degree, or distance exponent p
  double rate = 1.0;

  /// Throws std::invalid_argument on an inconsistent specification.
  void validate() const;
};

KernelKind parse_kernel_kind(const std::string& name);
std::string kernel_kind_name(KernelKind kind);

double kernel_eval(const KernelSpec& spec, const Series& a, const Series& b);

/// G[i][j] = k(x_i, x_j), evaluated once per unordered pair so that G is
/// exactly symmetric. Rows of the upper triangle are spread over `threads`.
Eigen::MatrixXd gram_matrix(const KernelSpec& spec, std::span<const Series> items, unsigned threads = 1);

/// [d_eip(x_i, x_j)^2].
Eigen::MatrixXd squared_distance_matrix(const ElasticParams& params, std::span<const Series> items,
                                        unsigned threads = 1);

/// -1/2 J D J with J the centering projector. PSD when D holds squared
/// distances of a Hilbert-space embedding.
Eigen::MatrixXd double_center(const Eigen::MatrixXd& squared_distances);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
/// Sweeps stop once the off-diagonal Frobenius norm drops below
/// 1e-12 times the Frobenius norm of the matrix.
struct JacobiResult {
  Eigen::VectorXd eigenvalues;
  int sweeps = 0;
  bool converged = false;
};

JacobiResult jacobi_eigenvalues(const Eigen::MatrixXd& symmetric, int max_sweeps = 100);

struct PsdReport {
  double min_eigenvalue = 0.0;
  double max_eigenvalue = 0.0;
  bool psd = false;
  int sweeps = 0;
};

/// PSD iff lambda_min >= -tol * max(1, lambda_max).
PsdReport check_psd(const Eigen::MatrixXd& matrix, double tol = 1e-8);

/// CSV with a header row of ids, then one row per item.
void write_gram_csv(std::ostream& out, std::span<const std::string> ids, const Eigen::MatrixXd& gram);

/// Precomputed-kernel text layout: "label 0:serial 1:k(x,x_1) ... m:k(x,x_m)",
/// serial numbers starting at 1.
void write_precomputed_kernel(std::ostream& out, std::span<const std::string> labels,
                              const Eigen::MatrixXd& gram);

}  // namespace eipvs

#endif  // EIPVS_KERNELS_HPP

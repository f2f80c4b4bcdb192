#include "eipvs/kernels.hpp"

#include "eipvs/distances.hpp"
#include "eipvs/format.hpp"
#include "eipvs/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace eipvs {

void KernelSpec::validate() const {
  if (!params.is_eip()) throw std::invalid_argument("kernels require eip parameters");
  check_params(params);
  switch (kind) {
    case KernelKind::GaussianEip:
    case KernelKind::GaussianEuclid:
      if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("gaussian kernel needs sigma > 0");
      break;
    case KernelKind::PolynomialEip:
      if (!(degree >= 1.0) || degree != std::floor(degree) || degree > 64.0)
        throw std::invalid_argument("polynomial kernel needs a positive integer degree");
      break;
    case KernelKind::ExpEip:
      break;
    case KernelKind::ExpNegDistanceP:
      if (!(degree > 0.0 && degree <= 2.0)) throw std::invalid_argument("distance exponent p must lie in (0, 2]");
      if (!(rate > 0.0) || !std::isfinite(rate)) throw std::invalid_argument("rate must be positive");
      break;
  }
}

KernelKind parse_kernel_kind(const std::string& name) {
  if (name == "gaussian_eip" || name == "gaussian") return KernelKind::GaussianEip;
  if (name == "gaussian_euclid") return KernelKind::GaussianEuclid;
  if (name == "polynomial_eip" || name == "polynomial") return KernelKind::PolynomialEip;
  if (name == "exp_eip") return KernelKind::ExpEip;
  if (name == "exp_neg_distance_p") return KernelKind::ExpNegDistanceP;
  throw std::invalid_argument("unknown kernel '" + name + "'");
}

std::string kernel_kind_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::GaussianEip: return "gaussian_eip";
    case KernelKind::GaussianEuclid: return "gaussian_euclid";
    case KernelKind::PolynomialEip: return "polynomial_eip";
    case KernelKind::ExpEip: return "exp_eip";
    case KernelKind::ExpNegDistanceP: return "exp_neg_distance_p";
  }
  return "?";
}

namespace {

double squared_from_products(double aa, double bb, double ab) {
  const double d = distance_from_products(aa, bb, ab);
  return d * d;
}

// Kernel value from the three products <a,a>, <b,b>, <a,b>. Every formula
// is symmetric in (aa, bb), so k(a, b) == k(b, a) exactly.
double from_products(const KernelSpec& spec, double aa, double bb, double ab) {
  switch (spec.kind) {
    case KernelKind::GaussianEip:
      return std::exp(-squared_from_products(aa, bb, ab) / (2.0 * spec.sigma * spec.sigma));
    case KernelKind::PolynomialEip:
      return std::pow(ab, static_cast<int>(spec.degree));
    case KernelKind::ExpEip:
      return std::exp(ab);
    case KernelKind::ExpNegDistanceP:
      return std::exp(-spec.rate * std::pow(distance_from_products(aa, bb, ab), spec.degree));
    case KernelKind::GaussianEuclid:
      break;
  }
  throw std::logic_error("kernel has no product form");
}

}  // namespace

double kernel_eval(const KernelSpec& spec, const Series& a, const Series& b) {
  spec.validate();
  if (spec.kind == KernelKind::GaussianEuclid)
    return std::exp(-squared_euclidean_distance(a, b) / (2.0 * spec.sigma * spec.sigma));
  return from_products(spec, eip(a, a, spec.params), eip(b, b, spec.params), eip(a, b, spec.params));
}

Eigen::MatrixXd gram_matrix(const KernelSpec& spec, std::span<const Series> items, unsigned threads) {
  spec.validate();
  const auto m = static_cast<Index>(items.size());
  Eigen::MatrixXd g(m, m);
  std::vector<double> self(items.size(), 0.0);
  if (spec.kind != KernelKind::GaussianEuclid)
    parallel_for(items.size(), threads, [&](std::size_t i) { self[i] = eip(items[i], items[i], spec.params); });

  parallel_for(items.size(), threads, [&](std::size_t i) {
    for (std::size_t j = i; j < items.size(); ++j) {
      double k;
      if (spec.kind == KernelKind::GaussianEuclid)
        k = std::exp(-squared_euclidean_distance(items[i], items[j]) / (2.0 * spec.sigma * spec.sigma));
      else
        k = from_products(spec, self[i], self[j], i == j ? self[i] : eip(items[i], items[j], spec.params));
      g(static_cast<Index>(i), static_cast<Index>(j)) = k;
      g(static_cast<Index>(j), static_cast<Index>(i)) = k;
    }
  });
  return g;
}

Eigen::MatrixXd squared_distance_matrix(const ElasticParams& params, std::span<const Series> items,
                                        unsigned threads) {
  const Eigen::MatrixXd d = distance_matrix(DistanceSpec{DistanceKind::Eip, params}, items, threads);
  return d.cwiseProduct(d);
}

Eigen::MatrixXd double_center(const Eigen::MatrixXd& squared_distances) {
  const Index m = squared_distances.rows();
  if (squared_distances.cols() != m) throw std::invalid_argument("double_center needs a square matrix");
  if (m == 0) return squared_distances;
  const Eigen::VectorXd row_mean = squared_distances.rowwise().mean();
  const Eigen::RowVectorXd col_mean = squared_distances.colwise().mean();
  const double grand = squared_distances.mean();
  Eigen::MatrixXd b(m, m);
  for (Index j = 0; j < m; ++j)
    for (Index i = 0; i < m; ++i)
      b(i, j) = -0.5 * (squared_distances(i, j) - row_mean[i] - col_mean[j] + grand);
  return 0.5 * (b + b.transpose());
}

JacobiResult jacobi_eigenvalues(const Eigen::MatrixXd& symmetric, int max_sweeps) {
  const Index n = symmetric.rows();
  if (symmetric.cols() != n) throw std::invalid_argument("jacobi_eigenvalues needs a square matrix");
  Eigen::MatrixXd a = 0.5 * (symmetric + symmetric.transpose());
  const double threshold = 1e-12 * a.norm();

  auto off_norm = [&] {
    double s = 0.0;
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  JacobiResult result;
  while (true) {
    if (off_norm() <= threshold) {
      result.converged = true;
      break;
    }
    if (result.sweeps >= max_sweeps) break;
    ++result.sweeps;
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150)
          t = 0.5 / theta;
        else
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }
  result.eigenvalues = a.diagonal();
  std::sort(result.eigenvalues.begin(), result.eigenvalues.end());
  return result;
}

PsdReport check_psd(const Eigen::MatrixXd& matrix, double tol) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0)
    throw std::invalid_argument("check_psd needs a non-empty square matrix");
  const JacobiResult jr = jacobi_eigenvalues(matrix);
  if (!jr.converged) throw std::runtime_error("check_psd: Jacobi iteration did not converge");
  PsdReport report;
  report.min_eigenvalue = jr.eigenvalues[0];
  report.max_eigenvalue = jr.eigenvalues[jr.eigenvalues.size() - 1];
  report.psd = report.min_eigenvalue >= -tol * std::max(1.0, report.max_eigenvalue);
  report.sweeps = jr.sweeps;
  return report;
}

void write_gram_csv(std::ostream& out, std::span<const std::string> ids, const Eigen::MatrixXd& gram) {
  if (static_cast<Index>(ids.size()) != gram.rows()) throw std::invalid_argument("gram csv: id count mismatch");
  out << "id";
  for (const auto& id : ids) out << ',' << id;
  out << '\n';
  for (Index i = 0; i < gram.rows(); ++i) {
    out << ids[static_cast<std::size_t>(i)];
    for (Index j = 0; j < gram.cols(); ++j) out << ',' << format_double(gram(i, j));
    out << '\n';
  }
}

void write_precomputed_kernel(std::ostream& out, std::span<const std::string> labels, const Eigen::MatrixXd& gram) {
  if (static_cast<Index>(labels.size()) != gram.rows())
    throw std::invalid_argument("precomputed kernel: label count mismatch");
  for (Index i = 0; i < gram.rows(); ++i) {
    out << labels[static_cast<std::size_t>(i)] << " 0:" << (i + 1);
    for (Index j = 0; j < gram.cols(); ++j) out << ' ' << (j + 1) << ':' << format_double(gram(i, j));
    out << '\n';
  }
}

}  // namespace eipvs

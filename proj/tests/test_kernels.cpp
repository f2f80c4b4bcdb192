#include "eipvs/kernels.hpp"
#include "test_support.hpp"

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

namespace eipvs {
namespace {

using testing::Rng;

Series uni(std::initializer_list<std::pair<double, double>> samples) { return Series::from_samples(samples); }

std::vector<Series> random_family(Rng& rng, int m, double scale = 1.0) {
  std::vector<Series> out;
  for (int i = 0; i < m; ++i) {
    Series s = testing::random_lattice_series(rng, 1 + i % 9, 1);
    out.push_back(eipvs::scale(scale, s));
  }
  return out;
}

TEST(KernelEval, GaussianOfItselfIsOne) {
  Rng rng(51);
  KernelSpec spec;
  for (double sigma : {0.1, 1.0, 7.0}) {
    spec.sigma = sigma;
    const Series a = testing::random_lattice_series(rng, 8, 2);
    EXPECT_EQ(kernel_eval(spec, a, a), 1.0);
  }
}

TEST(KernelEval, GaussianOfUnitDistance) {
  KernelSpec spec;
  spec.params = ElasticParams::eip(3.0);
  EXPECT_DOUBLE_EQ(kernel_eval(spec, uni({{1, 0}}), uni({{2, 0}})), std::exp(-0.5));
}

TEST(KernelEval, PolynomialDegreeOneIsEip) {
  Rng rng(52);
  KernelSpec spec;
  spec.kind = KernelKind::PolynomialEip;
  spec.params = ElasticParams::eip(0.4);
  const Series a = testing::random_lattice_series(rng, 5, 1);
  const Series b = testing::random_lattice_series(rng, 7, 1);
  EXPECT_EQ(kernel_eval(spec, a, b), eip(a, b, spec.params));
  spec.degree = 3;
  EXPECT_DOUBLE_EQ(kernel_eval(spec, a, b), std::pow(eip(a, b, spec.params), 3));
}

TEST(KernelEval, OtherForms) {
  KernelSpec spec;
  spec.params = ElasticParams::eip(1.0);
  const Series a = uni({{1, 0}}), b = uni({{3, 0}});
  spec.kind = KernelKind::ExpEip;
  EXPECT_DOUBLE_EQ(kernel_eval(spec, a, b), std::exp(3.0));
  spec.kind = KernelKind::ExpNegDistanceP;
  spec.degree = 1.5;
  spec.rate = 0.5;
  EXPECT_DOUBLE_EQ(kernel_eval(spec, a, b), std::exp(-0.5 * std::pow(2.0, 1.5)));
  spec.kind = KernelKind::GaussianEuclid;
  spec.sigma = 2.0;
  EXPECT_DOUBLE_EQ(kernel_eval(spec, a, b), std::exp(-4.0 / 8.0));
}

TEST(KernelEval, ExactlySymmetric) {
  Rng rng(53);
  for (KernelKind kind : {KernelKind::GaussianEip, KernelKind::PolynomialEip, KernelKind::ExpEip,
                          KernelKind::ExpNegDistanceP}) {
    KernelSpec spec;
    spec.kind = kind;
    spec.degree = kind == KernelKind::PolynomialEip ? 2 : 1;
    spec.params = ElasticParams::eip(0.3);
    for (int trial = 0; trial < 50; ++trial) {
      const Series a = testing::random_lattice_series(rng, 1 + trial % 6, 1);
      const Series b = testing::random_lattice_series(rng, 1 + trial % 4, 1);
      EXPECT_EQ(kernel_eval(spec, a, b), kernel_eval(spec, b, a));
    }
  }
}

TEST(KernelSpec, Validation) {
  KernelSpec spec;
  spec.sigma = 0;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec = {};
  spec.kind = KernelKind::PolynomialEip;
  spec.degree = 1.5;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec.kind = KernelKind::ExpNegDistanceP;
  spec.degree = 2.5;
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec.degree = 2.0;
  EXPECT_NO_THROW(spec.validate());
  spec.params = ElasticParams::general(1, 1, 0, 1);
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  EXPECT_EQ(parse_kernel_kind(kernel_kind_name(KernelKind::ExpNegDistanceP)), KernelKind::ExpNegDistanceP);
  EXPECT_THROW(parse_kernel_kind("rbf"), std::invalid_argument);
}

TEST(GramMatrix, SingleItemAndUnitDiagonal) {
  Rng rng(54);
  KernelSpec spec;
  const std::vector<Series> one{testing::random_lattice_series(rng, 4, 1)};
  const Eigen::MatrixXd g1 = gram_matrix(spec, one);
  ASSERT_EQ(g1.rows(), 1);
  EXPECT_EQ(g1(0, 0), 1.0);
  const auto family = random_family(rng, 12);
  const Eigen::MatrixXd g = gram_matrix(spec, family, 3);
  EXPECT_EQ(g.diagonal(), Eigen::VectorXd::Ones(12));
  EXPECT_EQ(g, g.transpose());
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) EXPECT_EQ(g(i, j), kernel_eval(spec, family[i], family[j]));
}

TEST(GramMatrix, RandomFamiliesArePsd) {
  Rng rng(55);
  const auto family = random_family(rng, 10, 0.5);
  for (KernelKind kind : {KernelKind::GaussianEip, KernelKind::PolynomialEip, KernelKind::ExpEip,
                          KernelKind::ExpNegDistanceP}) {
    KernelSpec spec;
    spec.kind = kind;
    spec.params = ElasticParams::eip(0.5);
    spec.degree = kind == KernelKind::PolynomialEip ? 2 : 1;
    const Eigen::MatrixXd g = gram_matrix(spec, family);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> oracle(g);
    EXPECT_GE(oracle.eigenvalues().minCoeff(), -1e-8 * oracle.eigenvalues().maxCoeff()) << kernel_kind_name(kind);
    EXPECT_TRUE(check_psd(g).psd) << kernel_kind_name(kind);
  }
}

TEST(Jacobi, MatchesSelfAdjointSolver) {
  Rng rng(56);
  std::normal_distribution<double> normal;
  for (int n : {1, 2, 5, 17, 40}) {
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = normal(rng);
    const JacobiResult r = jacobi_eigenvalues(m);
    EXPECT_TRUE(r.converged);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> oracle(m);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(r.eigenvalues[i], oracle.eigenvalues()[i], 1e-10 * std::max(1.0, m.norm()));
  }
}

TEST(Jacobi, ZeroMatrixConvergesImmediately) {
  const JacobiResult r = jacobi_eigenvalues(Eigen::MatrixXd::Zero(3, 3));
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.sweeps, 0);
}

TEST(CheckPsd, IdentityAndIndefinite) {
  const PsdReport id = check_psd(Eigen::MatrixXd::Identity(4, 4));
  EXPECT_EQ(id.min_eigenvalue, 1.0);
  EXPECT_TRUE(id.psd);
  Eigen::Matrix2d m;
  m << 1, 2, 2, 1;
  const PsdReport r = check_psd(m);
  EXPECT_NEAR(r.min_eigenvalue, -1.0, 1e-14);
  EXPECT_NEAR(r.max_eigenvalue, 3.0, 1e-14);
  EXPECT_FALSE(r.psd);
}

TEST(DoubleCenter, SquaredEipDistancesAreNegativeType) {
  Rng rng(57);
  const auto family = random_family(rng, 20);
  const auto params = ElasticParams::eip(0.3);
  const Eigen::MatrixXd d2 = squared_distance_matrix(params, family);
  const Eigen::MatrixXd b = double_center(d2);
  EXPECT_TRUE(check_psd(b).psd);
  // -1/2 J D J recovers the centered Gram matrix of eip.
  Eigen::MatrixXd g(20, 20);
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) g(i, j) = eip(family[i], family[j], params);
  const Eigen::MatrixXd j = Eigen::MatrixXd::Identity(20, 20) - Eigen::MatrixXd::Constant(20, 20, 1.0 / 20);
  EXPECT_LT((b - j * g * j).norm(), 1e-8 * std::max(1.0, g.norm()));
}

TEST(DoubleCenter, DtwIsNotRequiredToPass) {
  // A non-Euclidean dissimilarity: the centered matrix has a negative eigenvalue.
  Eigen::Matrix3d d2;
  d2 << 0, 1, 9,
        1, 0, 1,
        9, 1, 0;
  EXPECT_FALSE(check_psd(double_center(d2)).psd);
}

TEST(GramExport, CsvAndPrecomputedLayouts) {
  Eigen::Matrix2d g;
  g << 1, 0.5, 0.5, 1;
  const std::vector<std::string> ids{"x", "y"};
  std::ostringstream csv;
  write_gram_csv(csv, ids, g);
  EXPECT_EQ(csv.str(), "id,x,y\nx,1,0.5\ny,0.5,1\n");
  std::ostringstream pre;
  write_precomputed_kernel(pre, std::vector<std::string>{"1", "-1"}, g);
  EXPECT_EQ(pre.str(), "1 0:1 1:1 2:0.5\n-1 0:2 1:0.5 2:1\n");
}

}  // namespace
}  // namespace eipvs

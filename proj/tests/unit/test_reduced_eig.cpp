#include <gtest/gtest.h>

#include <random>

#include "feast/reduced_eig.hpp"
#include "test_support.hpp"

using namespace feast;
using namespace feast::testing;

namespace {

template <typename F>
double residual(const Matrix<F>& a, const Matrix<F>& b, const ReducedEigen<F>& r) {
  const int n = a.rows();
  Matrix<F> av(n, n), bv(n, n);
  gemm<F>(a.view(), r.vectors.view(), av.view());
  gemm<F>(b.view(), r.vectors.view(), bv.view());
  double worst = 0;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      worst = std::max(worst, double(std::abs(av(i, j) - F(r.values[j]) * bv(i, j))));
  return worst;
}

}  // namespace

TEST(SpdFactor, Identity) {
  const auto f = spd_factor<double>(Matrix<double>::identity(3).view());
  ASSERT_TRUE(f.ok());
  EXPECT_EQ(f.lower, Matrix<double>::identity(3));
}

TEST(SpdFactor, NegativePivot) {
  Matrix<double> b(2, 2);
  b(0, 0) = 1;
  b(1, 1) = -1;
  const auto f = spd_factor<double>(b.view());
  EXPECT_FALSE(f.ok());
  EXPECT_EQ(f.failed_pivot, 2);
}

TEST(SpdFactor, GramReconstruction) {
  std::mt19937_64 rng(11);
  Matrix<double> g(10, 10);
  for (int j = 0; j < 10; ++j)
    for (int i = 0; i < 10; ++i) g(i, j) = random_scalar<double>(rng);
  Matrix<double> b(10, 10);
  gemm_adjoint<double>(g.view(), g.view(), b.view());
  for (int i = 0; i < 10; ++i) b(i, i) += 1e-6;
  const auto f = spd_factor<double>(b.view());
  ASSERT_TRUE(f.ok());
  const auto l = to_eigen(f.lower);
  const double err = (l * l.transpose() - to_eigen(b)).cwiseAbs().maxCoeff();
  EXPECT_LE(err, 1e-12);
}

TEST(GeneralizedEig, Diagonal) {
  Matrix<double> a(2, 2);
  a(0, 0) = 3;
  a(1, 1) = 1;
  const auto r = generalized_eig<double>(a.view(), Matrix<double>::identity(2).view());
  ASSERT_TRUE(r.ok());
  EXPECT_DOUBLE_EQ(r.values[0], 1);
  EXPECT_DOUBLE_EQ(r.values[1], 3);
  EXPECT_NEAR(std::abs(r.vectors(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(r.vectors(0, 1)), 1.0, 1e-15);
}

TEST(GeneralizedEig, HelloWorldMatrix) {
  Matrix<double> a(2, 2);
  a(0, 0) = a(1, 1) = 2;
  a(0, 1) = a(1, 0) = -1;
  const auto r = generalized_eig<double>(a.view(), Matrix<double>::identity(2).view());
  ASSERT_TRUE(r.ok());
  EXPECT_NEAR(r.values[0], 1, 1e-15);
  EXPECT_NEAR(r.values[1], 3, 1e-15);
  const double h = std::sqrt(0.5);
  EXPECT_NEAR(std::abs(r.vectors(0, 0)), h, 1e-15);
  EXPECT_NEAR(r.vectors(0, 0), r.vectors(1, 0), 1e-15);
  EXPECT_NEAR(r.vectors(0, 1), -r.vectors(1, 1), 1e-15);
}

TEST(GeneralizedEig, OneByOneShortCircuit) {
  Matrix<double> a(1, 1, 6.0), b(1, 1, 2.0);
  const auto r = generalized_eig<double>(a.view(), b.view());
  ASSERT_TRUE(r.ok());
  EXPECT_DOUBLE_EQ(r.values[0], 3.0);
  EXPECT_NEAR(r.vectors(0, 0) * r.vectors(0, 0) * 2.0, 1.0, 1e-15);
}

TEST(GeneralizedEig, NotPositiveDefinite) {
  Matrix<double> a = Matrix<double>::identity(3);
  Matrix<double> b = Matrix<double>::identity(3);
  b(2, 2) = -1;
  const auto r = generalized_eig<double>(a.view(), b.view());
  EXPECT_EQ(r.status, ReducedStatus::not_positive_definite);
  EXPECT_EQ(r.failed_pivot, 3);
}

template <typename F>
class ReducedOracle : public ::testing::Test {};
using ReducedTypes = ::testing::Types<double, std::complex<double>>;
TYPED_TEST_SUITE(ReducedOracle, ReducedTypes);

TYPED_TEST(ReducedOracle, RandomPencilsMatchEigen) {
  using F = TypeParam;
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 24);
    const auto a = random_hermitian<F>(n, rng);
    const auto b = random_spd<F>(n, rng);
    const auto r = generalized_eig<F>(a.view(), b.view());
    ASSERT_TRUE(r.ok());
    ASSERT_EQ(static_cast<int>(r.values.size()), n);
    const auto expect = oracle_spectrum(a, &b);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(r.values[i], expect[i], 1e-10 * (1 + std::abs(expect[i])));
    EXPECT_LE(residual(a, b, r), 1e-10);
    // B-orthonormal columns.
    Matrix<F> bv(n, n), g(n, n);
    gemm<F>(b.view(), r.vectors.view(), bv.view());
    gemm_adjoint<F>(r.vectors.view(), bv.view(), g.view());
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) EXPECT_NEAR(std::abs(g(i, j) - F(i == j ? 1 : 0)), 0.0, 1e-10);
  }
}

TYPED_TEST(ReducedOracle, StandardMatchesEigen) {
  using F = TypeParam;
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 30);
    const auto a = random_hermitian<F>(n, rng);
    const auto r = hermitian_eig<F>(a.view());
    ASSERT_TRUE(r.ok());
    const auto expect = oracle_spectrum(a);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(r.values[i], expect[i], 1e-12);
    EXPECT_LE(residual(a, Matrix<F>::identity(n), r), 1e-12);
  }
}

TEST(GeneralizedEig, ReductionRoundTrip) {
  std::mt19937_64 rng(5);
  const int n = 8;
  const auto a = random_hermitian<double>(n, rng);
  const auto b = random_spd<double>(n, rng);
  const auto r = generalized_eig<double>(a.view(), b.view());
  ASSERT_TRUE(r.ok());
  const auto l = to_eigen(spd_factor<double>(b.view()).lower);
  const Eigen::MatrixXd linv = l.inverse();
  const Eigen::MatrixXd c = linv * to_eigen(a) * linv.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
  for (int i = 0; i < n; ++i) EXPECT_NEAR(r.values[i], es.eigenvalues()(i), 1e-10);
}

TEST(HermitianEig, RepeatedEigenvalues) {
  const auto r = hermitian_eig<double>(Matrix<double>::identity(5).view());
  ASSERT_TRUE(r.ok());
  for (double v : r.values) EXPECT_DOUBLE_EQ(v, 1.0);
}

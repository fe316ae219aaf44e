#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "eigen_oracle.hpp"
#include "ginv/linalg.hpp"
#include "ginv/random.hpp"

namespace {

using namespace ginv;
using ginv::test::to_eigen;

TEST(NumericalRank, Examples) {
  EXPECT_EQ(numerical_rank(ComplexMatrix::identity(3)), 3u);
  EXPECT_EQ(numerical_rank(ComplexMatrix(2, 2)), 0u);
  const std::vector<cplx> d = {3.0, 1e-14};
  EXPECT_EQ(numerical_rank(ComplexMatrix::diagonal(d)), 1u);
}

TEST(OperatorNorm, Examples) {
  EXPECT_DOUBLE_EQ(operator_norm(ComplexMatrix::identity(4)), 1.0);
  const std::vector<cplx> d = {2.0, -3.0};
  EXPECT_NEAR(operator_norm(ComplexMatrix::diagonal(d)), 3.0, 1e-15);
  ComplexMatrix n(2, 2);
  n(0, 1) = 1.0;
  EXPECT_NEAR(operator_norm(n), 1.0, 1e-15);
}

TEST(Svd, SingularValuesMatchEigen) {
  auto rng = sampling::make_engine(11);
  for (std::size_t rows = 1; rows <= 7; ++rows)
    for (std::size_t cols = 1; cols <= 7; ++cols) {
      const ComplexMatrix m = sampling::gaussian_matrix(rng, rows, cols);
      const auto mine = svd(m);
      Eigen::JacobiSVD<Eigen::MatrixXcd> ref(to_eigen(m));
      const auto& sv = ref.singularValues();
      ASSERT_EQ(mine.sigma.size(), static_cast<std::size_t>(sv.size()));
      for (Eigen::Index i = 0; i < sv.size(); ++i) EXPECT_NEAR(mine.sigma[i], sv(i), 1e-12 * sv(0));
    }
}

TEST(Svd, FactorsReconstructTheMatrix) {
  auto rng = sampling::make_engine(12);
  for (std::size_t n = 1; n <= 8; ++n) {
    const ComplexMatrix m = sampling::gaussian_matrix(rng, n, n);
    const auto f = svd(m);
    ComplexMatrix s(f.sigma.size(), f.sigma.size());
    for (std::size_t i = 0; i < f.sigma.size(); ++i) s(i, i) = f.sigma[i];
    EXPECT_LE(max_abs(f.u * s * f.v.adjoint() - m), 1e-12 * (1 + max_abs(m)));
    EXPECT_LE(max_abs(f.u.adjoint() * f.u - ComplexMatrix::identity(n)), 1e-12);
    EXPECT_TRUE(std::is_sorted(f.sigma.rbegin(), f.sigma.rend()));
  }
}

TEST(Svd, RealRankOfProductsMatchesEigen) {
  auto rng = sampling::make_engine(13);
  for (std::size_t r = 0; r <= 5; ++r) {
    RealMatrix a(6, r), b(r, 7);
    for (double& v : a.entries()) v = sampling::uniform(rng, -1, 1);
    for (double& v : b.entries()) v = sampling::uniform(rng, -1, 1);
    const RealMatrix m = r == 0 ? RealMatrix(6, 7) : a * b;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(to_eigen(m));
    lu.setThreshold(1e-10);
    EXPECT_EQ(numerical_rank(m), static_cast<std::size_t>(lu.rank()));
    EXPECT_EQ(numerical_rank(m), r);
  }
}

TEST(FiniteDifferences, Examples) {
  const std::vector<double> x = {0.3, -1.0, 2.0};
  const RealMatrix id = finite_diff_jacobian([](std::span<const double> v) { return RealVector(v.begin(), v.end()); }, x);
  EXPECT_LE(max_abs(id - RealMatrix::identity(3)), 1e-8);

  const RealMatrix L(2, 3, {1, 2, 3, -1, 0, 4});
  const RealMatrix jl = finite_diff_jacobian([&](std::span<const double> v) { return matvec(L, v); }, x);
  EXPECT_LE(max_abs(jl - L), 1e-8);

  const std::vector<double> three = {3.0};
  const RealMatrix sq = finite_diff_jacobian([](std::span<const double> v) { return RealVector{v[0] * v[0]}; }, three);
  EXPECT_NEAR(sq(0, 0), 6.0, 1e-8);
}

TEST(FiniteDifferences, NonFiniteValuesAreReported) {
  const std::vector<double> x = {0.0};
  EXPECT_THROW(finite_diff_jacobian([](std::span<const double> v) { return RealVector{1.0 / (v[0] - v[0])}; }, x),
               evaluation_error);
}

TEST(JointKernel, Examples) {
  const RealMatrix id = RealMatrix::identity(4);
  EXPECT_EQ(joint_kernel_dim(std::span(&id, 1)), 0u);
  const RealMatrix zeros[] = {RealMatrix(3, 5), RealMatrix(2, 5)};
  EXPECT_EQ(joint_kernel_dim(zeros), 5u);
  const RealMatrix coords[] = {RealMatrix(1, 2, {1, 0}), RealMatrix(1, 2, {0, 1})};
  EXPECT_EQ(joint_kernel_dim(coords), 0u);
}

TEST(KernelBasis, MatchesEigenKernelAndIsOrthonormal) {
  auto rng = sampling::make_engine(14);
  for (std::size_t r = 0; r <= 6; ++r) {
    RealMatrix a(4 + r, r), b(r, 8);
    for (double& v : a.entries()) v = sampling::uniform(rng, -1, 1);
    for (double& v : b.entries()) v = sampling::uniform(rng, -1, 1);
    const RealMatrix m = r == 0 ? RealMatrix(4, 8) : a * b;
    const RealMatrix k = kernel_basis(m);
    EXPECT_EQ(k.cols(), test::kernel_dim(to_eigen(m)));
    if (k.cols() == 0) continue;
    EXPECT_LE(max_abs(m * k), 1e-12 * (1 + max_abs(m)));
    EXPECT_LE(max_abs(k.adjoint() * k - RealMatrix::identity(k.cols())), 1e-12);
  }
}

TEST(HermitianEigen, MatchesEigenSolver) {
  auto rng = sampling::make_engine(15);
  for (std::size_t n = 1; n <= 8; ++n) {
    const ComplexMatrix g = sampling::gaussian_matrix(rng, n, n);
    const ComplexMatrix h = g + g.adjoint();
    const eigen_result mine = hermitian_eigen(h);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(to_eigen(h));
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(mine.values[i], ref.eigenvalues()(i), 1e-12 * (1 + max_abs(h)));
    const ComplexMatrix back = hermitian_function(mine, [](double x) { return cplx(x); });
    EXPECT_LE(max_abs(back - h), 1e-12 * (1 + max_abs(h)));
  }
}

TEST(Orthonormalize, CompletesDependentColumns) {
  ComplexMatrix m(3, 3);
  m(0, 0) = 1.0;
  m(0, 1) = 2.0;  // parallel to the first column
  m(2, 2) = 1.0;
  const ComplexMatrix q = orthonormalize_columns(m);
  EXPECT_LE(max_abs(q.adjoint() * q - ComplexMatrix::identity(3)), 1e-14);
}

TEST(RealInverse, InvertsAndRejectsSingular) {
  const RealMatrix a(2, 2, {2, 1, 1, 1});
  EXPECT_LE(max_abs(real_inverse(a) * a - RealMatrix::identity(2)), 1e-14);
  EXPECT_THROW(real_inverse(RealMatrix(2, 2, {1, 2, 2, 4})), precondition_error);
}

}  // namespace

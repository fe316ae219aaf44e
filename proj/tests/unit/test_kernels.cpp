#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ginv/kernels.hpp"

namespace {

using ginv::kernels::cplx;
using ginv::kernels::kernel_table;

std::vector<double> reals(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

std::vector<cplx> complexes(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> d;
  std::vector<cplx> v(n);
  for (cplx& x : v) x = {d(rng), d(rng)};
  return v;
}

class KernelEquivalence : public ::testing::Test {
 protected:
  void SetUp() override {
    simd = ginv::kernels::avx2_table();
    if (simd == nullptr) GTEST_SKIP() << "AVX2 kernels unavailable on this machine";
  }
  const kernel_table& ref = ginv::kernels::scalar_table();
  const kernel_table* simd = nullptr;
};

TEST_F(KernelEquivalence, RealGemmIsBitIdentical) {
  std::mt19937_64 rng(1);
  for (std::size_t m = 1; m <= 9; ++m)
    for (std::size_t k = 1; k <= 9; k += 2)
      for (std::size_t n = 1; n <= 11; n += 3) {
        const auto a = reals(rng, m * k), b = reals(rng, k * n);
        std::vector<double> c1(m * n), c2(m * n);
        ref.dgemm(m, k, n, a.data(), b.data(), c1.data());
        simd->dgemm(m, k, n, a.data(), b.data(), c2.data());
        ASSERT_EQ(c1, c2) << m << "x" << k << "x" << n;
      }
}

TEST_F(KernelEquivalence, ComplexGemmIsBitIdentical) {
  std::mt19937_64 rng(2);
  for (std::size_t m = 1; m <= 9; ++m)
    for (std::size_t k = 1; k <= 9; k += 2)
      for (std::size_t n = 1; n <= 11; n += 3) {
        const auto a = complexes(rng, m * k), b = complexes(rng, k * n);
        std::vector<cplx> c1(m * n), c2(m * n);
        ref.zgemm(m, k, n, a.data(), b.data(), c1.data());
        simd->zgemm(m, k, n, a.data(), b.data(), c2.data());
        ASSERT_EQ(c1, c2) << m << "x" << k << "x" << n;
      }
}

TEST_F(KernelEquivalence, RotationsAreBitIdentical) {
  std::mt19937_64 rng(3);
  for (std::size_t n = 1; n <= 17; ++n) {
    auto x1 = complexes(rng, n), y1 = complexes(rng, n);
    auto x2 = x1, y2 = y1;
    const cplx phase = std::polar(1.0, 0.7);
    ref.zrot(n, x1.data(), y1.data(), 0.8, 0.6, phase);
    simd->zrot(n, x2.data(), y2.data(), 0.8, 0.6, phase);
    ASSERT_EQ(x1, x2);
    ASSERT_EQ(y1, y2);

    auto u1 = reals(rng, n), v1 = reals(rng, n);
    auto u2 = u1, v2 = v1;
    ref.drot(n, u1.data(), v1.data(), 0.6, 0.8, -1.0);
    simd->drot(n, u2.data(), v2.data(), 0.6, 0.8, -1.0);
    ASSERT_EQ(u1, u2);
    ASSERT_EQ(v1, v2);
  }
}

// Reductions reassociate; they agree to rounding.
TEST_F(KernelEquivalence, ReductionsAgreeToRounding) {
  std::mt19937_64 rng(4);
  for (std::size_t n = 1; n <= 40; ++n) {
    const auto x = complexes(rng, n), y = complexes(rng, n);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale += std::abs(x[i]) * std::abs(y[i]);
    EXPECT_LE(std::abs(ref.zdotc(n, x.data(), y.data()) - simd->zdotc(n, x.data(), y.data())), 1e-14 * scale);
    EXPECT_NEAR(ref.znrm2sq(n, x.data()), simd->znrm2sq(n, x.data()), 1e-14 * ref.znrm2sq(n, x.data()));

    const auto a = reals(rng, n), b = reals(rng, n);
    double rscale = 0.0;
    for (std::size_t i = 0; i < n; ++i) rscale += std::abs(a[i] * b[i]);
    EXPECT_NEAR(ref.ddotc(n, a.data(), b.data()), simd->ddotc(n, a.data(), b.data()), 1e-14 * rscale);
    EXPECT_NEAR(ref.dnrm2sq(n, a.data()), simd->dnrm2sq(n, a.data()), 1e-14 * ref.dnrm2sq(n, a.data()));
  }
}

TEST(KernelDispatch, ActiveTableIsOneOfTheVariants) {
  const kernel_table& t = ginv::kernels::active();
  EXPECT_TRUE(&t == &ginv::kernels::scalar_table() || &t == ginv::kernels::avx2_table());
}

TEST(KernelReference, ComplexProductMatchesHandComputation) {
  const cplx a[] = {{1, 2}, {3, -1}};
  const cplx b[] = {{0, 1}, {2, 0}};
  cplx c[1];
  ginv::kernels::scalar_table().zgemm(1, 2, 1, a, b, c);
  // (1+2i)i + (3-i)2 = -2 + i + 6 - 2i
  EXPECT_EQ(c[0], cplx(4, -1));
}

}  // namespace

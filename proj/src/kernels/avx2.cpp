// AVX2 variants of the dense kernels. This translation unit is compiled with
// -mavx2 -mfma; nothing in it may run before the dispatcher has checked the
// CPU. FMA is deliberately not used in gemm/rot so that results stay
// bit-identical to the scalar reference.

#include <immintrin.h>

#include "ginv/kernels.hpp"

namespace ginv::kernels {
namespace {

inline double* dp(cplx* p) { return reinterpret_cast<double*>(p); }
inline const double* dp(const cplx* p) { return reinterpret_cast<const double*>(p); }

// [ar*br - ai*bi, ar*bi + ai*br] for two packed complex numbers of b.
inline __m256d cmul_bcast(__m256d are, __m256d aim, __m256d b) {
  const __m256d bswap = _mm256_permute_pd(b, 0b0101);
  return _mm256_addsub_pd(_mm256_mul_pd(are, b), _mm256_mul_pd(aim, bswap));
}

inline cplx cmul(cplx a, cplx b) {
  const double ar = a.real(), ai = a.imag(), br = b.real(), bi = b.imag();
  return {ar * br - ai * bi, ar * bi + ai * br};
}

void zgemm_avx2(std::size_t m, std::size_t k, std::size_t n, const cplx* a, const cplx* b, cplx* c) {
  for (std::size_t i = 0; i < m * n; ++i) c[i] = cplx{};
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * n;
    for (std::size_t l = 0; l < k; ++l) {
      const cplx aik = a[i * k + l];
      const cplx* brow = b + l * n;
      const __m256d are = _mm256_set1_pd(aik.real());
      const __m256d aim = _mm256_set1_pd(aik.imag());
      std::size_t j = 0;
      for (; j + 2 <= n; j += 2) {
        const __m256d bv = _mm256_loadu_pd(dp(brow + j));
        const __m256d cv = _mm256_loadu_pd(dp(crow + j));
        _mm256_storeu_pd(dp(crow + j), _mm256_add_pd(cv, cmul_bcast(are, aim, bv)));
      }
      for (; j < n; ++j) crow[j] += cmul(aik, brow[j]);
    }
  }
}

void dgemm_avx2(std::size_t m, std::size_t k, std::size_t n, const double* a, const double* b, double* c) {
  for (std::size_t i = 0; i < m * n; ++i) c[i] = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    double* crow = c + i * n;
    for (std::size_t l = 0; l < k; ++l) {
      const double aik = a[i * k + l];
      const double* brow = b + l * n;
      const __m256d av = _mm256_set1_pd(aik);
      std::size_t j = 0;
      for (; j + 4 <= n; j += 4) {
        const __m256d prod = _mm256_mul_pd(av, _mm256_loadu_pd(brow + j));
        _mm256_storeu_pd(crow + j, _mm256_add_pd(_mm256_loadu_pd(crow + j), prod));
      }
      for (; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

cplx zdotc_avx2(std::size_t n, const cplx* x, const cplx* y) {
  // conj(x)*y = [xr*yr + xi*yi, xr*yi - xi*yr]
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(dp(x + i));
    const __m256d yv = _mm256_loadu_pd(dp(y + i));
    acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
    acc_im = _mm256_fmadd_pd(xv, _mm256_permute_pd(yv, 0b0101), acc_im);
  }
  alignas(32) double re[4], im[4];
  _mm256_store_pd(re, acc_re);
  _mm256_store_pd(im, acc_im);
  // re lanes hold xr*yr and xi*yi; im lanes hold xr*yi and xi*yr.
  cplx acc{re[0] + re[1] + re[2] + re[3], (im[0] - im[1]) + (im[2] - im[3])};
  for (; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

double ddotc_avx2(std::size_t n, const double* x, const double* y) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void zrot_avx2(std::size_t n, cplx* x, cplx* y, double c, double s, cplx lambda) {
  const __m256d cv = _mm256_set1_pd(c);
  const __m256d sv = _mm256_set1_pd(s);
  const __m256d lre = _mm256_set1_pd(lambda.real());
  const __m256d lim = _mm256_set1_pd(lambda.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(dp(x + i));
    const __m256d ly = cmul_bcast(lre, lim, _mm256_loadu_pd(dp(y + i)));
    _mm256_storeu_pd(dp(x + i), _mm256_sub_pd(_mm256_mul_pd(cv, xv), _mm256_mul_pd(sv, ly)));
    _mm256_storeu_pd(dp(y + i), _mm256_add_pd(_mm256_mul_pd(sv, xv), _mm256_mul_pd(cv, ly)));
  }
  for (; i < n; ++i) {
    const cplx ly = cmul(lambda, y[i]);
    const cplx xi = x[i];
    x[i] = c * xi - s * ly;
    y[i] = s * xi + c * ly;
  }
}

void drot_avx2(std::size_t n, double* x, double* y, double c, double s, double lambda) {
  const __m256d cv = _mm256_set1_pd(c);
  const __m256d sv = _mm256_set1_pd(s);
  const __m256d lv = _mm256_set1_pd(lambda);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d ly = _mm256_mul_pd(lv, _mm256_loadu_pd(y + i));
    _mm256_storeu_pd(x + i, _mm256_sub_pd(_mm256_mul_pd(cv, xv), _mm256_mul_pd(sv, ly)));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_mul_pd(sv, xv), _mm256_mul_pd(cv, ly)));
  }
  for (; i < n; ++i) {
    const double ly = lambda * y[i];
    const double xi = x[i];
    x[i] = c * xi - s * ly;
    y[i] = s * xi + c * ly;
  }
}

double znrm2sq_avx2(std::size_t n, const cplx* x) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(dp(x + i));
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += std::norm(x[i]);
  return s;
}

double dnrm2sq_avx2(std::size_t n, const double* x) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = _mm256_loadu_pd(x + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i] * x[i];
  return s;
}

}  // namespace

const kernel_table& avx2_table_unchecked() {
  static const kernel_table table{
      "avx2",
      &dgemm_avx2, &zgemm_avx2, &ddotc_avx2, &zdotc_avx2,
      &drot_avx2,  &zrot_avx2,  &dnrm2sq_avx2, &znrm2sq_avx2,
  };
  return table;
}

}  // namespace ginv::kernels

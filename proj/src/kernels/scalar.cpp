#include "ginv/kernels.hpp"

namespace ginv::kernels {
namespace {

// Complex products are spelled out so the rounding is exactly
// re = ar*br - ai*bi, im = ar*bi + ai*br, matching the SIMD variant.
inline cplx mul(cplx a, cplx b) {
  const double ar = a.real(), ai = a.imag(), br = b.real(), bi = b.imag();
  return {ar * br - ai * bi, ar * bi + ai * br};
}

inline double mul(double a, double b) { return a * b; }

inline cplx conj_of(cplx a) { return std::conj(a); }
inline double conj_of(double a) { return a; }

inline double abs2(cplx a) { return a.real() * a.real() + a.imag() * a.imag(); }
inline double abs2(double a) { return a * a; }

template <class T>
void gemm_ref(std::size_t m, std::size_t k, std::size_t n, const T* a, const T* b, T* c) {
  for (std::size_t i = 0; i < m * n; ++i) c[i] = T{};
  for (std::size_t i = 0; i < m; ++i) {
    T* crow = c + i * n;
    for (std::size_t l = 0; l < k; ++l) {
      const T aik = a[i * k + l];
      const T* brow = b + l * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += mul(aik, brow[j]);
    }
  }
}

template <class T>
T dotc_ref(std::size_t n, const T* x, const T* y) {
  T acc{};
  for (std::size_t i = 0; i < n; ++i) acc += mul(conj_of(x[i]), y[i]);
  return acc;
}

template <class T>
void rot_ref(std::size_t n, T* x, T* y, double c, double s, T lambda) {
  for (std::size_t i = 0; i < n; ++i) {
    const T ly = mul(lambda, y[i]);
    const T xi = x[i];
    x[i] = c * xi - s * ly;
    y[i] = s * xi + c * ly;
  }
}

template <class T>
double nrm2sq_ref(std::size_t n, const T* x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += abs2(x[i]);
  return acc;
}

}  // namespace

const kernel_table& scalar_table() {
  static const kernel_table table{
      "scalar",
      &gemm_ref<double>,   &gemm_ref<cplx>,   &dotc_ref<double>,   &dotc_ref<cplx>,
      &rot_ref<double>,    &rot_ref<cplx>,    &nrm2sq_ref<double>, &nrm2sq_ref<cplx>,
  };
  return table;
}

}  // namespace ginv::kernels

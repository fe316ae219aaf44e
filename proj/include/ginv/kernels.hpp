#pragma once

// Inner-loop arithmetic for dense matrices. Every kernel exists as a scalar
// reference implementation and, on x86-64, as an AVX2 variant; the active
// table is chosen once at first use from the CPU features (override with
// GINV_KERNELS=scalar).

#include <complex>
#include <cstddef>
#include <type_traits>
#include <string_view>

namespace ginv::kernels {

using cplx = std::complex<double>;

// c (m x n) = a (m x k) * b (k x n), all row-major and contiguous.
template <class T>
using gemm_fn = void (*)(std::size_t m, std::size_t k, std::size_t n, const T* a, const T* b, T* c);

// sum_i conj(x_i) * y_i
template <class T>
using dotc_fn = T (*)(std::size_t n, const T* x, const T* y);

// x <- c*x - s*lambda*y ; y <- s*x + c*lambda*y  (plane rotation with phase)
template <class T>
using rot_fn = void (*)(std::size_t n, T* x, T* y, double c, double s, T lambda);

// sum_i |x_i|^2
template <class T>
using nrm2sq_fn = double (*)(std::size_t n, const T* x);

struct kernel_table {
  std::string_view name;
  gemm_fn<double> dgemm;
  gemm_fn<cplx> zgemm;
  dotc_fn<double> ddotc;
  dotc_fn<cplx> zdotc;
  rot_fn<double> drot;
  rot_fn<cplx> zrot;
  nrm2sq_fn<double> dnrm2sq;
  nrm2sq_fn<cplx> znrm2sq;
};

const kernel_table& scalar_table();
// nullptr when the variant was not compiled in or the CPU lacks the feature.
const kernel_table* avx2_table();
const kernel_table& active();

template <class T>
void gemm(std::size_t m, std::size_t k, std::size_t n, const T* a, const T* b, T* c) {
  if constexpr (std::is_same_v<T, double>)
    active().dgemm(m, k, n, a, b, c);
  else
    active().zgemm(m, k, n, a, b, c);
}

template <class T>
T dotc(std::size_t n, const T* x, const T* y) {
  if constexpr (std::is_same_v<T, double>)
    return active().ddotc(n, x, y);
  else
    return active().zdotc(n, x, y);
}

template <class T>
void rot(std::size_t n, T* x, T* y, double c, double s, T lambda) {
  if constexpr (std::is_same_v<T, double>)
    active().drot(n, x, y, c, s, lambda);
  else
    active().zrot(n, x, y, c, s, lambda);
}

template <class T>
double nrm2sq(std::size_t n, const T* x) {
  if constexpr (std::is_same_v<T, double>)
    return active().dnrm2sq(n, x);
  else
    return active().znrm2sq(n, x);
}

}  // namespace ginv::kernels

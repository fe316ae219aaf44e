#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "ginv/errors.hpp"
#include "ginv/kernels.hpp"

namespace ginv {

using cplx = std::complex<double>;

/// Dense row-major matrix over double or complex<double>.
template <class T>
class basic_matrix {
 public:
  using value_type = T;

  basic_matrix() = default;
  basic_matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  basic_matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
      throw input_error("matrix entry count " + std::to_string(data_.size()) + " does not match " +
                        std::to_string(rows_) + "x" + std::to_string(cols_));
  }

  static basic_matrix identity(std::size_t n) {
    basic_matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  static basic_matrix diagonal(std::span<const T> d) {
    basic_matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<T> entries() noexcept { return data_; }
  std::span<const T> entries() const noexcept { return data_; }
  T* data() noexcept { return data_.data(); }
  const T* data() const noexcept { return data_.data(); }

  bool all_finite() const noexcept {
    for (const T& v : data_) {
      if constexpr (std::is_same_v<T, double>) {
        if (!std::isfinite(v)) return false;
      } else {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
      }
    }
    return true;
  }

  basic_matrix adjoint() const {
    basic_matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) {
        if constexpr (std::is_same_v<T, double>)
          r(j, i) = (*this)(i, j);
        else
          r(j, i) = std::conj((*this)(i, j));
      }
    return r;
  }

  basic_matrix& operator+=(const basic_matrix& o) {
    check_same_dims(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  basic_matrix& operator-=(const basic_matrix& o) {
    check_same_dims(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  basic_matrix& operator*=(T s) {
    for (T& v : data_) v *= s;
    return *this;
  }

  friend basic_matrix operator+(basic_matrix a, const basic_matrix& b) { return a += b; }
  friend basic_matrix operator-(basic_matrix a, const basic_matrix& b) { return a -= b; }
  friend basic_matrix operator*(basic_matrix a, T s) { return a *= s; }
  friend basic_matrix operator*(T s, basic_matrix a) { return a *= s; }
  friend basic_matrix operator-(basic_matrix a) { return a *= T{-1}; }

  friend basic_matrix operator*(const basic_matrix& a, const basic_matrix& b) {
    if (a.cols_ != b.rows_)
      throw input_error("matrix product dimension mismatch: " + std::to_string(a.rows_) + "x" +
                        std::to_string(a.cols_) + " times " + std::to_string(b.rows_) + "x" +
                        std::to_string(b.cols_));
    basic_matrix c(a.rows_, b.cols_);
    if (!c.empty()) kernels::gemm<T>(a.rows_, a.cols_, b.cols_, a.data(), b.data(), c.data());
    return c;
  }

  friend bool operator==(const basic_matrix& a, const basic_matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same_dims(const basic_matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw input_error("matrix dimension mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ComplexMatrix = basic_matrix<cplx>;
using RealMatrix = basic_matrix<double>;
using RealVector = std::vector<double>;

double frobenius_norm(const ComplexMatrix& m);
double frobenius_norm(const RealMatrix& m);
double max_abs(const ComplexMatrix& m);
double max_abs(const RealMatrix& m);

// Stacks matrices with a common column count on top of each other.
RealMatrix vstack(std::span<const RealMatrix> parts);
RealMatrix hstack(std::span<const RealMatrix> parts);
RealMatrix column_matrix(std::span<const RealVector> columns, std::size_t rows);
RealVector column(const RealMatrix& m, std::size_t j);
RealVector matvec(const RealMatrix& m, std::span<const double> x);

/// Numerical tolerances shared by every module.
struct ToleranceConfig {
  double rank_cutoff_factor = 1e-12;
  double residual_tol = 1e-8;
  double fd_step_scale = std::cbrt(std::numeric_limits<double>::epsilon());

  void validate() const;

  // Finite-difference Jacobians carry O(h^2 + eps/h) noise, far above the
  // pseudo-inverse cutoff; ranks of such matrices use this relative factor.
  ToleranceConfig for_finite_differences() const;
};

}  // namespace ginv

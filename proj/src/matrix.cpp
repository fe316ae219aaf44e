#include "ginv/matrix.hpp"

#include <algorithm>

namespace ginv {

double frobenius_norm(const ComplexMatrix& m) { return std::sqrt(kernels::nrm2sq(m.size(), m.data())); }

double frobenius_norm(const RealMatrix& m) { return std::sqrt(kernels::nrm2sq(m.size(), m.data())); }

double max_abs(const ComplexMatrix& m) {
  double r = 0.0;
  for (const cplx& v : m.entries()) r = std::max(r, std::abs(v));
  return r;
}

double max_abs(const RealMatrix& m) {
  double r = 0.0;
  for (double v : m.entries()) r = std::max(r, std::abs(v));
  return r;
}

RealMatrix vstack(std::span<const RealMatrix> parts) {
  if (parts.empty()) return {};
  const std::size_t cols = parts.front().cols();
  std::size_t rows = 0;
  for (const auto& p : parts) {
    if (p.cols() != cols) throw input_error("vstack: mismatched column counts");
    rows += p.rows();
  }
  RealMatrix out(rows, cols);
  std::size_t r0 = 0;
  for (const auto& p : parts) {
    std::copy(p.entries().begin(), p.entries().end(), out.data() + r0 * cols);
    r0 += p.rows();
  }
  return out;
}

RealMatrix hstack(std::span<const RealMatrix> parts) {
  if (parts.empty()) return {};
  const std::size_t rows = parts.front().rows();
  std::size_t cols = 0;
  for (const auto& p : parts) {
    if (p.rows() != rows) throw input_error("hstack: mismatched row counts");
    cols += p.cols();
  }
  RealMatrix out(rows, cols);
  std::size_t c0 = 0;
  for (const auto& p : parts) {
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < p.cols(); ++j) out(i, c0 + j) = p(i, j);
    c0 += p.cols();
  }
  return out;
}

RealMatrix column_matrix(std::span<const RealVector> columns, std::size_t rows) {
  RealMatrix out(rows, columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != rows) throw input_error("column_matrix: column length mismatch");
    for (std::size_t i = 0; i < rows; ++i) out(i, j) = columns[j][i];
  }
  return out;
}

RealVector column(const RealMatrix& m, std::size_t j) {
  RealVector v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
  return v;
}

RealVector matvec(const RealMatrix& m, std::span<const double> x) {
  if (x.size() != m.cols()) throw input_error("matvec: vector length does not match column count");
  RealVector y(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) y[i] += m(i, j) * x[j];
  return y;
}

void ToleranceConfig::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(rank_cutoff_factor)) throw input_error("rank_cutoff_factor must be strictly positive");
  if (!positive(residual_tol)) throw input_error("residual_tol must be strictly positive");
  if (!positive(fd_step_scale)) throw input_error("fd_step_scale must be strictly positive");
}

ToleranceConfig ToleranceConfig::for_finite_differences() const {
  ToleranceConfig t = *this;
  t.rank_cutoff_factor = std::max(rank_cutoff_factor, 1e3 * fd_step_scale * fd_step_scale);
  return t;
}

}  // namespace ginv

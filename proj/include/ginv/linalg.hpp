#pragma once

#include <functional>
#include <span>
#include <vector>

#include "ginv/matrix.hpp"

namespace ginv {

/// Thin singular value decomposition m = u * diag(sigma) * v^*, with
/// k = min(rows, cols) singular values sorted in decreasing order.
/// For rows >= cols the factor v is the full cols x cols unitary.
template <class T>
struct svd_result {
  basic_matrix<T> u;
  std::vector<double> sigma;
  basic_matrix<T> v;
};

// One-sided (Hestenes) Jacobi in native arithmetic.
svd_result<cplx> svd(const ComplexMatrix& m);
svd_result<double> svd(const RealMatrix& m);

// Count of singular values above rank_cutoff_factor * max(rows, cols) * sigma_max.
// A positive scale_floor replaces sigma_max when larger; restricted
// differentials pass the norm of the full Jacobian so that pure
// finite-difference noise is not mistaken for rank.
std::size_t rank_from_singular_values(std::span<const double> sigma, std::size_t rows, std::size_t cols,
                                      const ToleranceConfig& tol, double scale_floor = 0.0);
std::size_t numerical_rank(const ComplexMatrix& m, const ToleranceConfig& tol = {});
std::size_t numerical_rank(const RealMatrix& m, const ToleranceConfig& tol = {}, double scale_floor = 0.0);

double operator_norm(const ComplexMatrix& m);
double operator_norm(const RealMatrix& m);

using real_map = std::function<RealVector(std::span<const double>)>;

/// Central differences with a uniform step fd_step_scale * (1 + |x|_inf).
RealMatrix finite_diff_jacobian(const real_map& f, std::span<const double> x, const ToleranceConfig& tol = {});

/// dim of the intersection of kernels of maps sharing a domain.
std::size_t joint_kernel_dim(std::span<const RealMatrix> maps, const ToleranceConfig& tol = {},
                             double scale_floor = 0.0);

/// Orthonormal basis (as columns) of the numerical kernel of m.
RealMatrix kernel_basis(const RealMatrix& m, const ToleranceConfig& tol = {}, double scale_floor = 0.0);

/// Hermitian eigendecomposition h = vectors * diag(values) * vectors^*,
/// values ascending. Cyclic complex Jacobi.
struct eigen_result {
  std::vector<double> values;
  ComplexMatrix vectors;
};
eigen_result hermitian_eigen(const ComplexMatrix& h);

ComplexMatrix hermitian_function(const eigen_result& e, const std::function<cplx(double)>& f);

/// Modified Gram-Schmidt on the columns; columns that become numerically
/// dependent are replaced by completion vectors so the result has
/// orthonormal columns of the same count (requires cols <= rows).
ComplexMatrix orthonormalize_columns(const ComplexMatrix& m);

// Inverse through the SVD; precondition_error when numerically singular.
RealMatrix real_inverse(const RealMatrix& m, const ToleranceConfig& tol = {});

}  // namespace ginv

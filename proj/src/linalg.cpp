#include "ginv/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace ginv {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxSweeps = 100;


template <class T>
T unit_phase_conj(T gamma, double magnitude) {
  if constexpr (std::is_same_v<T, double>)
    return gamma >= 0.0 ? 1.0 : -1.0;
  else
    return std::conj(gamma) / magnitude;
}

// Column-major scratch copy of the columns of m.
template <class T>
std::vector<T> columns_of(const basic_matrix<T>& m) {
  std::vector<T> w(m.rows() * m.cols());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) w[j * m.rows() + i] = m(i, j);
  return w;
}

template <class T>
basic_matrix<T> orthonormalize_impl(const basic_matrix<T>& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  if (cols > rows) throw input_error("orthonormalize_columns: more columns than rows");
  std::vector<T> q = columns_of(m);
  auto project_out = [&](T* v, std::size_t upto) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < upto; ++k) {
        const T* qk = q.data() + k * rows;
        const T coeff = kernels::dotc(rows, qk, v);
        for (std::size_t i = 0; i < rows; ++i) v[i] -= coeff * qk[i];
      }
  };
  std::vector<T> e(rows);
  for (std::size_t j = 0; j < cols; ++j) {
    T* v = q.data() + j * rows;
    const double original = std::sqrt(kernels::nrm2sq(rows, v));
    project_out(v, j);
    double nrm = std::sqrt(kernels::nrm2sq(rows, v));
    if (original == 0.0 || nrm <= 1e-8 * original) {
      for (std::size_t c = 0; c < rows; ++c) {
        std::fill(e.begin(), e.end(), T{});
        e[c] = T{1};
        project_out(e.data(), j);
        const double en = std::sqrt(kernels::nrm2sq(rows, e.data()));
        if (en > 0.5) {
          std::copy(e.begin(), e.end(), v);
          nrm = en;
          break;
        }
      }
    }
    for (std::size_t i = 0; i < rows; ++i) v[i] /= nrm;
  }
  basic_matrix<T> out(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) out(i, j) = q[j * rows + i];
  return out;
}

template <class T>
svd_result<T> jacobi_svd(const basic_matrix<T>& a) {
  if (!a.all_finite()) throw input_error("svd: matrix has non-finite entries");
  if (a.rows() < a.cols()) {
    svd_result<T> r = jacobi_svd(a.adjoint());
    return {std::move(r.v), std::move(r.sigma), std::move(r.u)};
  }
  const std::size_t m = a.rows(), n = a.cols();
  std::vector<T> w = columns_of(a);
  std::vector<T> v(n * n, T{});
  for (std::size_t i = 0; i < n; ++i) v[i * n + i] = T{1};

  const double threshold = kEps * static_cast<double>(std::max<std::size_t>(m, 1));
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool rotated = false;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        T* wp = w.data() + p * m;
        T* wq = w.data() + q * m;
        const double alpha = kernels::nrm2sq(m, wp);
        const double beta = kernels::nrm2sq(m, wq);
        const T gamma = kernels::dotc(m, wp, wq);
        const double g = std::abs(gamma);
        if (g == 0.0 || g <= threshold * std::sqrt(alpha * beta)) continue;
        rotated = true;
        const T lambda = unit_phase_conj(gamma, g);
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        kernels::rot(m, wp, wq, c, s, lambda);
        kernels::rot(n, v.data() + p * n, v.data() + q * n, c, s, lambda);
      }
    }
    if (!rotated) break;
  }

  std::vector<double> sig(n);
  for (std::size_t j = 0; j < n; ++j) sig[j] = std::sqrt(kernels::nrm2sq(m, w.data() + j * m));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return sig[x] > sig[y]; });

  const double smax = n > 0 ? sig[order.front()] : 0.0;
  const double tiny = smax * kEps * static_cast<double>(std::max(m, n));
  basic_matrix<T> u0(m, n);
  basic_matrix<T> vout(n, n);
  std::vector<double> sorted(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = order[k];
    sorted[k] = sig[j];
    if (sig[j] > tiny && sig[j] > 0.0)
      for (std::size_t i = 0; i < m; ++i) u0(i, k) = w[j * m + i] / sig[j];
    for (std::size_t i = 0; i < n; ++i) vout(i, k) = v[j * n + i];
  }
  return {orthonormalize_impl(u0), std::move(sorted), std::move(vout)};
}

template <class T>
std::size_t rank_of(const basic_matrix<T>& m, const ToleranceConfig& tol, double scale_floor = 0.0) {
  if (!m.all_finite()) throw input_error("numerical_rank: matrix has non-finite entries");
  if (m.empty()) return 0;
  const auto r = jacobi_svd(m);
  return rank_from_singular_values(r.sigma, m.rows(), m.cols(), tol, scale_floor);
}

}  // namespace

svd_result<cplx> svd(const ComplexMatrix& m) { return jacobi_svd(m); }
svd_result<double> svd(const RealMatrix& m) { return jacobi_svd(m); }

std::size_t rank_from_singular_values(std::span<const double> sigma, std::size_t rows, std::size_t cols,
                                      const ToleranceConfig& tol, double scale_floor) {
  if (sigma.empty()) return 0;
  const double smax = std::max(*std::max_element(sigma.begin(), sigma.end()), scale_floor);
  if (smax == 0.0) return 0;
  const double cutoff = tol.rank_cutoff_factor * static_cast<double>(std::max(rows, cols)) * smax;
  return static_cast<std::size_t>(std::count_if(sigma.begin(), sigma.end(), [&](double s) { return s > cutoff; }));
}

std::size_t numerical_rank(const ComplexMatrix& m, const ToleranceConfig& tol) { return rank_of(m, tol); }
std::size_t numerical_rank(const RealMatrix& m, const ToleranceConfig& tol, double scale_floor) {
  return rank_of(m, tol, scale_floor);
}

double operator_norm(const ComplexMatrix& m) {
  if (m.empty()) return 0.0;
  return jacobi_svd(m).sigma.front();
}

double operator_norm(const RealMatrix& m) {
  if (m.empty()) return 0.0;
  return jacobi_svd(m).sigma.front();
}

RealMatrix finite_diff_jacobian(const real_map& f, std::span<const double> x, const ToleranceConfig& tol) {
  double xinf = 0.0;
  for (double v : x) xinf = std::max(xinf, std::abs(v));
  const double h = tol.fd_step_scale * (1.0 + xinf);
  RealVector probe(x.begin(), x.end());
  RealMatrix jac;
  for (std::size_t j = 0; j < x.size(); ++j) {
    probe[j] = x[j] + h;
    const RealVector fp = f(probe);
    probe[j] = x[j] - h;
    const RealVector fm = f(probe);
    probe[j] = x[j];
    if (fp.size() != fm.size()) throw evaluation_error("finite_diff_jacobian: output size changed", j);
    if (j == 0) jac = RealMatrix(fp.size(), x.size());
    if (fp.size() != jac.rows()) throw evaluation_error("finite_diff_jacobian: output size changed", j);
    for (std::size_t i = 0; i < fp.size(); ++i) {
      if (!std::isfinite(fp[i]) || !std::isfinite(fm[i]))
        throw evaluation_error("finite_diff_jacobian: non-finite value when perturbing coordinate " +
                                   std::to_string(j),
                               j);
      jac(i, j) = (fp[i] - fm[i]) / (2.0 * h);
    }
  }
  return jac;
}

std::size_t joint_kernel_dim(std::span<const RealMatrix> maps, const ToleranceConfig& tol, double scale_floor) {
  if (maps.empty()) throw input_error("joint_kernel_dim: no maps given");
  const std::size_t domain = maps.front().cols();
  for (const auto& m : maps)
    if (m.cols() != domain) throw input_error("joint_kernel_dim: mismatched column counts");
  const RealMatrix stacked = vstack(maps);
  return domain - numerical_rank(stacked, tol, scale_floor);
}

RealMatrix kernel_basis(const RealMatrix& m, const ToleranceConfig& tol, double scale_floor) {
  const std::size_t n = m.cols();
  if (n == 0) return RealMatrix(0, 0);
  RealMatrix work = m;
  if (m.rows() < n) {
    work = RealMatrix(n, n);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < n; ++j) work(i, j) = m(i, j);
  }
  const auto r = jacobi_svd(work);
  const std::size_t rank = rank_from_singular_values(r.sigma, m.rows(), m.cols(), tol, scale_floor);
  RealMatrix basis(n, n - rank);
  for (std::size_t k = rank; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) basis(i, k - rank) = r.v(i, k);
  return basis;
}

eigen_result hermitian_eigen(const ComplexMatrix& h) {
  if (!h.is_square()) throw input_error("hermitian_eigen: matrix is not square");
  if (!h.all_finite()) throw input_error("hermitian_eigen: non-finite entries");
  const std::size_t n = h.rows();
  ComplexMatrix a = h;
  // Symmetrize so tiny asymmetries from rounding do not stall the sweeps.
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = avg;
      a(j, i) = std::conj(avg);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(frobenius_norm(a), std::numeric_limits<double>::min());
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
    if (std::sqrt(off) <= kEps * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double g = std::abs(apq);
        if (g == 0.0) continue;
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const cplx d = std::conj(apq) / g;
        const double tau = (aqq - app) / (2.0 * g);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (std::size_t i = 0; i < n; ++i) {
          const cplx x = a(i, p), y = a(i, q);
          a(i, p) = c * x - s * d * y;
          a(i, q) = s * x + c * d * y;
        }
        for (std::size_t j = 0; j < n; ++j) {
          const cplx x = a(p, j), y = a(q, j);
          a(p, j) = c * x - s * std::conj(d) * y;
          a(q, j) = s * x + c * std::conj(d) * y;
        }
        for (std::size_t i = 0; i < n; ++i) {
          const cplx x = v(i, p), y = v(i, q);
          v(i, p) = c * x - s * d * y;
          v(i, q) = s * x + c * d * y;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
  eigen_result out{std::vector<double>(n), ComplexMatrix(n, n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

ComplexMatrix hermitian_function(const eigen_result& e, const std::function<cplx(double)>& f) {
  const std::size_t n = e.values.size();
  ComplexMatrix scaled = e.vectors;
  for (std::size_t k = 0; k < n; ++k) {
    const cplx fk = f(e.values[k]);
    for (std::size_t i = 0; i < n; ++i) scaled(i, k) *= fk;
  }
  return scaled * e.vectors.adjoint();
}

ComplexMatrix orthonormalize_columns(const ComplexMatrix& m) { return orthonormalize_impl(m); }

RealMatrix real_inverse(const RealMatrix& m, const ToleranceConfig& tol) {
  if (!m.is_square()) throw input_error("real_inverse: matrix is not square");
  const auto f = svd(m);
  const std::size_t n = m.rows();
  if (rank_from_singular_values(f.sigma, n, n, tol) < n) throw precondition_error("real_inverse: matrix is singular");
  RealMatrix inv(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const double s = 1.0 / f.sigma[k];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inv(i, j) += f.v(i, k) * s * f.u(j, k);
  }
  return inv;
}

}  // namespace ginv

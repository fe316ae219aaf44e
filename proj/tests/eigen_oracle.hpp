#pragma once

// Conversions to Eigen, which serves only as an independent reference.

#include <Eigen/Dense>

#include "ginv/algebra.hpp"

namespace ginv::test {

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline Eigen::MatrixXd to_eigen(const RealMatrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd& e) {
  ComplexMatrix m(e.rows(), e.cols());
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

// Kernel dimension with a full-pivot LU at an explicit threshold.
inline std::size_t kernel_dim(const Eigen::MatrixXd& m, double threshold = 1e-9) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(threshold);
  return static_cast<std::size_t>(m.cols() - lu.rank());
}

}  // namespace ginv::test

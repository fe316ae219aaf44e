#pragma once

// Finite-dimensional C*-algebras A = M_{n_1}(C) (+) ... (+) M_{n_k}(C),
// represented block-diagonally.

#include <cstddef>
#include <span>
#include <vector>

#include "ginv/matrix.hpp"

namespace ginv {

class AlgebraShape {
 public:
  explicit AlgebraShape(std::vector<std::size_t> block_sizes);

  std::span<const std::size_t> block_sizes() const noexcept { return sizes_; }
  std::size_t block_count() const noexcept { return sizes_.size(); }
  std::size_t block_size(std::size_t i) const { return sizes_.at(i); }
  // Real dimension of A, i.e. sum of 2 n_i^2.
  std::size_t real_dim() const noexcept;

  friend bool operator==(const AlgebraShape&, const AlgebraShape&) = default;

 private:
  std::vector<std::size_t> sizes_;
};

class AlgebraElement {
 public:
  AlgebraElement(AlgebraShape shape, std::vector<ComplexMatrix> blocks);

  static AlgebraElement zero(const AlgebraShape& shape);
  static AlgebraElement unit(const AlgebraShape& shape);
  // Single-block convenience.
  static AlgebraElement from_matrix(ComplexMatrix m);

  const AlgebraShape& shape() const noexcept { return shape_; }
  std::span<const ComplexMatrix> blocks() const noexcept { return blocks_; }
  const ComplexMatrix& block(std::size_t i) const { return blocks_.at(i); }

  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(cplx s);

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(cplx s, AlgebraElement a) { return a *= s; }
  friend AlgebraElement operator*(AlgebraElement a, cplx s) { return a *= s; }
  friend bool operator==(const AlgebraElement&, const AlgebraElement&) = default;

 private:
  AlgebraShape shape_;
  std::vector<ComplexMatrix> blocks_;
};

AlgebraElement element_product(const AlgebraElement& a, const AlgebraElement& b);
inline AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) { return element_product(a, b); }
AlgebraElement element_adjoint(const AlgebraElement& a);

// C*-norm: the largest block operator norm.
double norm(const AlgebraElement& a);
double distance(const AlgebraElement& a, const AlgebraElement& b);

// Per-block numerical ranks.
std::vector<std::size_t> rank_signature(const AlgebraElement& a, const ToleranceConfig& tol = {});
bool is_invertible(const AlgebraElement& a, const ToleranceConfig& tol = {});

// Real coordinates: per block, real parts row-major then imaginary parts
// row-major; blocks concatenated in order.
RealVector to_real(const AlgebraElement& a);
AlgebraElement from_real(const AlgebraShape& shape, std::span<const double> coords);

struct ElementClass {
  bool idempotent = false;
  bool projection = false;
  bool partial_isometry = false;
  bool regular = true;  // every element of a finite-dimensional C*-algebra is regular
  double max_residual = 0.0;
};

ElementClass classify(const AlgebraElement& a, const ToleranceConfig& tol = {});

// q a q for an idempotent q.
AlgebraElement corner_compress(const AlgebraElement& q, const AlgebraElement& a, const ToleranceConfig& tol = {});

}  // namespace ginv

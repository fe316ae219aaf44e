#include "ginv/random.hpp"

#include "ginv/linalg.hpp"

namespace ginv::sampling {

engine make_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x67696e76u};
  return engine(seq);
}

ComplexMatrix gaussian_matrix(engine& rng, std::size_t rows, std::size_t cols, double scale) {
  std::normal_distribution<double> dist(0.0, scale);
  ComplexMatrix m(rows, cols);
  for (cplx& v : m.entries()) {
    const double re = dist(rng);
    const double im = dist(rng);
    v = {re, im};
  }
  return m;
}

RealVector gaussian_vector(engine& rng, std::size_t n, double scale) {
  std::normal_distribution<double> dist(0.0, scale);
  RealVector v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

double uniform(engine& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

std::size_t uniform_index(engine& rng, std::size_t lo, std::size_t hi_inclusive) {
  return std::uniform_int_distribution<std::size_t>(lo, hi_inclusive)(rng);
}

AlgebraElement gaussian_element(engine& rng, const AlgebraShape& shape, double scale) {
  std::vector<ComplexMatrix> blocks;
  for (std::size_t n : shape.block_sizes()) blocks.push_back(gaussian_matrix(rng, n, n, scale));
  return {shape, std::move(blocks)};
}

ComplexMatrix haar_unitary(engine& rng, std::size_t n) { return orthonormalize_columns(gaussian_matrix(rng, n, n)); }

AlgebraElement haar_unitary(engine& rng, const AlgebraShape& shape) {
  std::vector<ComplexMatrix> blocks;
  for (std::size_t n : shape.block_sizes()) blocks.push_back(haar_unitary(rng, n));
  return {shape, std::move(blocks)};
}

std::vector<std::size_t> random_signature(engine& rng, const AlgebraShape& shape) {
  std::vector<std::size_t> sig;
  for (std::size_t n : shape.block_sizes()) sig.push_back(uniform_index(rng, 0, n));
  return sig;
}

namespace {

void check_signature(const AlgebraShape& shape, const std::vector<std::size_t>& signature) {
  if (signature.size() != shape.block_count()) throw input_error("rank signature length does not match shape");
  for (std::size_t i = 0; i < signature.size(); ++i)
    if (signature[i] > shape.block_size(i)) throw input_error("rank signature entry exceeds block size");
}

ComplexMatrix leading_diag(std::size_t n, std::size_t r) {
  ComplexMatrix d(n, n);
  for (std::size_t i = 0; i < r; ++i) d(i, i) = 1.0;
  return d;
}

}  // namespace

AlgebraElement random_with_signature(engine& rng, const AlgebraShape& shape, const std::vector<std::size_t>& signature,
                                     double lo, double hi) {
  check_signature(shape, signature);
  std::vector<ComplexMatrix> blocks;
  for (std::size_t i = 0; i < shape.block_count(); ++i) {
    const std::size_t n = shape.block_size(i);
    ComplexMatrix d(n, n);
    for (std::size_t k = 0; k < signature[i]; ++k) d(k, k) = uniform(rng, lo, hi);
    const ComplexMatrix u = haar_unitary(rng, n);
    const ComplexMatrix v = haar_unitary(rng, n);
    blocks.push_back(u * d * v.adjoint());
  }
  return {shape, std::move(blocks)};
}

AlgebraElement random_idempotent(engine& rng, const AlgebraShape& shape, const std::vector<std::size_t>& signature) {
  check_signature(shape, signature);
  std::vector<ComplexMatrix> blocks;
  for (std::size_t i = 0; i < shape.block_count(); ++i) {
    const std::size_t n = shape.block_size(i);
    const ComplexMatrix w1 = haar_unitary(rng, n);
    const ComplexMatrix w2 = haar_unitary(rng, n);
    ComplexMatrix d(n, n), dinv(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      const double s = uniform(rng, 0.5, 2.0);
      d(k, k) = s;
      dinv(k, k) = 1.0 / s;
    }
    const ComplexMatrix s = w1 * d * w2;
    const ComplexMatrix sinv = w2.adjoint() * dinv * w1.adjoint();
    blocks.push_back(s * leading_diag(n, signature[i]) * sinv);
  }
  return {shape, std::move(blocks)};
}

AlgebraElement random_projection(engine& rng, const AlgebraShape& shape, const std::vector<std::size_t>& signature) {
  check_signature(shape, signature);
  std::vector<ComplexMatrix> blocks;
  for (std::size_t i = 0; i < shape.block_count(); ++i) {
    const std::size_t n = shape.block_size(i);
    const ComplexMatrix w = haar_unitary(rng, n);
    blocks.push_back(w * leading_diag(n, signature[i]) * w.adjoint());
  }
  return {shape, std::move(blocks)};
}

AlgebraElement random_partial_isometry(engine& rng, const AlgebraShape& shape,
                                       const std::vector<std::size_t>& signature) {
  check_signature(shape, signature);
  std::vector<ComplexMatrix> blocks;
  for (std::size_t i = 0; i < shape.block_count(); ++i) {
    const std::size_t n = shape.block_size(i);
    const ComplexMatrix w = haar_unitary(rng, n);
    const ComplexMatrix v = haar_unitary(rng, n);
    blocks.push_back(w * leading_diag(n, signature[i]) * v.adjoint());
  }
  return {shape, std::move(blocks)};
}

}  // namespace ginv::sampling

#pragma once

// Seeded samplers for algebra elements with prescribed structure. All
// randomness flows through an explicit engine; nothing is global.

#include <cstdint>
#include <random>
#include <vector>

#include "ginv/algebra.hpp"

namespace ginv::sampling {

using engine = std::mt19937_64;

// Independent stream per (seed, stream) pair.
engine make_engine(std::uint64_t seed, std::uint64_t stream = 0);

ComplexMatrix gaussian_matrix(engine& rng, std::size_t rows, std::size_t cols, double scale = 1.0);
RealVector gaussian_vector(engine& rng, std::size_t n, double scale = 1.0);
double uniform(engine& rng, double lo, double hi);
std::size_t uniform_index(engine& rng, std::size_t lo, std::size_t hi_inclusive);

AlgebraElement gaussian_element(engine& rng, const AlgebraShape& shape, double scale = 1.0);

// Haar-distributed unitary via Gram-Schmidt QR of a complex Gaussian matrix.
ComplexMatrix haar_unitary(engine& rng, std::size_t n);
AlgebraElement haar_unitary(engine& rng, const AlgebraShape& shape);

std::vector<std::size_t> random_signature(engine& rng, const AlgebraShape& shape);

// U diag(s_1..s_r, 0..0) V^* per block with s_i uniform in [lo, hi].
AlgebraElement random_with_signature(engine& rng, const AlgebraShape& shape, const std::vector<std::size_t>& signature,
                                     double lo = 0.2, double hi = 3.0);

// S diag(1..1, 0..0) S^{-1} with S of condition number at most 4.
AlgebraElement random_idempotent(engine& rng, const AlgebraShape& shape, const std::vector<std::size_t>& signature);
AlgebraElement random_projection(engine& rng, const AlgebraShape& shape, const std::vector<std::size_t>& signature);
AlgebraElement random_partial_isometry(engine& rng, const AlgebraShape& shape,
                                       const std::vector<std::size_t>& signature);

}  // namespace ginv::sampling

#include "ginv/algebra.hpp"

#include <algorithm>
#include <numeric>

#include "ginv/linalg.hpp"

namespace ginv {

AlgebraShape::AlgebraShape(std::vector<std::size_t> block_sizes) : sizes_(std::move(block_sizes)) {
  if (sizes_.empty()) throw input_error("algebra shape must have at least one block");
  for (std::size_t s : sizes_)
    if (s == 0) throw input_error("algebra block sizes must be at least 1");
}

std::size_t AlgebraShape::real_dim() const noexcept {
  return std::accumulate(sizes_.begin(), sizes_.end(), std::size_t{0},
                         [](std::size_t acc, std::size_t n) { return acc + 2 * n * n; });
}

AlgebraElement::AlgebraElement(AlgebraShape shape, std::vector<ComplexMatrix> blocks)
    : shape_(std::move(shape)), blocks_(std::move(blocks)) {
  if (blocks_.size() != shape_.block_count())
    throw validation_error("element has " + std::to_string(blocks_.size()) + " blocks, shape expects " +
                           std::to_string(shape_.block_count()));
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const std::size_t n = shape_.block_size(i);
    if (blocks_[i].rows() != n || blocks_[i].cols() != n)
      throw validation_error("block " + std::to_string(i) + " is " + std::to_string(blocks_[i].rows()) + "x" +
                             std::to_string(blocks_[i].cols()) + ", expected " + std::to_string(n) + "x" +
                             std::to_string(n));
    if (!blocks_[i].all_finite()) throw validation_error("block " + std::to_string(i) + " has non-finite entries");
  }
}

AlgebraElement AlgebraElement::zero(const AlgebraShape& shape) {
  std::vector<ComplexMatrix> blocks;
  for (std::size_t n : shape.block_sizes()) blocks.emplace_back(n, n);
  return {shape, std::move(blocks)};
}

AlgebraElement AlgebraElement::unit(const AlgebraShape& shape) {
  std::vector<ComplexMatrix> blocks;
  for (std::size_t n : shape.block_sizes()) blocks.push_back(ComplexMatrix::identity(n));
  return {shape, std::move(blocks)};
}

AlgebraElement AlgebraElement::from_matrix(ComplexMatrix m) {
  if (!m.is_square()) throw validation_error("algebra block must be square");
  AlgebraShape shape({m.rows()});
  return {std::move(shape), {std::move(m)}};
}

namespace {

void require_same_shape(const AlgebraElement& a, const AlgebraElement& b, const char* op) {
  if (!(a.shape() == b.shape())) throw input_error(std::string(op) + ": algebra shape mismatch");
}

}  // namespace

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  require_same_shape(*this, o, "sum");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] += o.blocks_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) {
  require_same_shape(*this, o, "difference");
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] -= o.blocks_[i];
  return *this;
}

AlgebraElement& AlgebraElement::operator*=(cplx s) {
  for (auto& b : blocks_) b *= s;
  return *this;
}

AlgebraElement element_product(const AlgebraElement& a, const AlgebraElement& b) {
  require_same_shape(a, b, "element_product");
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(a.shape().block_count());
  for (std::size_t i = 0; i < a.shape().block_count(); ++i) blocks.push_back(a.block(i) * b.block(i));
  return {a.shape(), std::move(blocks)};
}

AlgebraElement element_adjoint(const AlgebraElement& a) {
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(a.shape().block_count());
  for (const auto& b : a.blocks()) blocks.push_back(b.adjoint());
  return {a.shape(), std::move(blocks)};
}

double norm(const AlgebraElement& a) {
  double r = 0.0;
  for (const auto& b : a.blocks()) r = std::max(r, operator_norm(b));
  return r;
}

double distance(const AlgebraElement& a, const AlgebraElement& b) { return norm(a - b); }

std::vector<std::size_t> rank_signature(const AlgebraElement& a, const ToleranceConfig& tol) {
  std::vector<std::size_t> sig;
  for (const auto& b : a.blocks()) sig.push_back(numerical_rank(b, tol));
  return sig;
}

bool is_invertible(const AlgebraElement& a, const ToleranceConfig& tol) {
  const auto sig = rank_signature(a, tol);
  for (std::size_t i = 0; i < sig.size(); ++i)
    if (sig[i] != a.shape().block_size(i)) return false;
  return true;
}

RealVector to_real(const AlgebraElement& a) {
  RealVector out;
  out.reserve(a.shape().real_dim());
  for (const auto& b : a.blocks()) {
    for (const cplx& v : b.entries()) out.push_back(v.real());
    for (const cplx& v : b.entries()) out.push_back(v.imag());
  }
  return out;
}

AlgebraElement from_real(const AlgebraShape& shape, std::span<const double> coords) {
  if (coords.size() != shape.real_dim())
    throw input_error("from_real: expected " + std::to_string(shape.real_dim()) + " coordinates, got " +
                      std::to_string(coords.size()));
  std::vector<ComplexMatrix> blocks;
  std::size_t offset = 0;
  for (std::size_t n : shape.block_sizes()) {
    ComplexMatrix m(n, n);
    const std::size_t nn = n * n;
    for (std::size_t k = 0; k < nn; ++k) m.entries()[k] = {coords[offset + k], coords[offset + nn + k]};
    offset += 2 * nn;
    blocks.push_back(std::move(m));
  }
  return {shape, std::move(blocks)};
}

ElementClass classify(const AlgebraElement& a, const ToleranceConfig& tol) {
  const double na = norm(a);
  const AlgebraElement astar = element_adjoint(a);
  const double r_idem = distance(a * a, a);
  const double r_sa = distance(astar, a);
  const double r_pi = distance(a * astar * a, a);
  ElementClass c;
  c.idempotent = r_idem <= tol.residual_tol * (1.0 + na * na);
  c.projection = c.idempotent && r_sa <= tol.residual_tol * (1.0 + na);
  c.partial_isometry = r_pi <= tol.residual_tol * (1.0 + na * na * na);
  c.regular = true;
  c.max_residual = std::max({r_idem, r_sa, r_pi});
  return c;
}

AlgebraElement corner_compress(const AlgebraElement& q, const AlgebraElement& a, const ToleranceConfig& tol) {
  if (!classify(q, tol).idempotent) throw precondition_error("corner_compress: q is not idempotent");
  return q * a * q;
}

}  // namespace ginv

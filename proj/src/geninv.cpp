#include "ginv/geninv.hpp"

#include <algorithm>

#include "ginv/linalg.hpp"
#include "ginv/random.hpp"

namespace ginv {

double PenroseResidual::max() const noexcept { return std::max({r1, r2, r3, r4}); }

GInvPair::GInvPair(AlgebraElement a, AlgebraElement b) : a_(std::move(a)), b_(std::move(b)) {
  if (!(a_.shape() == b_.shape())) throw input_error("generalized-inverse pair: shape mismatch");
  const double na = norm(a_), nb = norm(b_);
  residual_aba_ = distance(a_ * b_ * a_, a_);
  residual_bab_ = distance(b_ * a_ * b_, b_);
  scale_aba_ = 1.0 + na * na * nb;
  scale_bab_ = 1.0 + nb * nb * na;
}

GInvPair GInvPair::make(AlgebraElement a, AlgebraElement b, const ToleranceConfig& tol) {
  GInvPair p(std::move(a), std::move(b));
  if (p.scaled_residual() > tol.residual_tol)
    throw precondition_error("not a reflexive generalized-inverse pair: |aba-a| = " + std::to_string(p.residual_aba_) +
                             ", |bab-b| = " + std::to_string(p.residual_bab_));
  return p;
}

GInvPair GInvPair::unchecked(AlgebraElement a, AlgebraElement b) { return GInvPair(std::move(a), std::move(b)); }

double GInvPair::scaled_residual() const noexcept {
  return std::max(residual_aba_ / scale_aba_, residual_bab_ / scale_bab_);
}

AlgebraElement moore_penrose(const AlgebraElement& a, const ToleranceConfig& tol) {
  std::vector<ComplexMatrix> blocks;
  for (const auto& blk : a.blocks()) {
    const auto f = svd(blk);
    const std::size_t r = rank_from_singular_values(f.sigma, blk.rows(), blk.cols(), tol);
    const std::size_t n = blk.rows();
    ComplexMatrix pinv(n, n);
    for (std::size_t k = 0; k < r; ++k) {
      const double inv = 1.0 / f.sigma[k];
      for (std::size_t i = 0; i < n; ++i) {
        const cplx vik = f.v(i, k) * inv;
        for (std::size_t j = 0; j < n; ++j) pinv(i, j) += vik * std::conj(f.u(j, k));
      }
    }
    blocks.push_back(std::move(pinv));
  }
  return {a.shape(), std::move(blocks)};
}

AlgebraElement newton_schulz(const AlgebraElement& a, const ToleranceConfig& tol, std::size_t max_iter) {
  const double smax = norm(a);
  if (smax == 0.0) throw precondition_error("newton_schulz: element is zero");
  const AlgebraElement two = 2.0 * AlgebraElement::unit(a.shape());
  AlgebraElement x = element_adjoint(a) * cplx(1.0 / (smax * smax));
  double last = 0.0;
  for (std::size_t k = 0; k < max_iter; ++k) {
    AlgebraElement next = x * (two - a * x);
    last = distance(next, x);
    const double scale = norm(x);
    x = std::move(next);
    if (last <= tol.residual_tol * scale) return x;
  }
  throw convergence_error("newton_schulz: no convergence after " + std::to_string(max_iter) + " iterations", last);
}

PenroseResidual penrose_residuals(const AlgebraElement& a, const AlgebraElement& b) {
  if (!(a.shape() == b.shape())) throw input_error("penrose_residuals: shape mismatch");
  const AlgebraElement ab = a * b;
  const AlgebraElement ba = b * a;
  return {distance(ab * a, a), distance(ba * b, b), distance(element_adjoint(ba), ba),
          distance(element_adjoint(ab), ab)};
}

bool is_ginv_pair(const AlgebraElement& a, const AlgebraElement& b, const ToleranceConfig& tol) {
  if (!(a.shape() == b.shape())) throw input_error("is_ginv_pair: shape mismatch");
  return GInvPair::unchecked(a, b).scaled_residual() <= tol.residual_tol;
}

std::vector<GInvPair> sample_ginv_pairs(const AlgebraElement& a, std::uint64_t seed, std::size_t count,
                                        const ToleranceConfig& tol) {
  if (count == 0) throw input_error("sample_ginv_pairs: count must be at least 1");
  auto rng = sampling::make_engine(seed, 0x9e3779b9u);
  const AlgebraElement ap = moore_penrose(a, tol);
  const double scale = 1.0 / (1.0 + norm(ap));
  const AlgebraElement left = ap * a;   // a^+ a
  const AlgebraElement right = a * ap;  // a a^+
  auto inner_inverse = [&]() {
    const AlgebraElement u = sampling::gaussian_element(rng, a.shape(), scale);
    return ap + u - left * u * right;
  };
  std::vector<GInvPair> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const AlgebraElement g1 = inner_inverse();
    const AlgebraElement g2 = inner_inverse();
    GInvPair p = GInvPair::unchecked(a, g1 * a * g2);
    if (p.scaled_residual() > tol.residual_tol)
      throw internal_consistency_error("sample_ginv_pairs: sampled pair fails reflexivity", p.residual_aba(),
                                       p.residual_bab());
    out.push_back(std::move(p));
  }
  return out;
}

GInvPair eta(const AlgebraElement& a, const ToleranceConfig& tol) { return GInvPair::make(a, moore_penrose(a, tol), tol); }

const AlgebraElement& pi_project(const GInvPair& p) noexcept { return p.a(); }

}  // namespace ginv

#pragma once

// Moore-Penrose inversion (SVD route and Newton-Schulz route), Penrose
// residuals and reflexive generalized-inverse pairs.

#include <cstdint>
#include <vector>

#include "ginv/algebra.hpp"

namespace ginv {

/// Residual norms of the four Penrose equations for a candidate b of a:
/// r1 = |aba - a|, r2 = |bab - b|, r3 = |(ba)^* - ba|, r4 = |(ab)^* - ab|.
struct PenroseResidual {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
  double r4 = 0.0;

  double max() const noexcept;
};

/// A pair (a, b) with aba = a and bab = b, i.e. an arrow of G(A).
class GInvPair {
 public:
  // Validates both reflexivity equations against
  // residual_tol * (1 + |a|^2 |b|) (resp. |b|^2 |a|); throws
  // precondition_error otherwise.
  static GInvPair make(AlgebraElement a, AlgebraElement b, const ToleranceConfig& tol = {});
  // Skips validation. Only for negative controls in verification runs;
  // the residuals are still computed and stored.
  static GInvPair unchecked(AlgebraElement a, AlgebraElement b);

  const AlgebraElement& a() const noexcept { return a_; }
  const AlgebraElement& b() const noexcept { return b_; }
  double residual_aba() const noexcept { return residual_aba_; }
  double residual_bab() const noexcept { return residual_bab_; }
  // Scaled residual ratios; both <= residual_tol for a valid pair.
  double scaled_residual() const noexcept;

 private:
  GInvPair(AlgebraElement a, AlgebraElement b);

  AlgebraElement a_;
  AlgebraElement b_;
  double residual_aba_;
  double residual_bab_;
  double scale_aba_;
  double scale_bab_;
};

AlgebraElement moore_penrose(const AlgebraElement& a, const ToleranceConfig& tol = {});

/// X_{k+1} = X_k (2 - a X_k) from X_0 = a^* / |a|^2, stopped when
/// |X_{k+1} - X_k| <= residual_tol |X_k|.
AlgebraElement newton_schulz(const AlgebraElement& a, const ToleranceConfig& tol = {}, std::size_t max_iter = 200);

PenroseResidual penrose_residuals(const AlgebraElement& a, const AlgebraElement& b);

bool is_ginv_pair(const AlgebraElement& a, const AlgebraElement& b, const ToleranceConfig& tol = {});

/// Reflexive inverses b = G1 a G2 built from random inner inverses
/// G = a^+ + U - a^+ a U a a^+.
std::vector<GInvPair> sample_ginv_pairs(const AlgebraElement& a, std::uint64_t seed, std::size_t count,
                                        const ToleranceConfig& tol = {});

GInvPair eta(const AlgebraElement& a, const ToleranceConfig& tol = {});
const AlgebraElement& pi_project(const GInvPair& p) noexcept;

}  // namespace ginv

#pragma once

// Tangent spaces of Q(A) and P(A), algebroid fibers and anchors at
// identity arrows, isotropy dimensions, submersion ranks of (s,t), orbit
// classification and admissible paths of projections with their lifts.

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "ginv/groupoid.hpp"

namespace ginv {

enum class BaseManifold { Q, P };

struct TangentBasis {
  AlgebraElement base_point;
  std::vector<AlgebraElement> vectors;
  std::size_t real_dim = 0;
  // Same vectors as orthonormal columns in real coordinates.
  RealMatrix coords;
};

TangentBasis tangent_basis(BaseManifold manifold, const AlgebraElement& x, const ToleranceConfig& tol = {});

struct AnchorData {
  BasePoint base_point;
  // Orthonormal columns in the ambient real coordinates of the arrows.
  RealMatrix fiber_basis;
  std::size_t fiber_dim = 0;
  std::size_t base_tangent_dim = 0;
  // rows = base_tangent_dim, cols = fiber_dim
  RealMatrix anchor_matrix;
  std::size_t anchor_rank = 0;
  std::size_t isotropy_dim = 0;

  bool anchor_surjective() const noexcept { return anchor_rank == base_tangent_dim; }
};

// Arrow tangent spaces are kernels of the finite-difference Jacobian of
// the defining equations at 1_x; ranks use tol.for_finite_differences().
AnchorData fiber_and_anchor(const GroupoidInstance& G, const BasePoint& x, const ToleranceConfig& tol = {});
std::size_t isotropy_tangent_dim(const GroupoidInstance& G, const BasePoint& x, const ToleranceConfig& tol = {});
std::size_t base_tangent_dim(const GroupoidInstance& G, const BasePoint& x, const ToleranceConfig& tol = {});

struct SubmersionRank {
  std::size_t rank = 0;
  std::size_t expected = 0;  // dim T_s(g) base + dim T_t(g) base

  bool submersive() const noexcept { return rank == expected; }
};

SubmersionRank submersion_rank_st(const GroupoidInstance& G, const Arrow& g, const ToleranceConfig& tol = {});

struct OrbitPartition {
  std::vector<std::string> labels;       // one per class, in first-seen order
  std::vector<std::size_t> class_of;     // per input point
  std::vector<std::size_t> class_sizes;  // per class
  std::vector<std::size_t> representatives;
};

OrbitPartition orbit_classes(const GroupoidInstance& G, std::span<const BasePoint> points, const ToleranceConfig& tol = {});
ExperimentReport orbit_decompose(const GroupoidInstance& G, std::span<const BasePoint> points,
                                 const ToleranceConfig& tol = {});

// Nearest projection: spectral truncation of the Hermitian part at 1/2.
AlgebraElement retract_projection(const AlgebraElement& h, double gap = 1e-6);

// Unique isotropy arrow k at s(g) with gk = h, for partial isometries g, h
// sharing source and target.
struct IsotropySolve {
  Arrow k;
  std::size_t solution_space_dim = 0;  // 0 means the solution is unique
  double solve_residual = 0.0;         // |gk - h|
  double isotropy_residual = 0.0;      // max(|s(k) - s(g)|, |t(k) - s(g)|)
};

IsotropySolve isotropy_solve(const GroupoidInstance& G, const Arrow& g, const Arrow& h, const ToleranceConfig& tol = {});

// rho_x(d) = d x + x d^*, the anchor of the partial-isometry algebroid.
AlgebraElement pi_anchor(const AlgebraElement& x, const AlgebraElement& d);

struct PathGenerator {
  std::function<AlgebraElement(double)> base;
  std::function<AlgebraElement(double)> lift;
};

struct APath {
  std::vector<double> sample_times;
  std::vector<AlgebraElement> base_samples;
  std::vector<AlgebraElement> lift_samples;
  double max_lift_residual = 0.0;
  std::vector<double> lift_residuals;
  std::shared_ptr<const PathGenerator> generator;
};

// Samples a generator on steps+1 equally spaced times and measures
// |rho(alpha) - c'| with c' from second-order differences on the samples.
APath sample_path(std::shared_ptr<const PathGenerator> gen, std::size_t steps);

/// c(t) = exp(itH) p exp(-itH) with exp(iH) p exp(-iH) = q, lifted by
/// alpha(t) = iH c(t). steps counts sample intervals.
APath orbit_path(const AlgebraElement& p, const AlgebraElement& q, std::size_t steps, const ToleranceConfig& tol = {});

struct Reparametrization {
  std::function<double(double)> value;
  std::function<double(double)> derivative;

  static Reparametrization identity();
  static Reparametrization square();
  static Reparametrization smoothstep();
};

APath reparametrize_lift(const APath& path, const Reparametrization& phi);

// Monotone map of [0,1] onto itself, flat to all orders at 0, 1 and every knot.
Reparametrization smooth_reparametrizer(std::span<const double> knots);

// First path on [0,1/2], second on [1/2,1]; the joint generally has a corner.
APath concatenate_paths(const APath& first, const APath& second, std::size_t steps, const ToleranceConfig& tol = {});

}  // namespace ginv

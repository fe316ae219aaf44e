#pragma once

// Groupoid instances: G(A) over idempotents, partial isometries over
// projections, the linear action groupoid GL(n,R) x R^n and the pair
// groupoid, plus disjoint unions of these.

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "ginv/algebra.hpp"
#include "ginv/geninv.hpp"
#include "ginv/random.hpp"
#include "ginv/report.hpp"

namespace ginv {

enum class GroupoidKind { ginv, partial_isometry, action, pair, disjoint_union };

const char* kind_name(GroupoidKind k) noexcept;

struct PartialIsometryArrow {
  AlgebraElement u;
};

// Arrow from x to g.x.
struct ActionArrow {
  RealVector x;
  RealMatrix g;
};

// Arrow from x to y.
struct PairArrow {
  RealVector x;
  RealVector y;
};

struct Arrow {
  std::variant<GInvPair, PartialIsometryArrow, ActionArrow, PairArrow> data;
  // Index of the sub-instance inside a disjoint union; 0 otherwise.
  std::size_t component = 0;

  GroupoidKind kind() const noexcept;
};

struct BasePoint {
  std::variant<AlgebraElement, RealVector> value;
  std::size_t component = 0;

  const AlgebraElement& element() const;
  const RealVector& vector() const;
};

class GroupoidInstance {
 public:
  static GroupoidInstance ginv(AlgebraShape shape, ToleranceConfig tol = {});
  static GroupoidInstance partial_isometry(AlgebraShape shape, ToleranceConfig tol = {});
  // GL(n,R) acting linearly on R^n.
  static GroupoidInstance action(std::size_t n, ToleranceConfig tol = {});
  // M x M for M = R^k, or for the finite set {0, ..., points-1} embedded
  // in R when points is given.
  static GroupoidInstance pair(std::size_t k, std::optional<std::size_t> points = std::nullopt,
                               ToleranceConfig tol = {});
  // Components may not themselves be disjoint unions.
  static GroupoidInstance disjoint_union(std::vector<GroupoidInstance> parts);

  GroupoidKind kind() const noexcept { return kind_; }
  const ToleranceConfig& tol() const noexcept { return tol_; }
  const AlgebraShape& shape() const;
  std::size_t dim() const noexcept { return dim_; }
  std::optional<std::size_t> points() const noexcept { return points_; }
  std::span<const GroupoidInstance> components() const noexcept { return parts_; }
  const GroupoidInstance& component(std::size_t i) const;

 private:
  GroupoidInstance(GroupoidKind kind, ToleranceConfig tol) : kind_(kind), tol_(tol) {}

  GroupoidKind kind_;
  ToleranceConfig tol_;
  std::optional<AlgebraShape> shape_;
  std::size_t dim_ = 0;
  std::optional<std::size_t> points_;
  std::vector<GroupoidInstance> parts_;
};

// Scaled defect of the arrow equations; the arrow belongs to G iff this is
// at most residual_tol. Throws input_error for arrows of the wrong kind.
double arrow_residual(const GroupoidInstance& G, const Arrow& g);
double base_residual(const GroupoidInstance& G, const BasePoint& x);
bool contains(const GroupoidInstance& G, const Arrow& g);
bool contains(const GroupoidInstance& G, const BasePoint& x);

BasePoint source(const GroupoidInstance& G, const Arrow& g);
BasePoint target(const GroupoidInstance& G, const Arrow& g);
// g1 after g2; requires source(g1) = target(g2).
Arrow compose(const GroupoidInstance& G, const Arrow& g1, const Arrow& g2);
Arrow invert(const GroupoidInstance& G, const Arrow& g);
Arrow identity_at(const GroupoidInstance& G, const BasePoint& x);

// Largest entry-level distance between arrows/base points of the same kind.
double arrow_distance(const Arrow& g, const Arrow& h);
double base_distance(const BasePoint& x, const BasePoint& y);
double arrow_norm(const Arrow& g);
double base_norm(const BasePoint& x);

// u -> (u, u^*), the embedding of partial isometries into G(A).
Arrow j_to_g_morphism(const AlgebraElement& u, const ToleranceConfig& tol = {});

Arrow make_arrow(GInvPair p, std::size_t component = 0);
Arrow make_arrow(PartialIsometryArrow u, std::size_t component = 0);
Arrow make_arrow(ActionArrow a, std::size_t component = 0);
Arrow make_arrow(PairArrow p, std::size_t component = 0);
BasePoint make_point(AlgebraElement x, std::size_t component = 0);
BasePoint make_point(RealVector x, std::size_t component = 0);

// Generators used by the verifier and the geometry checks.
BasePoint sample_base_point(const GroupoidInstance& G, sampling::engine& rng);
// Instance-specific arrow generator (random rank for the algebra kinds).
Arrow sample_arrow(const GroupoidInstance& G, sampling::engine& rng);
// A random point in the orbit of x.
BasePoint sample_orbit_point(const GroupoidInstance& G, const BasePoint& x, sampling::engine& rng);
// A random arrow with the given source and target (which must lie in the
// same orbit).
Arrow arrow_between(const GroupoidInstance& G, const BasePoint& from, const BasePoint& to, sampling::engine& rng);

/// Checks (G1)-(G4) on n_samples sampled arrows and composable triples.
/// Injected arrows are run through the same checks under "injected." names.
ExperimentReport verify_axioms(const GroupoidInstance& G, std::uint64_t seed, std::size_t n_samples,
                               std::span<const Arrow> injected = {});

}  // namespace ginv

#include "ginv/groupoid.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "ginv/linalg.hpp"

namespace ginv {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double vec_max_abs(std::span<const double> v) {
  double r = 0.0;
  for (double x : v) r = std::max(r, std::abs(x));
  return r;
}

double vec_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return kInf;
  double r = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) r = std::max(r, std::abs(a[i] - b[i]));
  return r;
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

[[noreturn]] void foreign(const char* what) { throw input_error(std::string(what) + ": arrow or point does not belong to this groupoid"); }

const GroupoidInstance& leaf(const GroupoidInstance& G, std::size_t component) {
  if (G.kind() == GroupoidKind::disjoint_union) return G.component(component);
  if (component != 0) foreign("component");
  return G;
}

template <class T>
const T& arrow_as(const Arrow& g, GroupoidKind expected, const char* what) {
  if (g.kind() != expected) foreign(what);
  return std::get<T>(g.data);
}

const AlgebraElement& element_of(const GroupoidInstance& G, const BasePoint& x, const char* what) {
  const auto* e = std::get_if<AlgebraElement>(&x.value);
  if (e == nullptr || !(e->shape() == G.shape())) foreign(what);
  return *e;
}

const RealVector& vector_of(const GroupoidInstance& G, const BasePoint& x, const char* what) {
  const auto* v = std::get_if<RealVector>(&x.value);
  if (v == nullptr || v->size() != G.dim()) foreign(what);
  return *v;
}

RealMatrix random_real_invertible(sampling::engine& rng, std::size_t n) {
  RealMatrix m(n, n);
  for (double& v : m.entries()) v = std::normal_distribution<double>(0.0, 1.0)(rng);
  const auto f = svd(m);
  RealMatrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = sampling::uniform(rng, 0.5, 2.0);
  return f.u * d * f.v.adjoint();
}

// Conjugator S (and its inverse) with condition number at most 4, per block.
std::pair<AlgebraElement, AlgebraElement> random_conjugator(sampling::engine& rng, const AlgebraShape& shape) {
  std::vector<ComplexMatrix> s, sinv;
  for (std::size_t n : shape.block_sizes()) {
    const ComplexMatrix w1 = sampling::haar_unitary(rng, n);
    const ComplexMatrix w2 = sampling::haar_unitary(rng, n);
    ComplexMatrix d(n, n), dinv(n, n);
    for (std::size_t k = 0; k < n; ++k) {
      const double v = sampling::uniform(rng, 0.5, 2.0);
      d(k, k) = v;
      dinv(k, k) = 1.0 / v;
    }
    s.push_back(w1 * d * w2);
    sinv.push_back(w2.adjoint() * dinv * w1.adjoint());
  }
  return {AlgebraElement(shape, std::move(s)), AlgebraElement(shape, std::move(sinv))};
}

// Orthonormal basis (columns) of the range of a projection block.
ComplexMatrix range_basis(const ComplexMatrix& p, std::size_t r) {
  const auto e = hermitian_eigen(p);
  const std::size_t n = p.rows();
  ComplexMatrix w(n, r);
  for (std::size_t j = 0; j < r; ++j)
    for (std::size_t i = 0; i < n; ++i) w(i, j) = e.vectors(i, n - r + j);
  return w;
}

}  // namespace

const char* kind_name(GroupoidKind k) noexcept {
  switch (k) {
    case GroupoidKind::ginv: return "ginv";
    case GroupoidKind::partial_isometry: return "partial_isometry";
    case GroupoidKind::action: return "action";
    case GroupoidKind::pair: return "pair";
    case GroupoidKind::disjoint_union: return "disjoint_union";
  }
  return "unknown";
}

GroupoidKind Arrow::kind() const noexcept {
  switch (data.index()) {
    case 0: return GroupoidKind::ginv;
    case 1: return GroupoidKind::partial_isometry;
    case 2: return GroupoidKind::action;
    default: return GroupoidKind::pair;
  }
}

const AlgebraElement& BasePoint::element() const {
  if (const auto* e = std::get_if<AlgebraElement>(&value)) return *e;
  throw input_error("base point is a vector, not an algebra element");
}

const RealVector& BasePoint::vector() const {
  if (const auto* v = std::get_if<RealVector>(&value)) return *v;
  throw input_error("base point is an algebra element, not a vector");
}

GroupoidInstance GroupoidInstance::ginv(AlgebraShape shape, ToleranceConfig tol) {
  tol.validate();
  GroupoidInstance G(GroupoidKind::ginv, tol);
  G.shape_ = std::move(shape);
  return G;
}

GroupoidInstance GroupoidInstance::partial_isometry(AlgebraShape shape, ToleranceConfig tol) {
  tol.validate();
  GroupoidInstance G(GroupoidKind::partial_isometry, tol);
  G.shape_ = std::move(shape);
  return G;
}

GroupoidInstance GroupoidInstance::action(std::size_t n, ToleranceConfig tol) {
  tol.validate();
  if (n == 0) throw input_error("action groupoid: dimension must be at least 1");
  GroupoidInstance G(GroupoidKind::action, tol);
  G.dim_ = n;
  return G;
}

GroupoidInstance GroupoidInstance::pair(std::size_t k, std::optional<std::size_t> points, ToleranceConfig tol) {
  tol.validate();
  if (k == 0) throw input_error("pair groupoid: dimension must be at least 1");
  if (points) {
    if (*points == 0) throw input_error("pair groupoid: point count must be at least 1");
    if (k != 1) throw input_error("pair groupoid: a finite point set lives in dimension 1");
  }
  GroupoidInstance G(GroupoidKind::pair, tol);
  G.dim_ = k;
  G.points_ = points;
  return G;
}

GroupoidInstance GroupoidInstance::disjoint_union(std::vector<GroupoidInstance> parts) {
  if (parts.empty()) throw input_error("disjoint union: at least one component required");
  for (const auto& p : parts)
    if (p.kind() == GroupoidKind::disjoint_union) throw input_error("disjoint union: components must not be unions");
  GroupoidInstance G(GroupoidKind::disjoint_union, parts.front().tol());
  G.parts_ = std::move(parts);
  return G;
}

const AlgebraShape& GroupoidInstance::shape() const {
  if (!shape_) throw input_error(std::string(kind_name(kind_)) + " groupoid has no algebra shape");
  return *shape_;
}

const GroupoidInstance& GroupoidInstance::component(std::size_t i) const {
  if (i >= parts_.size()) throw input_error("disjoint union: component index out of range");
  return parts_[i];
}

Arrow make_arrow(GInvPair p, std::size_t component) { return {std::move(p), component}; }
Arrow make_arrow(PartialIsometryArrow u, std::size_t component) { return {std::move(u), component}; }
Arrow make_arrow(ActionArrow a, std::size_t component) { return {std::move(a), component}; }
Arrow make_arrow(PairArrow p, std::size_t component) { return {std::move(p), component}; }
BasePoint make_point(AlgebraElement x, std::size_t component) { return {std::move(x), component}; }
BasePoint make_point(RealVector x, std::size_t component) { return {std::move(x), component}; }

double base_residual(const GroupoidInstance& G0, const BasePoint& x) {
  const GroupoidInstance& G = leaf(G0, x.component);
  switch (G.kind()) {
    case GroupoidKind::ginv: {
      const AlgebraElement& q = element_of(G, x, "base_residual");
      const double n = norm(q);
      return distance(q * q, q) / (1.0 + n * n);
    }
    case GroupoidKind::partial_isometry: {
      const AlgebraElement& p = element_of(G, x, "base_residual");
      const double n = norm(p);
      return std::max(distance(p * p, p) / (1.0 + n * n), distance(element_adjoint(p), p) / (1.0 + n));
    }
    case GroupoidKind::action: {
      const RealVector& v = vector_of(G, x, "base_residual");
      return all_finite(v) ? 0.0 : kInf;
    }
    case GroupoidKind::pair: {
      const RealVector& v = vector_of(G, x, "base_residual");
      if (!all_finite(v)) return kInf;
      if (!G.points()) return 0.0;
      const double r = std::round(v[0]);
      if (r < 0.0 || r >= static_cast<double>(*G.points())) return kInf;
      return std::abs(v[0] - r);
    }
    case GroupoidKind::disjoint_union: break;
  }
  foreign("base_residual");
}

double arrow_residual(const GroupoidInstance& G0, const Arrow& g) {
  const GroupoidInstance& G = leaf(G0, g.component);
  if (g.kind() != G.kind()) foreign("arrow_residual");
  switch (G.kind()) {
    case GroupoidKind::ginv: {
      const auto& p = std::get<GInvPair>(g.data);
      if (!(p.a().shape() == G.shape())) foreign("arrow_residual");
      return p.scaled_residual();
    }
    case GroupoidKind::partial_isometry: {
      const AlgebraElement& u = std::get<PartialIsometryArrow>(g.data).u;
      if (!(u.shape() == G.shape())) foreign("arrow_residual");
      const double n = norm(u);
      return distance(u * element_adjoint(u) * u, u) / (1.0 + n * n * n);
    }
    case GroupoidKind::action: {
      const auto& a = std::get<ActionArrow>(g.data);
      if (a.x.size() != G.dim() || a.g.rows() != G.dim() || a.g.cols() != G.dim()) foreign("arrow_residual");
      if (!all_finite(a.x) || !a.g.all_finite()) return kInf;
      return numerical_rank(a.g, G.tol()) == G.dim() ? 0.0 : kInf;
    }
    case GroupoidKind::pair: {
      const auto& p = std::get<PairArrow>(g.data);
      return std::max(base_residual(G, make_point(p.x)), base_residual(G, make_point(p.y)));
    }
    case GroupoidKind::disjoint_union: break;
  }
  foreign("arrow_residual");
}

bool contains(const GroupoidInstance& G, const Arrow& g) { return arrow_residual(G, g) <= leaf(G, g.component).tol().residual_tol; }
bool contains(const GroupoidInstance& G, const BasePoint& x) { return base_residual(G, x) <= leaf(G, x.component).tol().residual_tol; }

BasePoint source(const GroupoidInstance& G0, const Arrow& g) {
  const GroupoidInstance& G = leaf(G0, g.component);
  switch (G.kind()) {
    case GroupoidKind::ginv: {
      const auto& p = arrow_as<GInvPair>(g, G.kind(), "source");
      return make_point(p.b() * p.a(), g.component);
    }
    case GroupoidKind::partial_isometry: {
      const AlgebraElement& u = arrow_as<PartialIsometryArrow>(g, G.kind(), "source").u;
      return make_point(element_adjoint(u) * u, g.component);
    }
    case GroupoidKind::action: return make_point(arrow_as<ActionArrow>(g, G.kind(), "source").x, g.component);
    case GroupoidKind::pair: return make_point(arrow_as<PairArrow>(g, G.kind(), "source").x, g.component);
    case GroupoidKind::disjoint_union: break;
  }
  foreign("source");
}

BasePoint target(const GroupoidInstance& G0, const Arrow& g) {
  const GroupoidInstance& G = leaf(G0, g.component);
  switch (G.kind()) {
    case GroupoidKind::ginv: {
      const auto& p = arrow_as<GInvPair>(g, G.kind(), "target");
      return make_point(p.a() * p.b(), g.component);
    }
    case GroupoidKind::partial_isometry: {
      const AlgebraElement& u = arrow_as<PartialIsometryArrow>(g, G.kind(), "target").u;
      return make_point(u * element_adjoint(u), g.component);
    }
    case GroupoidKind::action: {
      const auto& a = arrow_as<ActionArrow>(g, G.kind(), "target");
      return make_point(matvec(a.g, a.x), g.component);
    }
    case GroupoidKind::pair: return make_point(arrow_as<PairArrow>(g, G.kind(), "target").y, g.component);
    case GroupoidKind::disjoint_union: break;
  }
  foreign("target");
}

double base_norm(const BasePoint& x) {
  if (const auto* e = std::get_if<AlgebraElement>(&x.value)) return norm(*e);
  return vec_max_abs(std::get<RealVector>(x.value));
}

double base_distance(const BasePoint& x, const BasePoint& y) {
  if (x.component != y.component || x.value.index() != y.value.index()) return kInf;
  if (const auto* e = std::get_if<AlgebraElement>(&x.value)) {
    const auto& f = std::get<AlgebraElement>(y.value);
    if (!(e->shape() == f.shape())) return kInf;
    return distance(*e, f);
  }
  return vec_distance(std::get<RealVector>(x.value), std::get<RealVector>(y.value));
}

double arrow_norm(const Arrow& g) {
  return std::visit(
      [](const auto& d) -> double {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, GInvPair>) return std::max(norm(d.a()), norm(d.b()));
        else if constexpr (std::is_same_v<D, PartialIsometryArrow>) return norm(d.u);
        else if constexpr (std::is_same_v<D, ActionArrow>) return std::max(vec_max_abs(d.x), max_abs(d.g));
        else return std::max(vec_max_abs(d.x), vec_max_abs(d.y));
      },
      g.data);
}

double arrow_distance(const Arrow& g, const Arrow& h) {
  if (g.component != h.component || g.kind() != h.kind()) return kInf;
  switch (g.kind()) {
    case GroupoidKind::ginv: {
      const auto& p = std::get<GInvPair>(g.data);
      const auto& q = std::get<GInvPair>(h.data);
      if (!(p.a().shape() == q.a().shape())) return kInf;
      return std::max(distance(p.a(), q.a()), distance(p.b(), q.b()));
    }
    case GroupoidKind::partial_isometry: {
      const auto& u = std::get<PartialIsometryArrow>(g.data).u;
      const auto& v = std::get<PartialIsometryArrow>(h.data).u;
      if (!(u.shape() == v.shape())) return kInf;
      return distance(u, v);
    }
    case GroupoidKind::action: {
      const auto& a = std::get<ActionArrow>(g.data);
      const auto& b = std::get<ActionArrow>(h.data);
      if (a.g.rows() != b.g.rows() || a.g.cols() != b.g.cols()) return kInf;
      return std::max(vec_distance(a.x, b.x), max_abs(a.g - b.g));
    }
    default: {
      const auto& a = std::get<PairArrow>(g.data);
      const auto& b = std::get<PairArrow>(h.data);
      return std::max(vec_distance(a.x, b.x), vec_distance(a.y, b.y));
    }
  }
}

Arrow compose(const GroupoidInstance& G0, const Arrow& g1, const Arrow& g2) {
  if (g1.component != g2.component)
    throw composability_error("compose: arrows lie in different components of a disjoint union", kInf);
  const GroupoidInstance& G = leaf(G0, g1.component);
  const BasePoint s1 = source(G0, g1);
  const BasePoint t2 = target(G0, g2);
  const double mismatch = base_distance(s1, t2);
  if (!(mismatch <= G.tol().residual_tol * (1.0 + std::max(base_norm(s1), base_norm(t2)))))
    throw composability_error("compose: source of the first arrow differs from target of the second by " +
                                  format_double(mismatch),
                              mismatch);
  const std::size_t c = g1.component;
  switch (G.kind()) {
    case GroupoidKind::ginv: {
      const auto& p1 = std::get<GInvPair>(g1.data);
      const auto& p2 = std::get<GInvPair>(g2.data);
      return make_arrow(GInvPair::unchecked(p1.a() * p2.a(), p2.b() * p1.b()), c);
    }
    case GroupoidKind::partial_isometry:
      return make_arrow(PartialIsometryArrow{std::get<PartialIsometryArrow>(g1.data).u *
                                             std::get<PartialIsometryArrow>(g2.data).u},
                        c);
    case GroupoidKind::action: {
      const auto& h = std::get<ActionArrow>(g1.data);
      const auto& g = std::get<ActionArrow>(g2.data);
      return make_arrow(ActionArrow{g.x, h.g * g.g}, c);
    }
    case GroupoidKind::pair: {
      const auto& yz = std::get<PairArrow>(g1.data);
      const auto& xy = std::get<PairArrow>(g2.data);
      return make_arrow(PairArrow{xy.x, yz.y}, c);
    }
    case GroupoidKind::disjoint_union: break;
  }
  foreign("compose");
}

Arrow invert(const GroupoidInstance& G0, const Arrow& g) {
  const GroupoidInstance& G = leaf(G0, g.component);
  switch (G.kind()) {
    case GroupoidKind::ginv: {
      const auto& p = arrow_as<GInvPair>(g, G.kind(), "invert");
      return make_arrow(GInvPair::unchecked(p.b(), p.a()), g.component);
    }
    case GroupoidKind::partial_isometry:
      return make_arrow(PartialIsometryArrow{element_adjoint(arrow_as<PartialIsometryArrow>(g, G.kind(), "invert").u)},
                        g.component);
    case GroupoidKind::action: {
      const auto& a = arrow_as<ActionArrow>(g, G.kind(), "invert");
      return make_arrow(ActionArrow{matvec(a.g, a.x), real_inverse(a.g, G.tol())}, g.component);
    }
    case GroupoidKind::pair: {
      const auto& p = arrow_as<PairArrow>(g, G.kind(), "invert");
      return make_arrow(PairArrow{p.y, p.x}, g.component);
    }
    case GroupoidKind::disjoint_union: break;
  }
  foreign("invert");
}

Arrow identity_at(const GroupoidInstance& G0, const BasePoint& x) {
  const GroupoidInstance& G = leaf(G0, x.component);
  if (!(base_residual(G0, x) <= G.tol().residual_tol))
    throw input_error("identity_at: point is not in the base of the " + std::string(kind_name(G.kind())) + " groupoid");
  switch (G.kind()) {
    case GroupoidKind::ginv: {
      const AlgebraElement& q = x.element();
      return make_arrow(GInvPair::unchecked(q, q), x.component);
    }
    case GroupoidKind::partial_isometry: return make_arrow(PartialIsometryArrow{x.element()}, x.component);
    case GroupoidKind::action: return make_arrow(ActionArrow{x.vector(), RealMatrix::identity(G.dim())}, x.component);
    case GroupoidKind::pair: return make_arrow(PairArrow{x.vector(), x.vector()}, x.component);
    case GroupoidKind::disjoint_union: break;
  }
  foreign("identity_at");
}

Arrow j_to_g_morphism(const AlgebraElement& u, const ToleranceConfig& tol) {
  if (!classify(u, tol).partial_isometry) throw precondition_error("j_to_g_morphism: element is not a partial isometry");
  return make_arrow(GInvPair::make(u, element_adjoint(u), tol));
}

BasePoint sample_base_point(const GroupoidInstance& G, sampling::engine& rng) {
  switch (G.kind()) {
    case GroupoidKind::ginv:
      return make_point(sampling::random_idempotent(rng, G.shape(), sampling::random_signature(rng, G.shape())));
    case GroupoidKind::partial_isometry:
      return make_point(sampling::random_projection(rng, G.shape(), sampling::random_signature(rng, G.shape())));
    case GroupoidKind::action: return make_point(sampling::gaussian_vector(rng, G.dim()));
    case GroupoidKind::pair:
      if (G.points()) return make_point(RealVector{static_cast<double>(sampling::uniform_index(rng, 0, *G.points() - 1))});
      return make_point(sampling::gaussian_vector(rng, G.dim()));
    case GroupoidKind::disjoint_union: {
      const std::size_t c = sampling::uniform_index(rng, 0, G.components().size() - 1);
      BasePoint x = sample_base_point(G.component(c), rng);
      x.component = c;
      return x;
    }
  }
  foreign("sample_base_point");
}

Arrow sample_arrow(const GroupoidInstance& G, sampling::engine& rng) {
  switch (G.kind()) {
    case GroupoidKind::ginv: {
      const AlgebraElement a =
          sampling::random_with_signature(rng, G.shape(), sampling::random_signature(rng, G.shape()));
      return make_arrow(std::move(sample_ginv_pairs(a, rng(), 1, G.tol()).front()));
    }
    case GroupoidKind::partial_isometry:
      return make_arrow(PartialIsometryArrow{
          sampling::random_partial_isometry(rng, G.shape(), sampling::random_signature(rng, G.shape()))});
    case GroupoidKind::action: {
      RealVector x = sampling::gaussian_vector(rng, G.dim());
      return make_arrow(ActionArrow{std::move(x), random_real_invertible(rng, G.dim())});
    }
    case GroupoidKind::pair: {
      BasePoint x = sample_base_point(G, rng);
      BasePoint y = sample_base_point(G, rng);
      return make_arrow(PairArrow{x.vector(), y.vector()});
    }
    case GroupoidKind::disjoint_union: {
      const std::size_t c = sampling::uniform_index(rng, 0, G.components().size() - 1);
      Arrow g = sample_arrow(G.component(c), rng);
      g.component = c;
      return g;
    }
  }
  foreign("sample_arrow");
}

BasePoint sample_orbit_point(const GroupoidInstance& G0, const BasePoint& x, sampling::engine& rng) {
  const GroupoidInstance& G = leaf(G0, x.component);
  switch (G.kind()) {
    case GroupoidKind::ginv: {
      const auto [s, sinv] = random_conjugator(rng, G.shape());
      return make_point(s * element_of(G, x, "sample_orbit_point") * sinv, x.component);
    }
    case GroupoidKind::partial_isometry: {
      const AlgebraElement w = sampling::haar_unitary(rng, G.shape());
      return make_point(w * element_of(G, x, "sample_orbit_point") * element_adjoint(w), x.component);
    }
    case GroupoidKind::action:
      return make_point(matvec(random_real_invertible(rng, G.dim()), vector_of(G, x, "sample_orbit_point")),
                        x.component);
    case GroupoidKind::pair: {
      BasePoint y = sample_base_point(G, rng);
      y.component = x.component;
      return y;
    }
    case GroupoidKind::disjoint_union: break;
  }
  foreign("sample_orbit_point");
}

Arrow arrow_between(const GroupoidInstance& G0, const BasePoint& from, const BasePoint& to, sampling::engine& rng) {
  if (from.component != to.component) throw orbit_error("arrow_between: points lie in different components");
  const GroupoidInstance& G = leaf(G0, from.component);
  const std::size_t c = from.component;
  switch (G.kind()) {
    case GroupoidKind::ginv: {
      const AlgebraElement& x = element_of(G, from, "arrow_between");
      const AlgebraElement& y = element_of(G, to, "arrow_between");
      if (rank_signature(x, G.tol()) != rank_signature(y, G.tol()))
        throw orbit_error("arrow_between: idempotents have different rank signatures");
      // a = y M x maps range(x) onto range(y); b = x a^+ y is the reflexive
      // inverse with ba = x and ab = y.
      const AlgebraElement a = y * sampling::gaussian_element(rng, G.shape()) * x;
      if (rank_signature(a, G.tol()) != rank_signature(x, G.tol()))
        throw orbit_error("arrow_between: degenerate connecting element");
      const AlgebraElement b = x * moore_penrose(a, G.tol()) * y;
      return make_arrow(GInvPair::unchecked(a, b), c);
    }
    case GroupoidKind::partial_isometry: {
      const AlgebraElement& p = element_of(G, from, "arrow_between");
      const AlgebraElement& q = element_of(G, to, "arrow_between");
      const auto rp = rank_signature(p, G.tol());
      if (rp != rank_signature(q, G.tol())) throw orbit_error("arrow_between: projections have different ranks");
      std::vector<ComplexMatrix> blocks;
      for (std::size_t i = 0; i < G.shape().block_count(); ++i) {
        const ComplexMatrix wp = range_basis(p.block(i), rp[i]);
        const ComplexMatrix wq = range_basis(q.block(i), rp[i]);
        blocks.push_back(wq * sampling::haar_unitary(rng, rp[i]) * wp.adjoint());
      }
      return make_arrow(PartialIsometryArrow{AlgebraElement(G.shape(), std::move(blocks))}, c);
    }
    case GroupoidKind::action: {
      const RealVector& x = vector_of(G, from, "arrow_between");
      const RealVector& y = vector_of(G, to, "arrow_between");
      const double nx = vec_max_abs(x), ny = vec_max_abs(y);
      if ((nx == 0.0) != (ny == 0.0)) throw orbit_error("arrow_between: zero and nonzero vectors lie in different orbits");
      if (nx == 0.0) return make_arrow(ActionArrow{x, random_real_invertible(rng, G.dim())}, c);
      // Bases with first vector x (resp. y); g = R_y R_x^{-1} sends x to y.
      const std::size_t n = G.dim();
      RealMatrix rx(n, n), ry(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        rx(i, 0) = x[i];
        ry(i, 0) = y[i];
        for (std::size_t j = 1; j < n; ++j) {
          rx(i, j) = std::normal_distribution<double>(0.0, 1.0)(rng);
          ry(i, j) = std::normal_distribution<double>(0.0, 1.0)(rng);
        }
      }
      return make_arrow(ActionArrow{x, ry * real_inverse(rx, G.tol())}, c);
    }
    case GroupoidKind::pair:
      return make_arrow(PairArrow{vector_of(G, from, "arrow_between"), vector_of(G, to, "arrow_between")}, c);
    case GroupoidKind::disjoint_union: break;
  }
  foreign("arrow_between");
}

namespace {

struct CheckAccumulator {
  std::string anchor;
  std::size_t samples = 0;
  std::size_t failures = 0;
  double max_residual = 0.0;
  std::string error_category;
  std::string message;
};

class AxiomLedger {
 public:
  AxiomLedger(const GroupoidInstance& G, std::string prefix) : G_(G), prefix_(std::move(prefix)) {}

  void note(const std::string& name, const char* anchor, double scaled_residual) {
    auto& acc = slot(name, anchor);
    ++acc.samples;
    if (std::isnan(scaled_residual) || scaled_residual > G_.tol().residual_tol) ++acc.failures;
    if (!(scaled_residual <= acc.max_residual)) acc.max_residual = scaled_residual;
  }

  void error(const std::string& name, const char* anchor, const ginv::error& e) {
    auto& acc = slot(name, anchor);
    ++acc.samples;
    ++acc.failures;
    if (acc.error_category.empty()) {
      acc.error_category = e.category();
      acc.message = e.what();
    }
  }

  void bool_check(const std::string& name, const char* anchor, bool ok) {
    auto& acc = slot(name, anchor);
    ++acc.samples;
    if (!ok) ++acc.failures;
  }

  void emit(ExperimentReport& rep) const {
    for (const auto& [name, acc] : checks_) {
      CheckRecord r;
      r.name = name;
      r.pass = acc.failures == 0 && acc.samples > 0;
      r.anchor = acc.anchor;
      r.values = {{"samples", static_cast<double>(acc.samples)},
                  {"failures", static_cast<double>(acc.failures)},
                  {"max_residual", acc.max_residual}};
      r.error_category = acc.error_category;
      r.message = acc.message;
      rep.add(std::move(r));
    }
  }

 private:
  CheckAccumulator& slot(const std::string& name, const char* anchor) {
    auto& acc = checks_[prefix_ + name];
    if (acc.anchor.empty()) acc.anchor = anchor;
    return acc;
  }

  const GroupoidInstance& G_;
  std::string prefix_;
  std::map<std::string, CheckAccumulator> checks_;
};

constexpr const char* kAnchorMembership = "arrows satisfy the defining equations of the groupoid";
constexpr const char* kAnchorBase = "s(g) and t(g) lie in the base";
constexpr const char* kAnchorClosure = "gh is an arrow whenever s(g) = t(h)";
constexpr const char* kAnchorAssoc = "(gh)k = g(hk) for composable g, h, k";
constexpr const char* kAnchorSrcProd = "s(gh) = s(h)";
constexpr const char* kAnchorTgtProd = "t(gh) = t(g)";
constexpr const char* kAnchorLeftId = "1_t(g) g = g";
constexpr const char* kAnchorRightId = "g 1_s(g) = g";
constexpr const char* kAnchorIdMember = "1_x is an arrow with s(1_x) = t(1_x) = x";
constexpr const char* kAnchorInvMember = "g^-1 is an arrow";
constexpr const char* kAnchorLeftInv = "g^-1 g = 1_s(g)";
constexpr const char* kAnchorRightInv = "g g^-1 = 1_t(g)";
constexpr const char* kAnchorSrcInv = "s(g^-1) = t(g) and t(g^-1) = s(g)";
constexpr const char* kAnchorSampling = "composable triples can be generated in every orbit";
constexpr const char* kAnchorDisjoint = "arrows of different components never compose";

template <class F>
void guarded(AxiomLedger& L, const std::string& name, const char* anchor, F&& f) {
  try {
    f();
  } catch (const ginv::error& e) {
    L.error(name, anchor, e);
  }
}

// Identity, inverse and membership checks on a single arrow.
void check_single(const GroupoidInstance& G, const Arrow& g, AxiomLedger& L) {
  const double n = arrow_norm(g);
  const double scale = 1.0 + n * n * n;
  guarded(L, "G1.arrow_membership", kAnchorMembership, [&] { L.note("G1.arrow_membership", kAnchorMembership, arrow_residual(G, g)); });
  guarded(L, "G1.source_target_in_base", kAnchorBase, [&] {
    L.note("G1.source_target_in_base", kAnchorBase,
           std::max(base_residual(G, source(G, g)), base_residual(G, target(G, g))));
  });
  guarded(L, "G3.identity_membership", kAnchorIdMember, [&] {
    const BasePoint s = source(G, g);
    const Arrow id = identity_at(G, s);
    L.note("G3.identity_membership", kAnchorIdMember,
           std::max({arrow_residual(G, id), base_distance(source(G, id), s) / scale,
                     base_distance(target(G, id), s) / scale}));
  });
  guarded(L, "G3.right_identity", kAnchorRightId, [&] {
    L.note("G3.right_identity", kAnchorRightId, arrow_distance(compose(G, g, identity_at(G, source(G, g))), g) / scale);
  });
  guarded(L, "G3.left_identity", kAnchorLeftId, [&] {
    L.note("G3.left_identity", kAnchorLeftId, arrow_distance(compose(G, identity_at(G, target(G, g)), g), g) / scale);
  });
  guarded(L, "G4.inverse_membership", kAnchorInvMember, [&] { L.note("G4.inverse_membership", kAnchorInvMember, arrow_residual(G, invert(G, g))); });
  guarded(L, "G4.right_inverse", kAnchorRightInv, [&] {
    L.note("G4.right_inverse", kAnchorRightInv,
           arrow_distance(compose(G, g, invert(G, g)), identity_at(G, target(G, g))) / scale);
  });
  guarded(L, "G4.left_inverse", kAnchorLeftInv, [&] {
    L.note("G4.left_inverse", kAnchorLeftInv,
           arrow_distance(compose(G, invert(G, g), g), identity_at(G, source(G, g))) / scale);
  });
  guarded(L, "G4.source_of_inverse", kAnchorSrcInv, [&] {
    const Arrow gi = invert(G, g);
    L.note("G4.source_of_inverse", kAnchorSrcInv,
           std::max(base_distance(source(G, gi), target(G, g)), base_distance(target(G, gi), source(G, g))) / scale);
  });
}

void check_triple(const GroupoidInstance& G, std::size_t c, sampling::engine& rng, AxiomLedger& L) {
  std::optional<Arrow> g1, g2, g3;
  guarded(L, "G2.triple_generation", kAnchorSampling, [&] {
    Arrow a3 = sample_arrow(leaf(G, c), rng);
    a3.component = c;
    const BasePoint x3 = target(G, a3);
    const BasePoint x2 = sample_orbit_point(G, x3, rng);
    Arrow a2 = arrow_between(G, x3, x2, rng);
    const BasePoint x1 = sample_orbit_point(G, x2, rng);
    g1 = arrow_between(G, x2, x1, rng);
    g2 = std::move(a2);
    g3 = std::move(a3);
    L.bool_check("G2.triple_generation", kAnchorSampling, true);
  });
  if (!g1) return;
  const double n = std::max({arrow_norm(*g1), arrow_norm(*g2), arrow_norm(*g3)});
  const double scale = 1.0 + n * n * n;
  for (const Arrow* g : {&*g1, &*g2, &*g3}) check_single(G, *g, L);
  guarded(L, "G2.closure", kAnchorClosure, [&] {
    const Arrow g12 = compose(G, *g1, *g2);
    const Arrow g23 = compose(G, *g2, *g3);
    const Arrow left = compose(G, g12, *g3);
    const Arrow right = compose(G, *g1, g23);
    L.note("G2.closure", kAnchorClosure,
           std::max({arrow_residual(G, g12), arrow_residual(G, g23), arrow_residual(G, left), arrow_residual(G, right)}));
    L.note("G2.associativity", kAnchorAssoc, arrow_distance(left, right) / scale);
    L.note("G2.source_of_product", kAnchorSrcProd, base_distance(source(G, g12), source(G, *g2)) / scale);
    L.note("G2.target_of_product", kAnchorTgtProd, base_distance(target(G, g12), target(G, *g1)) / scale);
  });
  if (G.kind() == GroupoidKind::disjoint_union && G.components().size() > 1) {
    // An arrow from another component must be rejected by compose.
    const std::size_t other = (c + 1) % G.components().size();
    bool rejected = false;
    try {
      Arrow h = sample_arrow(G.component(other), rng);
      h.component = other;
      (void)compose(G, *g1, h);
    } catch (const composability_error&) {
      rejected = true;
    } catch (const ginv::error&) {
    }
    L.bool_check("disjointness.cross_component_rejected", kAnchorDisjoint, rejected);
  }
}

}  // namespace

ExperimentReport verify_axioms(const GroupoidInstance& G, std::uint64_t seed, std::size_t n_samples,
                               std::span<const Arrow> injected) {
  if (n_samples == 0) throw input_error("verify_axioms: n_samples must be at least 1");
  ExperimentReport rep(std::string("axioms.") + kind_name(G.kind()));
  rep.echo("kind", kind_name(G.kind()));
  rep.echo("seed", std::to_string(seed));
  rep.echo("samples", std::to_string(n_samples));
  rep.echo_tolerances(G.tol());

  AxiomLedger L(G, "");
  const std::size_t parts = G.kind() == GroupoidKind::disjoint_union ? G.components().size() : 1;
  for (std::size_t i = 0; i < n_samples; ++i) {
    auto rng = sampling::make_engine(seed, 0x1000 + i);
    check_triple(G, i % parts, rng, L);
  }
  L.emit(rep);

  if (!injected.empty()) {
    AxiomLedger inj(G, "injected.");
    for (const Arrow& g : injected) check_single(G, g, inj);
    inj.emit(rep);
    rep.echo("injected", std::to_string(injected.size()));
  }
  rep.sort_canonical();
  return rep;
}

}  // namespace ginv

#include "ginv/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>

#include "ginv/linalg.hpp"

namespace ginv {

namespace {

const GroupoidInstance& leaf_of(const GroupoidInstance& G, std::size_t component) {
  if (G.kind() == GroupoidKind::disjoint_union) return G.component(component);
  if (component != 0) throw input_error("component index given for a groupoid that is not a disjoint union");
  return G;
}

RealVector concat(const RealVector& a, const RealVector& b) {
  RealVector out(a);
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Real coordinates of arrows of one leaf instance together with the
// defining equations (empty when the arrows form an open set) and s, t.
struct ArrowChart {
  std::size_t dim = 0;
  real_map defining;
  real_map s;
  real_map t;
};

ArrowChart chart_for(const GroupoidInstance& G) {
  ArrowChart c;
  switch (G.kind()) {
    case GroupoidKind::ginv: {
      const AlgebraShape shape = G.shape();
      const std::size_t D = shape.real_dim();
      c.dim = 2 * D;
      auto split = [shape, D](std::span<const double> v) {
        return std::pair{from_real(shape, v.subspan(0, D)), from_real(shape, v.subspan(D, D))};
      };
      c.defining = [split](std::span<const double> v) {
        const auto [a, b] = split(v);
        return concat(to_real(a * b * a - a), to_real(b * a * b - b));
      };
      c.s = [split](std::span<const double> v) {
        const auto [a, b] = split(v);
        return to_real(b * a);
      };
      c.t = [split](std::span<const double> v) {
        const auto [a, b] = split(v);
        return to_real(a * b);
      };
      break;
    }
    case GroupoidKind::partial_isometry: {
      const AlgebraShape shape = G.shape();
      c.dim = shape.real_dim();
      c.defining = [shape](std::span<const double> v) {
        const AlgebraElement u = from_real(shape, v);
        return to_real(u * element_adjoint(u) * u - u);
      };
      c.s = [shape](std::span<const double> v) {
        const AlgebraElement u = from_real(shape, v);
        return to_real(element_adjoint(u) * u);
      };
      c.t = [shape](std::span<const double> v) {
        const AlgebraElement u = from_real(shape, v);
        return to_real(u * element_adjoint(u));
      };
      break;
    }
    case GroupoidKind::action: {
      const std::size_t n = G.dim();
      c.dim = n + n * n;
      c.s = [n](std::span<const double> v) { return RealVector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(n)); };
      c.t = [n](std::span<const double> v) {
        RealVector y(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = 0; j < n; ++j) y[i] += v[n + i * n + j] * v[j];
        return y;
      };
      break;
    }
    case GroupoidKind::pair: {
      if (G.points()) throw precondition_error("a pair groupoid on a finite point set has no tangent spaces");
      const std::size_t k = G.dim();
      c.dim = 2 * k;
      c.s = [k](std::span<const double> v) { return RealVector(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(k)); };
      c.t = [k](std::span<const double> v) { return RealVector(v.begin() + static_cast<std::ptrdiff_t>(k), v.end()); };
      break;
    }
    case GroupoidKind::disjoint_union: throw input_error("chart requested for a disjoint union");
  }
  return c;
}

RealVector arrow_coords(const Arrow& g) {
  return std::visit(
      [](const auto& d) -> RealVector {
        using D = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<D, GInvPair>) return concat(to_real(d.a()), to_real(d.b()));
        else if constexpr (std::is_same_v<D, PartialIsometryArrow>) return to_real(d.u);
        else if constexpr (std::is_same_v<D, ActionArrow>) {
          RealVector v = d.x;
          v.insert(v.end(), d.g.entries().begin(), d.g.entries().end());
          return v;
        } else
          return concat(d.x, d.y);
      },
      g.data);
}

ToleranceConfig fd_tolerance(const ToleranceConfig& tol) { return tol.for_finite_differences(); }

std::size_t rank_or_zero(const RealMatrix& m, const ToleranceConfig& tol, double scale) {
  return m.rows() == 0 || m.cols() == 0 ? 0 : numerical_rank(m, tol, scale);
}

RealMatrix kernel_or_identity(const RealMatrix& m, std::size_t dim, const ToleranceConfig& tol, double scale) {
  if (m.rows() == 0) return RealMatrix::identity(dim);
  return kernel_basis(m, tol, scale);
}

// Orthonormal basis of the arrow tangent space at coordinates p.
RealMatrix arrow_tangent(const ArrowChart& c, const RealVector& p, const ToleranceConfig& tol) {
  if (!c.defining) return RealMatrix::identity(c.dim);
  return kernel_basis(finite_diff_jacobian(c.defining, p, tol), fd_tolerance(tol));
}

// Base tangent space as orthonormal columns in base coordinates.
RealMatrix base_tangent_matrix(const GroupoidInstance& G, const BasePoint& x, const ToleranceConfig& tol) {
  switch (G.kind()) {
    case GroupoidKind::ginv: return tangent_basis(BaseManifold::Q, x.element(), tol).coords;
    case GroupoidKind::partial_isometry: return tangent_basis(BaseManifold::P, x.element(), tol).coords;
    case GroupoidKind::action:
    case GroupoidKind::pair:
      if (G.points()) throw precondition_error("a pair groupoid on a finite point set has no tangent spaces");
      return RealMatrix::identity(G.dim());
    case GroupoidKind::disjoint_union: break;
  }
  throw input_error("base tangent requested for a disjoint union");
}

// Leaf-level copies: component indices only mean something to the union.
BasePoint localize(BasePoint x) {
  x.component = 0;
  return x;
}

Arrow localize(Arrow g) {
  g.component = 0;
  return g;
}

void require_base(const GroupoidInstance& G, const BasePoint& x, const char* what) {
  if (!contains(G, x)) throw precondition_error(std::string(what) + ": point is not in the base of the groupoid");
}

RealMatrix product_or_empty(const RealMatrix& a, const RealMatrix& b) {
  if (a.cols() != b.rows()) throw input_error("dimension mismatch in tangent computation");
  if (a.rows() == 0 || b.cols() == 0 || a.cols() == 0) return RealMatrix(a.rows(), b.cols());
  return a * b;
}

struct IdentityDifferentials {
  RealMatrix B;   // arrow tangent basis at 1_x
  RealMatrix SB;  // T s restricted to the arrow tangent space
  RealMatrix TB;  // T t restricted likewise
  double scale = 0.0;  // norm of the unrestricted differentials
};

IdentityDifferentials differentials_at_identity(const GroupoidInstance& G, const BasePoint& x,
                                                const ToleranceConfig& tol) {
  const ArrowChart c = chart_for(G);
  const RealVector p = arrow_coords(identity_at(G, x));
  IdentityDifferentials d;
  d.B = arrow_tangent(c, p, tol);
  const RealMatrix js = finite_diff_jacobian(c.s, p, tol);
  const RealMatrix jt = finite_diff_jacobian(c.t, p, tol);
  d.scale = std::max(operator_norm(js), operator_norm(jt));
  d.SB = product_or_empty(js, d.B);
  d.TB = product_or_empty(jt, d.B);
  return d;
}

}  // namespace

TangentBasis tangent_basis(BaseManifold manifold, const AlgebraElement& x, const ToleranceConfig& tol) {
  const ElementClass cls = classify(x, tol);
  if (manifold == BaseManifold::Q ? !cls.idempotent : !cls.projection)
    throw precondition_error(manifold == BaseManifold::Q ? "tangent_basis: point is not an idempotent"
                                                         : "tangent_basis: point is not a projection");
  const AlgebraShape& shape = x.shape();
  const std::size_t D = shape.real_dim();
  const std::size_t rows = manifold == BaseManifold::Q ? D : 2 * D;
  RealMatrix L(rows, D);
  RealVector e(D, 0.0);
  for (std::size_t j = 0; j < D; ++j) {
    e[j] = 1.0;
    const AlgebraElement v = from_real(shape, e);
    e[j] = 0.0;
    const RealVector lin = to_real(x * v + v * x - v);
    for (std::size_t i = 0; i < D; ++i) L(i, j) = lin[i];
    if (manifold == BaseManifold::P) {
      const RealVector sym = to_real(element_adjoint(v) - v);
      for (std::size_t i = 0; i < D; ++i) L(D + i, j) = sym[i];
    }
  }
  TangentBasis tb{x, {}, 0, kernel_basis(L, tol)};
  tb.real_dim = tb.coords.cols();
  for (std::size_t j = 0; j < tb.real_dim; ++j) tb.vectors.push_back(from_real(shape, column(tb.coords, j)));
  return tb;
}

std::size_t base_tangent_dim(const GroupoidInstance& G0, const BasePoint& x0, const ToleranceConfig& tol) {
  const GroupoidInstance& G = leaf_of(G0, x0.component);
  const BasePoint x = localize(x0);
  require_base(G, x, "base_tangent_dim");
  return base_tangent_matrix(G, x, tol).cols();
}

AnchorData fiber_and_anchor(const GroupoidInstance& G0, const BasePoint& x0, const ToleranceConfig& tol) {
  const GroupoidInstance& G = leaf_of(G0, x0.component);
  const BasePoint x = localize(x0);
  require_base(G, x, "fiber_and_anchor");
  const ToleranceConfig fdt = fd_tolerance(tol);
  const IdentityDifferentials d = differentials_at_identity(G, x, tol);
  const RealMatrix K = kernel_or_identity(d.SB, d.B.cols(), fdt, d.scale);
  AnchorData out{x0, product_or_empty(d.B, K), K.cols(), 0, {}, 0, 0};
  const RealMatrix E = base_tangent_matrix(G, x, tol);
  out.base_tangent_dim = E.cols();
  out.anchor_matrix = product_or_empty(E.adjoint(), product_or_empty(d.TB, K));
  out.anchor_rank = rank_or_zero(out.anchor_matrix, fdt, d.scale);
  const RealMatrix maps[] = {d.SB, d.TB};
  out.isotropy_dim = d.B.cols() == 0 ? 0 : joint_kernel_dim(maps, fdt, d.scale);
  return out;
}

std::size_t isotropy_tangent_dim(const GroupoidInstance& G0, const BasePoint& x0, const ToleranceConfig& tol) {
  const GroupoidInstance& G = leaf_of(G0, x0.component);
  const BasePoint x = localize(x0);
  require_base(G, x, "isotropy_tangent_dim");
  const IdentityDifferentials d = differentials_at_identity(G, x, tol);
  if (d.B.cols() == 0) return 0;
  const RealMatrix maps[] = {d.SB, d.TB};
  return joint_kernel_dim(maps, fd_tolerance(tol), d.scale);
}

SubmersionRank submersion_rank_st(const GroupoidInstance& G0, const Arrow& g0, const ToleranceConfig& tol) {
  const GroupoidInstance& G = leaf_of(G0, g0.component);
  const Arrow g = localize(g0);
  if (!contains(G, g)) throw precondition_error("submersion_rank_st: arrow does not belong to the groupoid");
  const ArrowChart c = chart_for(G);
  const RealVector p = arrow_coords(g);
  const RealMatrix B = arrow_tangent(c, p, tol);
  const RealMatrix js = finite_diff_jacobian(c.s, p, tol);
  const RealMatrix jt = finite_diff_jacobian(c.t, p, tol);
  const RealMatrix parts[] = {product_or_empty(js, B), product_or_empty(jt, B)};
  SubmersionRank r;
  r.rank = rank_or_zero(vstack(parts), fd_tolerance(tol), std::max(operator_norm(js), operator_norm(jt)));
  r.expected = base_tangent_matrix(G, source(G, g), tol).cols() + base_tangent_matrix(G, target(G, g), tol).cols();
  return r;
}

OrbitPartition orbit_classes(const GroupoidInstance& G0, std::span<const BasePoint> points, const ToleranceConfig& tol) {
  OrbitPartition out;
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const GroupoidInstance& G = leaf_of(G0, points[i].component);
    const BasePoint x = localize(points[i]);
    if (!contains(G, x)) throw precondition_error("orbit_decompose: point " + std::to_string(i) + " is not in the base");
    std::string label;
    switch (G.kind()) {
      case GroupoidKind::ginv:
      case GroupoidKind::partial_isometry: {
        label = "rank[";
        const auto sig = rank_signature(x.element(), tol);
        for (std::size_t k = 0; k < sig.size(); ++k) label += (k ? "," : "") + std::to_string(sig[k]);
        label += "]";
        break;
      }
      case GroupoidKind::action: {
        double m = 0.0;
        for (double v : x.vector()) m = std::max(m, std::abs(v));
        label = m == 0.0 ? "zero" : "nonzero";
        break;
      }
      case GroupoidKind::pair: label = "all"; break;
      case GroupoidKind::disjoint_union: break;
    }
    if (G0.kind() == GroupoidKind::disjoint_union) label = "component" + std::to_string(points[i].component) + "." + label;
    auto [it, inserted] = index.try_emplace(label, out.labels.size());
    if (inserted) {
      out.labels.push_back(label);
      out.class_sizes.push_back(0);
      out.representatives.push_back(i);
    }
    out.class_of.push_back(it->second);
    ++out.class_sizes[it->second];
  }
  return out;
}

ExperimentReport orbit_decompose(const GroupoidInstance& G, std::span<const BasePoint> points, const ToleranceConfig& tol) {
  const OrbitPartition part = orbit_classes(G, points, tol);
  ExperimentReport rep(std::string("orbits.") + kind_name(G.kind()));
  rep.echo("kind", kind_name(G.kind()));
  rep.echo("points", std::to_string(points.size()));
  rep.echo_tolerances(tol);
  for (std::size_t c = 0; c < part.labels.size(); ++c)
    rep.add("class." + part.labels[c], true, "orbits are the classes of the complete orbit invariant",
            {{"size", static_cast<double>(part.class_sizes[c])},
             {"representative", static_cast<double>(part.representatives[c])}});
  rep.add("partition", true, "orbits partition the base",
          {{"classes", static_cast<double>(part.labels.size())}, {"points", static_cast<double>(points.size())}});
  rep.sort_canonical();
  return rep;
}

AlgebraElement retract_projection(const AlgebraElement& h, double gap) {
  std::vector<ComplexMatrix> blocks;
  for (const ComplexMatrix& b : h.blocks()) {
    ComplexMatrix herm = b + b.adjoint();
    herm *= cplx(0.5);
    const auto e = hermitian_eigen(herm);
    for (double v : e.values)
      if (std::abs(v - 0.5) < gap)
        throw degenerate_interpolation_error("retract_projection: eigenvalue " + format_double(v) +
                                             " lies within the gap around 1/2");
    blocks.push_back(hermitian_function(e, [](double v) { return cplx(v > 0.5 ? 1.0 : 0.0); }));
  }
  return {h.shape(), std::move(blocks)};
}

IsotropySolve isotropy_solve(const GroupoidInstance& G0, const Arrow& g0, const Arrow& h0, const ToleranceConfig& tol) {
  if (g0.component != h0.component) throw input_error("isotropy_solve: arrows lie in different components");
  const GroupoidInstance& G = leaf_of(G0, g0.component);
  const Arrow g = localize(g0), h = localize(h0);
  if (G.kind() != GroupoidKind::partial_isometry || g.kind() != G.kind() || h.kind() != G.kind())
    throw input_error("isotropy_solve: partial-isometry arrows required");
  const BasePoint x = source(G, g);
  const double scale = 1.0 + base_norm(x);
  if (base_distance(x, source(G, h)) > tol.residual_tol * scale ||
      base_distance(target(G, g), target(G, h)) > tol.residual_tol * scale)
    throw input_error("isotropy_solve: arrows must share source and target");
  const AlgebraElement& u = std::get<PartialIsometryArrow>(g.data).u;
  const AlgebraElement& v = std::get<PartialIsometryArrow>(h.data).u;
  const AlgebraElement& p = x.element();

  IsotropySolve out{make_arrow(PartialIsometryArrow{element_adjoint(u) * v}), 0, 0.0, 0.0};
  const AlgebraElement& k = std::get<PartialIsometryArrow>(out.k.data).u;
  out.solve_residual = distance(u * k, v);
  out.isotropy_residual = std::max(base_distance(source(G, out.k), x), base_distance(target(G, out.k), x));

  // All k in the corner pAp with uk = 0: the linear part of the solve.
  const std::size_t D = p.shape().real_dim();
  RealMatrix L(2 * D, D);
  RealVector e(D, 0.0);
  for (std::size_t j = 0; j < D; ++j) {
    e[j] = 1.0;
    const AlgebraElement w = from_real(p.shape(), e);
    e[j] = 0.0;
    const RealVector a = to_real(u * w);
    const RealVector b = to_real(w - p * w * p);
    for (std::size_t i = 0; i < D; ++i) {
      L(i, j) = a[i];
      L(D + i, j) = b[i];
    }
  }
  out.solution_space_dim = D - numerical_rank(L, tol);
  out.k.component = g0.component;
  return out;
}

AlgebraElement pi_anchor(const AlgebraElement& x, const AlgebraElement& d) { return d * x + x * element_adjoint(d); }

APath sample_path(std::shared_ptr<const PathGenerator> gen, std::size_t steps) {
  if (!gen || !gen->base || !gen->lift) throw input_error("sample_path: generator is incomplete");
  if (steps < 2) throw input_error("sample_path: at least two sample intervals are required");
  APath path;
  const double h = 1.0 / static_cast<double>(steps);
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = i == steps ? 1.0 : static_cast<double>(i) * h;
    path.sample_times.push_back(t);
    path.base_samples.push_back(gen->base(t));
    path.lift_samples.push_back(gen->lift(t));
  }
  const auto& c = path.base_samples;
  for (std::size_t i = 0; i <= steps; ++i) {
    AlgebraElement dc = AlgebraElement::zero(c[i].shape());
    if (i == 0)
      dc = (-3.0 * c[0] + 4.0 * c[1] - c[2]) * cplx(0.5 / h);
    else if (i == steps)
      dc = (3.0 * c[steps] - 4.0 * c[steps - 1] + c[steps - 2]) * cplx(0.5 / h);
    else
      dc = (c[i + 1] - c[i - 1]) * cplx(0.5 / h);
    const double r = distance(pi_anchor(c[i], path.lift_samples[i]), dc);
    path.lift_residuals.push_back(r);
    path.max_lift_residual = std::max(path.max_lift_residual, r);
  }
  path.generator = std::move(gen);
  return path;
}

namespace {

// Unitary flow exp(itH) on one block, H = z diag(theta) z^*.
struct BlockFlow {
  ComplexMatrix z;
  std::vector<double> theta;

  ComplexMatrix at(double t) const {
    const std::size_t n = z.rows();
    ComplexMatrix d(n, n);
    for (std::size_t k = 0; k < n; ++k) d(k, k) = std::polar(1.0, theta[k] * t);
    return z * d * z.adjoint();
  }

  ComplexMatrix generator() const {
    const std::size_t n = z.rows();
    ComplexMatrix d(n, n);
    for (std::size_t k = 0; k < n; ++k) d(k, k) = theta[k];
    return z * d * z.adjoint();
  }
};

ComplexMatrix columns(const ComplexMatrix& m, std::size_t first, std::size_t count) {
  ComplexMatrix out(m.rows(), count);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < count; ++j) out(i, j) = m(i, first + j);
  return out;
}

// Orthonormal basis of range(m) closest to the columns of m, when m has
// full column rank with some margin.
std::optional<ComplexMatrix> polar_columns(const ComplexMatrix& m) {
  if (m.cols() == 0) return m;
  const auto e = hermitian_eigen(m.adjoint() * m);
  if (e.values.front() <= 1e-8) return std::nullopt;
  return m * hermitian_function(e, [](double v) { return cplx(1.0 / std::sqrt(v)); });
}

// Logarithm of a unitary by joint diagonalization of its Hermitian and
// skew-Hermitian parts.
BlockFlow unitary_log(const ComplexMatrix& w) {
  const std::size_t n = w.rows();
  const ComplexMatrix wa = w.adjoint();
  ComplexMatrix A = (w + wa) * cplx(0.5);
  ComplexMatrix B = (w - wa) * cplx(0.0, -0.5);
  const auto ea = hermitian_eigen(A);
  ComplexMatrix z = ea.vectors;
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && ea.values[end] - ea.values[end - 1] <= 1e-7) ++end;
    if (end - start > 1) {
      const ComplexMatrix zg = columns(z, start, end - start);
      const auto eb = hermitian_eigen(zg.adjoint() * B * zg);
      const ComplexMatrix rotated = zg * eb.vectors;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < end - start; ++j) z(i, start + j) = rotated(i, j);
    }
    start = end;
  }
  BlockFlow f{z, std::vector<double>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    const ComplexMatrix zk = columns(z, k, 1);
    const double c = (zk.adjoint() * A * zk)(0, 0).real();
    const double s = (zk.adjoint() * B * zk)(0, 0).real();
    f.theta[k] = std::atan2(s, c);
  }
  if (max_abs(f.at(1.0) - w) > 1e-9)
    throw degenerate_interpolation_error("orbit_path: could not resolve the logarithm of the connecting unitary");
  return f;
}

}  // namespace

APath orbit_path(const AlgebraElement& p, const AlgebraElement& q, std::size_t steps, const ToleranceConfig& tol) {
  if (!(p.shape() == q.shape())) throw input_error("orbit_path: shape mismatch");
  if (steps < 2) throw input_error("orbit_path: steps must be at least 2");
  if (!classify(p, tol).projection || !classify(q, tol).projection)
    throw precondition_error("orbit_path: endpoints must be projections");
  const auto rp = rank_signature(p, tol);
  if (rp != rank_signature(q, tol))
    throw orbit_error("orbit_path: endpoints have different rank signatures and lie in different orbits");

  std::vector<BlockFlow> flows;
  for (std::size_t i = 0; i < p.shape().block_count(); ++i) {
    const std::size_t n = p.shape().block_size(i), r = rp[i];
    const ComplexMatrix& pb = p.block(i);
    const ComplexMatrix& qb = q.block(i);
    const auto ep = hermitian_eigen(pb);
    const auto eq = hermitian_eigen(qb);
    const ComplexMatrix xp = columns(ep.vectors, n - r, r), yp = columns(ep.vectors, 0, n - r);
    ComplexMatrix xq = columns(eq.vectors, n - r, r), yq = columns(eq.vectors, 0, n - r);
    // Align bases so the connecting unitary is as close to 1 as the
    // geometry allows; fall back to raw eigenbases at right angles.
    if (auto a = polar_columns(qb * xp)) xq = std::move(*a);
    const ComplexMatrix comp_q = ComplexMatrix::identity(n) - qb;
    if (auto a = polar_columns(comp_q * yp)) yq = std::move(*a);
    ComplexMatrix w(n, n);
    if (r > 0) w += xq * xp.adjoint();
    if (r < n) w += yq * yp.adjoint();
    flows.push_back(unitary_log(w));
  }

  auto gen = std::make_shared<PathGenerator>();
  const AlgebraShape shape = p.shape();
  std::vector<ComplexMatrix> hblocks;
  for (const auto& f : flows) hblocks.push_back(f.generator() * cplx(0.0, 1.0));
  const AlgebraElement iH(shape, std::move(hblocks));
  gen->base = [flows, p, shape](double t) {
    std::vector<ComplexMatrix> blocks;
    for (std::size_t i = 0; i < flows.size(); ++i) {
      const ComplexMatrix u = flows[i].at(t);
      blocks.push_back(u * p.block(i) * u.adjoint());
    }
    return AlgebraElement(shape, std::move(blocks));
  };
  gen->lift = [base = gen->base, iH](double t) { return iH * base(t); };
  return sample_path(std::move(gen), steps);
}

Reparametrization Reparametrization::identity() {
  return {[](double t) { return t; }, [](double) { return 1.0; }};
}

Reparametrization Reparametrization::square() {
  return {[](double t) { return t * t; }, [](double t) { return 2.0 * t; }};
}

Reparametrization Reparametrization::smoothstep() {
  return {[](double t) { return t * t * (3.0 - 2.0 * t); }, [](double t) { return 6.0 * t * (1.0 - t); }};
}

APath reparametrize_lift(const APath& path, const Reparametrization& phi) {
  if (!path.generator) throw input_error("reparametrize_lift: path carries no generator");
  if (!phi.value || !phi.derivative) throw input_error("reparametrize_lift: incomplete reparametrization");
  if (path.sample_times.size() < 3) throw input_error("reparametrize_lift: path has too few samples");
  if (std::abs(phi.value(0.0)) > 1e-12 || std::abs(phi.value(1.0) - 1.0) > 1e-12)
    throw input_error("reparametrize_lift: reparametrization must fix 0 and 1");
  double prev = -std::numeric_limits<double>::infinity();
  for (double t : path.sample_times) {
    const double v = phi.value(t);
    if (!(v >= prev) || v < -1e-12 || v > 1.0 + 1e-12)
      throw input_error("reparametrize_lift: reparametrization is not monotone on the sample grid");
    prev = v;
  }
  auto gen = std::make_shared<PathGenerator>();
  gen->base = [g = path.generator, phi](double t) { return g->base(std::clamp(phi.value(t), 0.0, 1.0)); };
  gen->lift = [g = path.generator, phi](double t) {
    return g->lift(std::clamp(phi.value(t), 0.0, 1.0)) * cplx(phi.derivative(t));
  };
  return sample_path(std::move(gen), path.sample_times.size() - 1);
}

namespace {

double flat(double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; }

double flat_step(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  const double a = flat(s), b = flat(1.0 - s);
  return a / (a + b);
}

double flat_step_derivative(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  const double a = flat(s), b = flat(1.0 - s);
  const double da = a / (s * s), db = b / ((1.0 - s) * (1.0 - s));
  const double g = a + b;
  return (da * b + a * db) / (g * g);
}

}  // namespace

Reparametrization smooth_reparametrizer(std::span<const double> knots) {
  std::vector<double> edges{0.0};
  for (double k : knots) {
    if (!(k > 0.0 && k < 1.0)) throw input_error("smooth_reparametrizer: knots must lie in (0,1)");
    if (!(k > edges.back())) throw input_error("smooth_reparametrizer: knots must be strictly increasing");
    edges.push_back(k);
  }
  edges.push_back(1.0);
  auto segment = [edges](double t) {
    const auto it = std::upper_bound(edges.begin(), edges.end(), t);
    std::size_t j = static_cast<std::size_t>(it - edges.begin());
    j = std::clamp<std::size_t>(j, 1, edges.size() - 1);
    return std::pair{edges[j - 1], edges[j]};
  };
  return {[segment](double t) {
            t = std::clamp(t, 0.0, 1.0);
            const auto [a, b] = segment(t);
            return a + (b - a) * flat_step((t - a) / (b - a));
          },
          [segment](double t) {
            if (t < 0.0 || t > 1.0) return 0.0;
            const auto [a, b] = segment(t);
            return flat_step_derivative((t - a) / (b - a));
          }};
}

APath concatenate_paths(const APath& first, const APath& second, std::size_t steps, const ToleranceConfig& tol) {
  if (!first.generator || !second.generator) throw input_error("concatenate_paths: paths carry no generator");
  const AlgebraElement end = first.generator->base(1.0);
  const AlgebraElement start = second.generator->base(0.0);
  if (!(end.shape() == start.shape()) || distance(end, start) > tol.residual_tol * (1.0 + norm(end)))
    throw input_error("concatenate_paths: first path does not end where the second begins");
  auto gen = std::make_shared<PathGenerator>();
  gen->base = [a = first.generator, b = second.generator](double t) {
    return t <= 0.5 ? a->base(2.0 * t) : b->base(2.0 * t - 1.0);
  };
  gen->lift = [a = first.generator, b = second.generator](double t) {
    return (t <= 0.5 ? a->lift(2.0 * t) : b->lift(2.0 * t - 1.0)) * cplx(2.0);
  };
  return sample_path(std::move(gen), steps);
}

}  // namespace ginv

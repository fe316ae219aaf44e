#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eigen_oracle.hpp"
#include "ginv/geometry.hpp"
#include "support.hpp"

namespace {

using namespace ginv;
using test::diag;
using test::mat;
using test::shape;
using test::unit_matrix;

// Brute force: the real matrix of v -> (vq + qv - v [, v - v^*]) on one
// block, built from the complex entries without the library coordinates.
std::size_t tangent_dim_oracle(const ComplexMatrix& q, bool self_adjoint) {
  const Eigen::Index n = static_cast<Eigen::Index>(q.rows());
  const Eigen::MatrixXcd Q = test::to_eigen(q);
  const Eigen::Index d = 2 * n * n;
  Eigen::MatrixXd L(self_adjoint ? 2 * d : d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(n, n);
    const Eigen::Index e = k % (n * n);
    v(e / n, e % n) = k < n * n ? std::complex<double>(1, 0) : std::complex<double>(0, 1);
    const Eigen::MatrixXcd img = v * Q + Q * v - v;
    const Eigen::MatrixXcd sa = v - v.adjoint();
    for (Eigen::Index i = 0; i < n * n; ++i) {
      L(i, k) = img(i / n, i % n).real();
      L(n * n + i, k) = img(i / n, i % n).imag();
      if (self_adjoint) {
        L(d + i, k) = sa(i / n, i % n).real();
        L(d + n * n + i, k) = sa(i / n, i % n).imag();
      }
    }
  }
  return test::kernel_dim(L);
}

// Real dimension of qAq via the rank of a -> qaq on one block.
std::size_t corner_dim_oracle(const ComplexMatrix& q) {
  const Eigen::Index n = static_cast<Eigen::Index>(q.rows());
  const Eigen::MatrixXcd Q = test::to_eigen(q);
  Eigen::MatrixXd L(2 * n * n, 2 * n * n);
  for (Eigen::Index k = 0; k < 2 * n * n; ++k) {
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(n, n);
    const Eigen::Index e = k % (n * n);
    v(e / n, e % n) = k < n * n ? std::complex<double>(1, 0) : std::complex<double>(0, 1);
    const Eigen::MatrixXcd img = Q * v * Q;
    for (Eigen::Index i = 0; i < n * n; ++i) {
      L(i, k) = img(i / n, i % n).real();
      L(n * n + i, k) = img(i / n, i % n).imag();
    }
  }
  return static_cast<std::size_t>(2 * n * n) - test::kernel_dim(L);
}

TEST(TangentBasis, Examples) {
  EXPECT_EQ(tangent_basis(BaseManifold::Q, diag({1, 0})).real_dim, 4u);
  EXPECT_EQ(tangent_basis(BaseManifold::P, diag({1, 0})).real_dim, 2u);
  for (const AlgebraElement& x : {diag({0, 0}), diag({1, 1})}) {
    EXPECT_EQ(tangent_basis(BaseManifold::Q, x).real_dim, 0u);
    EXPECT_EQ(tangent_basis(BaseManifold::P, x).real_dim, 0u);
  }
  EXPECT_THROW(tangent_basis(BaseManifold::P, mat({{1, 0}, {1, 0}})), precondition_error);
  EXPECT_THROW(tangent_basis(BaseManifold::Q, diag({2, 0})), precondition_error);
}

TEST(TangentBasis, MatchesBruteForceKernelAndClosedForm) {
  auto rng = sampling::make_engine(41);
  for (const AlgebraShape& s : {shape({2}), shape({3}), shape({2, 3}), shape({4})}) {
    for (int i = 0; i < 12; ++i) {
      const auto sig = sampling::random_signature(rng, s);
      const AlgebraElement q = sampling::random_idempotent(rng, s, sig);
      const AlgebraElement p = sampling::random_projection(rng, s, sig);
      std::size_t q_oracle = 0, p_oracle = 0, q_closed = 0, p_closed = 0;
      for (std::size_t b = 0; b < s.block_count(); ++b) {
        const std::size_t n = s.block_size(b), r = sig[b];
        q_oracle += tangent_dim_oracle(q.block(b), false);
        p_oracle += tangent_dim_oracle(p.block(b), true);
        q_closed += 4 * r * (n - r);
        p_closed += 2 * r * (n - r);
      }
      EXPECT_EQ(q_oracle, q_closed);
      EXPECT_EQ(p_oracle, p_closed);
      const TangentBasis tq = tangent_basis(BaseManifold::Q, q);
      EXPECT_EQ(tq.real_dim, q_closed);
      EXPECT_EQ(tangent_basis(BaseManifold::P, p).real_dim, p_closed);
      for (const AlgebraElement& v : tq.vectors) EXPECT_LE(distance(v * q + q * v, v), 1e-10 * (1 + norm(v)));
    }
  }
}

TEST(Anchor, Examples) {
  const AnchorData g = fiber_and_anchor(GroupoidInstance::ginv(shape({2})), make_point(diag({1, 0})));
  EXPECT_EQ(g.anchor_rank, 4u);
  EXPECT_EQ(g.base_tangent_dim, 4u);
  EXPECT_TRUE(g.anchor_surjective());

  const AnchorData a = fiber_and_anchor(GroupoidInstance::action(3), make_point(RealVector{0, 0, 0}));
  EXPECT_EQ(a.anchor_rank, 0u);
  EXPECT_FALSE(a.anchor_surjective());

  const AnchorData p = fiber_and_anchor(GroupoidInstance::pair(3), make_point(RealVector{1, -2, 0.5}));
  EXPECT_EQ(p.anchor_rank, 3u);
}

TEST(Anchor, SurjectiveWithIsotropyKernelOnAlgebraKinds) {
  auto rng = sampling::make_engine(42);
  for (const GroupoidInstance& G : {GroupoidInstance::ginv(shape({3})), GroupoidInstance::partial_isometry(shape({3})),
                                    GroupoidInstance::ginv(shape({2, 1}))}) {
    for (int i = 0; i < 8; ++i) {
      const BasePoint x = sample_base_point(G, rng);
      const AnchorData d = fiber_and_anchor(G, x);
      EXPECT_TRUE(d.anchor_surjective());
      EXPECT_EQ(d.fiber_dim - d.anchor_rank, d.isotropy_dim);
      EXPECT_EQ(d.isotropy_dim, isotropy_tangent_dim(G, x));
      EXPECT_EQ(d.base_tangent_dim, base_tangent_dim(G, x));
    }
  }
}

TEST(Isotropy, Examples) {
  const auto G = GroupoidInstance::ginv(shape({2}));
  EXPECT_EQ(isotropy_tangent_dim(G, make_point(diag({1, 0}))), 2u);
  EXPECT_EQ(isotropy_tangent_dim(G, make_point(diag({1, 1}))), 8u);
  EXPECT_EQ(isotropy_tangent_dim(GroupoidInstance::partial_isometry(shape({2})), make_point(diag({1, 1}))), 4u);
}

// Isotropy of G(A) at q is the invertible group of the corner qAq.
TEST(Isotropy, EqualsCornerDimension) {
  auto rng = sampling::make_engine(43);
  const AlgebraShape s = shape({3});
  const auto G = GroupoidInstance::ginv(s);
  for (std::size_t r = 0; r <= 3; ++r) {
    const AlgebraElement q = sampling::random_idempotent(rng, s, {r});
    EXPECT_EQ(isotropy_tangent_dim(G, make_point(q)), corner_dim_oracle(q.block(0)));
    EXPECT_EQ(corner_dim_oracle(q.block(0)), 2 * r * r);
  }
}

TEST(Submersion, Examples) {
  const auto U = GroupoidInstance::partial_isometry(shape({2}));
  const SubmersionRank u = submersion_rank_st(U, make_arrow(PartialIsometryArrow{unit_matrix(2, 1, 2)}));
  EXPECT_EQ(u.rank, 4u);
  EXPECT_EQ(u.expected, 4u);

  const auto A = GroupoidInstance::action(2);
  const SubmersionRank a = submersion_rank_st(A, identity_at(A, make_point(RealVector{0, 0})));
  EXPECT_LT(a.rank, a.expected);

  const auto P = GroupoidInstance::pair(2);
  const SubmersionRank p = submersion_rank_st(P, make_arrow(PairArrow{{1, 2}, {0, 3}}));
  EXPECT_EQ(p.rank, 4u);
  EXPECT_EQ(p.expected, 4u);
}

TEST(Submersion, HoldsOnSampledArrows) {
  auto rng = sampling::make_engine(44);
  for (const GroupoidInstance& G : {GroupoidInstance::ginv(shape({3})), GroupoidInstance::partial_isometry(shape({3}))})
    for (int i = 0; i < 10; ++i) EXPECT_TRUE(submersion_rank_st(G, sample_arrow(G, rng)).submersive());
}

// Oracle: an explicit conjugator g with g q g^-1 = q' from eigenvectors.
bool conjugate_by_eigenvectors(const ComplexMatrix& q, const ComplexMatrix& q2) {
  auto sorted_vectors = [](const ComplexMatrix& m) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(test::to_eigen(m));
    std::vector<Eigen::Index> order(static_cast<std::size_t>(m.rows()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](auto a, auto b) { return es.eigenvalues()(a).real() > es.eigenvalues()(b).real(); });
    Eigen::MatrixXcd v(m.rows(), m.cols());
    for (std::size_t k = 0; k < order.size(); ++k) v.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(order[k]);
    return v;
  };
  const Eigen::MatrixXcd v1 = sorted_vectors(q), v2 = sorted_vectors(q2);
  const Eigen::MatrixXcd g = v2 * v1.inverse();
  return (g * test::to_eigen(q) * g.inverse() - test::to_eigen(q2)).cwiseAbs().maxCoeff() < 1e-8;
}

TEST(Orbits, IdempotentsOfM2SplitByRank) {
  auto rng = sampling::make_engine(45);
  const AlgebraShape s = shape({2});
  std::vector<BasePoint> pts;
  for (int i = 0; i < 50; ++i)
    pts.push_back(make_point(sampling::random_idempotent(rng, s, {sampling::uniform_index(rng, 0, 2)})));
  const OrbitPartition part = orbit_classes(GroupoidInstance::ginv(s), pts);
  EXPECT_LE(part.labels.size(), 3u);
  for (const std::string& l : part.labels) EXPECT_TRUE(l == "rank[0]" || l == "rank[1]" || l == "rank[2]") << l;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const AlgebraElement& rep = pts[part.representatives[part.class_of[i]]].element();
    EXPECT_TRUE(conjugate_by_eigenvectors(rep.block(0), pts[i].element().block(0)));
  }
}

TEST(Orbits, ProjectionsOfABlockAlgebraUseRankPairs) {
  auto rng = sampling::make_engine(46);
  const AlgebraShape s = shape({2, 3});
  std::vector<BasePoint> pts;
  for (int i = 0; i < 40; ++i) pts.push_back(make_point(sampling::random_projection(rng, s, sampling::random_signature(rng, s))));
  const OrbitPartition part = orbit_classes(GroupoidInstance::partial_isometry(s), pts);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto sig = rank_signature(pts[i].element());
    EXPECT_EQ(part.labels[part.class_of[i]], "rank[" + std::to_string(sig[0]) + "," + std::to_string(sig[1]) + "]");
  }
}

TEST(Orbits, PairGroupoidIsTransitive) {
  std::vector<BasePoint> pts = {make_point(RealVector{0.0}), make_point(RealVector{3.0}), make_point(RealVector{-1.0})};
  const ExperimentReport rep = orbit_decompose(GroupoidInstance::pair(1), pts);
  EXPECT_NE(rep.find("class.all"), nullptr);
  EXPECT_EQ(orbit_classes(GroupoidInstance::pair(1), pts).labels.size(), 1u);
}

TEST(OrbitPath, ConstantPath) {
  const APath path = orbit_path(diag({1, 0}), diag({1, 0}), 16);
  EXPECT_LE(path.max_lift_residual, 1e-12);
}

TEST(OrbitPath, SwapOfDiagonalProjections) {
  const AlgebraElement p = diag({1, 0}), q = diag({0, 1});
  const APath coarse = orbit_path(p, q, 16);
  EXPECT_LE(distance(coarse.base_samples.back(), q), 1e-8);
  for (const AlgebraElement& c : coarse.base_samples) {
    EXPECT_TRUE(classify(c).projection);
    EXPECT_EQ(rank_signature(c), std::vector<std::size_t>{1});
  }
  // Second-order differences: doubling the steps quarters the residual.
  const APath fine = orbit_path(p, q, 32);
  EXPECT_NEAR(coarse.max_lift_residual / fine.max_lift_residual, 4.0, 0.5);
  EXPECT_LE(orbit_path(p, q, 512).max_lift_residual, 1e-4);
}

TEST(OrbitPath, DifferentRanksAreDifferentOrbits) {
  EXPECT_THROW(orbit_path(diag({1, 0, 0}), diag({1, 1, 0}), 16), orbit_error);
  EXPECT_THROW(orbit_path(diag({2, 0}), diag({1, 0}), 16), precondition_error);
}

TEST(OrbitPath, LiftSatisfiesTheAnchorEquation) {
  auto rng = sampling::make_engine(47);
  const AlgebraShape s = shape({3});
  const AlgebraElement p = sampling::random_projection(rng, s, {1});
  const AlgebraElement q = sampling::random_projection(rng, s, {1});
  const APath path = orbit_path(p, q, 1024);
  EXPECT_LE(path.max_lift_residual, 1e-5);
  EXPECT_LE(distance(path.base_samples.back(), q), 1e-6);
  // The lift sits over the path: rho_c(alpha) - c' vanishes to FD accuracy,
  // and alpha(t) = alpha(t) c(t).
  for (std::size_t i = 0; i < path.lift_samples.size(); i += 97)
    EXPECT_LE(distance(path.lift_samples[i] * path.base_samples[i], path.lift_samples[i]), 1e-10);
}

TEST(Reparametrization, IdentityKeepsThePath) {
  const APath path = orbit_path(diag({1, 0}), diag({0, 1}), 64);
  const APath same = reparametrize_lift(path, Reparametrization::identity());
  ASSERT_EQ(same.base_samples.size(), path.base_samples.size());
  for (std::size_t i = 0; i < path.base_samples.size(); ++i) EXPECT_EQ(same.base_samples[i], path.base_samples[i]);
  EXPECT_EQ(same.max_lift_residual, path.max_lift_residual);
}

TEST(Reparametrization, ResidualStaysWithinTheFiniteDifferenceBound) {
  const AlgebraElement p = diag({1, 0}), q = diag({0, 1});
  const APath path = orbit_path(p, q, 4096);
  for (const Reparametrization& phi : {Reparametrization::square(), Reparametrization::smoothstep()}) {
    const APath r = reparametrize_lift(path, phi);
    EXPECT_LE(r.max_lift_residual, 10 * path.max_lift_residual + 1e-6);
    EXPECT_LE(distance(r.base_samples.front(), p), 1e-12);
    EXPECT_LE(distance(r.base_samples.back(), q), 1e-8);
  }
}

TEST(Reparametrization, RejectsMapsThatDoNotFixTheEndpoints) {
  const APath path = orbit_path(diag({1, 0}), diag({0, 1}), 16);
  const Reparametrization half{[](double t) { return t / 2; }, [](double) { return 0.5; }};
  EXPECT_THROW(reparametrize_lift(path, half), input_error);
}

TEST(SmoothReparametrizer, Examples) {
  const Reparametrization none = smooth_reparametrizer({});
  EXPECT_EQ(none.value(0.0), 0.0);
  EXPECT_EQ(none.value(1.0), 1.0);

  const double knot[] = {0.5};
  const Reparametrization phi = smooth_reparametrizer(knot);
  const double h = 1e-3;
  const double d1 = (phi.value(0.5 + h) - phi.value(0.5 - h)) / (2 * h);
  const double d2 = (phi.value(0.5 + h) - 2 * phi.value(0.5) + phi.value(0.5 - h)) / (h * h);
  EXPECT_LE(std::abs(d1), 1e-8);
  EXPECT_LE(std::abs(d2), 1e-8);
  EXPECT_EQ(phi.value(0.5), 0.5);
  for (double t = 0.0; t < 1.0; t += 0.01) EXPECT_LE(phi.value(t), phi.value(t + 0.01));

  const double bad[] = {0.7, 0.3};
  EXPECT_THROW(smooth_reparametrizer(bad), input_error);
}

TEST(SmoothReparametrizer, RemovesTheCornerOfAConcatenation) {
  const AlgebraElement p = diag({1, 0, 0}), m = diag({0, 1, 0}), q = diag({0, 0, 1});
  const APath first = orbit_path(p, m, 512), second = orbit_path(m, q, 512);
  const APath joined = concatenate_paths(first, second, 1024);
  const double knot[] = {0.5};
  const APath smooth = reparametrize_lift(joined, smooth_reparametrizer(knot));
  EXPECT_TRUE(std::isfinite(smooth.max_lift_residual));
  EXPECT_LE(smooth.max_lift_residual, 1e-2);
  EXPECT_LE(distance(smooth.base_samples.back(), q), 1e-6);
}

TEST(Retraction, SnapsToTheNearestProjection) {
  const AlgebraElement h = diag({0.9, 0.2}) + mat({{0, 0.05}, {0.05, 0}});
  const AlgebraElement p = retract_projection(h);
  EXPECT_TRUE(classify(p).projection);
  EXPECT_EQ(rank_signature(p), std::vector<std::size_t>{1});
}

TEST(IsotropySolve, RecoversTheConnectingArrow) {
  auto rng = sampling::make_engine(48);
  const auto U = GroupoidInstance::partial_isometry(shape({3}));
  for (int i = 0; i < 10; ++i) {
    const Arrow g = sample_arrow(U, rng);
    const BasePoint s = source(U, g);
    const Arrow k0 = arrow_between(U, s, s, rng);
    const Arrow h = compose(U, g, k0);
    const IsotropySolve sol = isotropy_solve(U, g, h);
    EXPECT_EQ(sol.solution_space_dim, 0u);
    EXPECT_LE(sol.solve_residual, 1e-10);
    EXPECT_LE(sol.isotropy_residual, 1e-10);
    EXPECT_LE(arrow_distance(sol.k, k0), 1e-8);
  }
}

TEST(PiAnchor, IsTheSymmetrizedProduct) {
  const AlgebraElement x = diag({1, 0});
  const AlgebraElement d = mat({{0, cplx(0, 1)}, {2, 0}});
  EXPECT_EQ(pi_anchor(x, d), d * x + x * element_adjoint(d));
}

}  // namespace

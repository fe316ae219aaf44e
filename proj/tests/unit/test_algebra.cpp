#include <gtest/gtest.h>

#include "ginv/algebra.hpp"
#include "ginv/random.hpp"
#include "support.hpp"

namespace {

using namespace ginv;
using test::diag;
using test::mat;
using test::shape;
using test::unit_matrix;

TEST(Shape, RealDimension) {
  EXPECT_EQ(shape({2}).real_dim(), 8u);
  EXPECT_EQ(shape({2, 3}).real_dim(), 26u);
  EXPECT_THROW(shape({}), input_error);
  EXPECT_THROW(shape({2, 0}), input_error);
}

TEST(Product, Examples) {
  const AlgebraElement a = mat({{1, 2}, {3, 4}});
  EXPECT_EQ(AlgebraElement::unit(shape({2})) * a, a);
  EXPECT_EQ(unit_matrix(2, 1, 2) * unit_matrix(2, 2, 1), unit_matrix(2, 1, 1));
  EXPECT_EQ(a * AlgebraElement::zero(shape({2})), AlgebraElement::zero(shape({2})));
  EXPECT_THROW(a * AlgebraElement::unit(shape({3})), input_error);
}

TEST(Adjoint, Examples) {
  EXPECT_EQ(element_adjoint(AlgebraElement::unit(shape({3}))), AlgebraElement::unit(shape({3})));
  EXPECT_EQ(element_adjoint(unit_matrix(2, 1, 2)), unit_matrix(2, 2, 1));
  EXPECT_EQ(element_adjoint(mat({{cplx(2, 1)}})), mat({{cplx(2, -1)}}));
}

TEST(Classify, Examples) {
  const ElementClass p = classify(diag({1, 0}));
  EXPECT_TRUE(p.idempotent && p.projection && p.partial_isometry);
  const ElementClass q = classify(mat({{1, 0}, {1, 0}}));
  EXPECT_TRUE(q.idempotent);
  EXPECT_FALSE(q.projection);
  const ElementClass d = classify(diag({2, 0}));
  EXPECT_FALSE(d.idempotent);
  EXPECT_FALSE(d.partial_isometry);
  EXPECT_TRUE(d.regular);
}

TEST(CornerCompress, Examples) {
  const AlgebraElement a = mat({{1, 2}, {3, 4}});
  EXPECT_EQ(corner_compress(AlgebraElement::unit(shape({2})), a), a);
  EXPECT_EQ(corner_compress(diag({1, 0}), a), diag({1, 0}));
  EXPECT_EQ(corner_compress(AlgebraElement::zero(shape({2})), a), AlgebraElement::zero(shape({2})));
  EXPECT_THROW(corner_compress(diag({2, 0}), a), precondition_error);
}

TEST(Norm, IsTheLargestBlockNorm) {
  const AlgebraElement a({shape({1, 2})}, {ComplexMatrix(1, 1, {cplx(3)}), diag({1, -5}).block(0)});
  EXPECT_NEAR(norm(a), 5.0, 1e-14);
}

class AlgebraProperties : public ::testing::TestWithParam<std::vector<std::size_t>> {};

TEST_P(AlgebraProperties, NormAndStarLaws) {
  const AlgebraShape s(GetParam());
  auto rng = sampling::make_engine(21);
  for (int i = 0; i < 50; ++i) {
    const AlgebraElement a = sampling::gaussian_element(rng, s);
    const AlgebraElement b = sampling::gaussian_element(rng, s);
    const double na = norm(a), nb = norm(b);
    EXPECT_EQ(element_adjoint(element_adjoint(a)), a);
    EXPECT_LE(norm(a * b), na * nb * (1 + 1e-12));
    EXPECT_LE(norm(a + b), (na + nb) * (1 + 1e-12));
    EXPECT_NEAR(norm(element_adjoint(a) * a), na * na, 1e-12 * na * na);
    EXPECT_EQ(from_real(s, to_real(a)), a);
  }
}

TEST_P(AlgebraProperties, SamplersHaveTheRequestedStructure) {
  const AlgebraShape s(GetParam());
  auto rng = sampling::make_engine(22);
  for (int i = 0; i < 30; ++i) {
    const auto sig = sampling::random_signature(rng, s);
    const AlgebraElement q = sampling::random_idempotent(rng, s, sig);
    const AlgebraElement p = sampling::random_projection(rng, s, sig);
    const AlgebraElement u = sampling::random_partial_isometry(rng, s, sig);
    const AlgebraElement a = sampling::random_with_signature(rng, s, sig);
    EXPECT_TRUE(classify(q).idempotent);
    EXPECT_TRUE(classify(p).projection);
    EXPECT_TRUE(classify(u).partial_isometry);
    EXPECT_EQ(rank_signature(q), sig);
    EXPECT_EQ(rank_signature(p), sig);
    EXPECT_EQ(rank_signature(u), sig);
    EXPECT_EQ(rank_signature(a), sig);
    const AlgebraElement w = sampling::haar_unitary(rng, s);
    EXPECT_LE(distance(element_adjoint(w) * w, AlgebraElement::unit(s)), 1e-13);
  }
}

INSTANTIATE_TEST_SUITE_P(Shapes, AlgebraProperties,
                         ::testing::Values(std::vector<std::size_t>{1}, std::vector<std::size_t>{3},
                                           std::vector<std::size_t>{2, 3}, std::vector<std::size_t>{8}));

TEST(Sampling, StreamsAreDeterministicAndIndependent) {
  auto a = sampling::make_engine(5, 1), b = sampling::make_engine(5, 1), c = sampling::make_engine(5, 2);
  const auto x = a(), y = b(), z = c();
  EXPECT_EQ(x, y);
  EXPECT_NE(x, z);
}

}  // namespace

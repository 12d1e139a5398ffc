#include <gtest/gtest.h>

#include "cubaut/linalg.hpp"
#include "test_support.hpp"

using namespace cubaut;
using cubaut::testkit::kCases;
using cubaut::testkit::kSeed;

namespace {

TEST(Matrix, InverseAndDet) {
  const Matrix m = Matrix::from_rows({{2, 1}, {1, 1}});
  EXPECT_EQ(m.det(), FieldElement(1));
  const auto inv = m.inverse();
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(*inv, Matrix::from_rows({{1, -1}, {-1, 2}}));
  EXPECT_FALSE(Matrix::from_rows({{1, 2}, {2, 4}}).inverse().has_value());
}

TEST(Matrix, Nullspace) {
  const Matrix m = Matrix::from_rows({{1, 1, 1}, {0, 1, 2}});
  const auto ns = m.nullspace();
  ASSERT_EQ(ns.size(), 1u);
  EXPECT_TRUE(is_zero_vec(m * ns[0]));
  EXPECT_EQ(m.rank(), 2);
}

TEST(Matrix, CharpolyOfRotation) {
  // Order-3 permutation matrix: t^3 - 1.
  const Matrix p = Matrix::from_rows({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
  EXPECT_EQ(p.charpoly(), (std::vector<FieldElement>{-1, 0, 0, 1}));
}

TEST(Matrix, SolveInconsistent) {
  const Matrix m = Matrix::from_rows({{1, 1}, {1, 1}});
  EXPECT_FALSE(m.solve({1, 2}).has_value());
  const auto x = m.solve({2, 2});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(m * *x, (Vec{2, 2}));
}

TEST(Matrix, Normalized) {
  EXPECT_EQ(normalized({0, 2, 4}), (Vec{0, 1, 2}));
}

TEST(MatrixProperty, InverseAndDeterminant) {
  std::mt19937_64 rng(kSeed + 7);
  for (int k = 0; k < kCases; ++k) {
    const int cond = std::vector<int>{1, 3, 5}[static_cast<std::size_t>(k % 3)];
    const Matrix a = testkit::random_invertible(rng, 4, cond);
    const Matrix b = testkit::random_matrix(rng, 4, cond);
    const auto ai = a.inverse();
    ASSERT_TRUE(ai.has_value());
    EXPECT_EQ(a * *ai, Matrix::identity(4));
    EXPECT_EQ((a * b).det(), a.det() * b.det());
    // Cayley-Hamilton at the constant term: det = (-1)^n c_0.
    EXPECT_EQ(a.charpoly()[0], a.det());
  }
}

}  // namespace

#include <gtest/gtest.h>

#include <random>

#include "woi/lp.hpp"
#include "woi/rational.hpp"

using namespace woi;

namespace {

RatMat random_matrix(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> dist(-5, 5);
  RatMat m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rat(dist(rng), 1 + std::abs(dist(rng)));
  return m;
}

}  // namespace

TEST(Rational, ParsesFractionsAndDecimals) {
  EXPECT_EQ(parse_rational("3/6"), rat(1, 2));
  EXPECT_EQ(parse_rational("-0.25"), rat(-1, 4));
  EXPECT_EQ(parse_rational("7"), rat(7));
  EXPECT_THROW(parse_rational("abc"), Error);
}

TEST(Rational, DeterminantMatchesCofactorExpansion) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    RatMat m = random_matrix(rng, 3);
    Rational cof = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                   m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                   m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
    EXPECT_EQ(det(m), cof);
  }
}

TEST(Rational, InverseTimesMatrixIsIdentity) {
  std::mt19937 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    RatMat m = random_matrix(rng, 4);
    if (sgn(det(m)) == 0) continue;
    EXPECT_EQ(inverse(m) * m, RatMat::identity(4));
  }
}

TEST(Rational, NullspaceIsAnnihilatedAndHasComplementaryDimension) {
  std::vector<RatVec> rows{{1, 2, 3, 4}, {2, 4, 6, 8}, {0, 1, 0, 1}};
  auto ns = nullspace(rows, 4);
  EXPECT_EQ(ns.size(), 2u);
  for (const auto& v : ns)
    for (const auto& r : rows) EXPECT_EQ(dot(r, v), 0);
  EXPECT_EQ(rank(rows), 2u);
}

TEST(Rational, CoordinatesInSpan) {
  std::vector<RatVec> basis{{1, 1, 0}, {0, 1, 1}};
  auto c = coordinates_in(basis, RatVec{2, 5, 3});
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(*c, (RatVec{2, 3}));
  EXPECT_FALSE(coordinates_in(basis, RatVec{1, 0, 0}).has_value());
}

TEST(QuadConstTest, ExactRootsAndProducts) {
  EXPECT_EQ(QuadConst::from_square(rat(9, 4)).str(), "3/2");
  EXPECT_EQ(QuadConst::from_square(rat(2)).str(), "sqrt(2)");
  EXPECT_EQ(QuadConst::from_square(rat(2)) * QuadConst::from_square(rat(8)), QuadConst::from_square(rat(16)));
  EXPECT_TRUE((QuadConst::zero() * QuadConst::one()).is_zero());
  SurdValue s{rat(3), rat(2)};
  EXPECT_EQ(*s.as_quad(), QuadConst::from_square(rat(18)));
  EXPECT_FALSE((SurdValue{rat(-1), rat(2)}.as_quad()).has_value());
}

TEST(LinearProgramming, FeasibilityOfStrictSigns) {
  // x > 0, y > 0, x + y < 0 is infeasible.
  std::vector<RatVec> rows{{1, 0}, {0, 1}, {-1, -1}};
  std::vector<Rational> rhs{1, 1, 1};
  EXPECT_FALSE(lp::feasible_point(rows, rhs, 2).has_value());
  rows.back() = RatVec{1, -1};
  auto x = lp::feasible_point(rows, rhs, 2);
  ASSERT_TRUE(x.has_value());
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_GE(dot(rows[i], *x), rhs[i]);
}

TEST(LinearProgramming, ConeMembership) {
  std::vector<RatVec> gens{{1, 0}, {1, 1}};
  EXPECT_TRUE(lp::in_cone(gens, RatVec{3, 1}));
  EXPECT_FALSE(lp::in_cone(gens, RatVec{0, 1}));
  EXPECT_TRUE(lp::in_cone(gens, RatVec{0, 0}));
}

#include <gtest/gtest.h>

#include <random>

#include "woi/root_datum.hpp"

using namespace woi;

namespace {

const std::vector<std::string> kLabels{"A1", "A2", "A3", "B2", "C2", "G2", "A1xA1", "A1xA2", "A2xA2", "G2xA1"};

RatVec random_vec(std::mt19937& rng, std::size_t n) {
  std::uniform_int_distribution<int> dist(-9, 9);
  RatVec v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = rat(dist(rng), 1 + std::abs(dist(rng)));
  return v;
}

}  // namespace

TEST(RootDatum, RootCounts) {
  EXPECT_EQ(build_root_system("A1").roots.size(), 2u);
  EXPECT_EQ(build_root_system("A2").roots.size(), 6u);
  EXPECT_EQ(build_root_system("B2").roots.size(), 8u);
  EXPECT_EQ(build_root_system("G2").roots.size(), 12u);
  EXPECT_EQ(build_root_system("A3").roots.size(), 12u);
  EXPECT_EQ(build_root_system("A1xA1").rank, 2);
}

TEST(RootDatum, UnknownLabelsRejected) {
  EXPECT_THROW(build_root_system("E8"), Error);
  EXPECT_THROW(build_root_system("A3xA2"), Error);
  try {
    build_root_system("F4");
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedType);
  }
}

TEST(RootDatum, PairingsAreIntegralAndRootsPairToTwo) {
  for (const auto& label : kLabels) {
    auto d = build_root_system(label);
    for (std::size_t i = 0; i < d.roots.size(); ++i) {
      EXPECT_EQ(dot(d.roots[i], d.coroots[i]), 2) << label;
      for (std::size_t j = 0; j < d.roots.size(); ++j) {
        Rational p = dot(d.roots[i], d.coroots[j]);
        EXPECT_EQ(p.get_den(), 1) << label;
      }
    }
  }
}

TEST(RootDatum, WeylOrdersMatchTable) {
  std::map<std::string, std::size_t> order{{"A1", 2},    {"A2", 6},     {"A3", 24},     {"B2", 8},    {"C2", 8},
                                           {"G2", 12},   {"A1xA1", 4},  {"A1xA2", 12},  {"A2xA2", 36}, {"G2xA1", 24}};
  for (const auto& [label, n] : order) EXPECT_EQ(weyl_group(build_root_system(label)).size(), n) << label;
}

TEST(RootDatum, WordsAreReducedAndReproduceMatrices) {
  for (const auto& label : kLabels) {
    auto d = build_root_system(label);
    std::size_t positives = d.roots.size() / 2;
    for (const auto& w : d.weyl) {
      EXPECT_EQ(weyl_from_word(d, w.word).matrix, w.matrix);
      // Length equals the number of positive roots sent to negative ones.
      std::size_t inv = 0;
      for (std::size_t i = 0; i < positives; ++i)
        if (!d.is_positive(w.root_perm[i])) ++inv;
      EXPECT_EQ(inv, w.length()) << label;
    }
  }
}

TEST(RootDatum, WeylGroupPermutesRootsAndPreservesInnerProducts) {
  std::mt19937 rng(3);
  for (const auto& label : kLabels) {
    auto d = build_root_system(label);
    for (const auto& w : d.weyl) {
      for (const auto& a : d.roots) EXPECT_GE(d.index_of(act_dual(w, a)), 0);
      RatVec u = random_vec(rng, d.rank), v = random_vec(rng, d.rank);
      EXPECT_EQ(d.inner(act(w, u), act(w, v)), d.inner(u, v));
      EXPECT_EQ(dot(act_dual(w, u), act(w, v)), dot(u, v));
    }
  }
}

TEST(RootDatum, ReflectionExamples) {
  auto d = build_root_system("A2");
  const auto& s = weyl_reflection(d, 0);
  EXPECT_EQ(act(s, d.coroots[0]), -d.coroots[0]);
  EXPECT_EQ(act_dual(s, d.roots[0]), -d.roots[0]);
  // A vector on the fixed hyperplane of s_alpha.
  RatVec fixed{0, 1};
  EXPECT_EQ(dot(d.roots[0], fixed), 0);
  EXPECT_EQ(act(s, fixed), fixed);
  EXPECT_EQ(act(d.weyl.front(), fixed), fixed);
  EXPECT_THROW(act(s, RatVec{1, 2, 3}), Error);
}

TEST(RootDatum, ShortRootsHaveSquaredLengthTwo) {
  for (const auto& label : kLabels) {
    auto d = build_root_system(label);
    Rational shortest = -1;
    for (const auto& a : d.roots) {
      Rational l = d.inner_dual(a, a);
      if (shortest < 0 || l < shortest) shortest = l;
    }
    EXPECT_EQ(shortest, 2) << label;
  }
}

TEST(RootDatum, InnerProductOverride) {
  RatMat scaled(2, 2);
  scaled(0, 0) = 6;
  scaled(1, 1) = 2;
  auto d = build_root_system("A1xA1", scaled);
  EXPECT_EQ(d.inner_dual(d.roots[0], d.roots[0]), 6);
  RatMat bad(2, 2);
  bad(0, 0) = 2;
  bad(1, 1) = 2;
  bad(0, 1) = bad(1, 0) = 1;
  EXPECT_THROW(build_root_system("A1xA1", bad), Error);
}

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "woi/levi.hpp"

using namespace woi;

namespace {

const std::vector<std::string> kLabels{"A1", "A2", "B2", "G2", "A1xA1", "A3"};

// Independent oracle: every subset of positive roots, kernels compared by
// their reduced row echelon forms.
std::size_t count_flats(const RootDatum& d) {
  std::set<std::vector<Rational>> kernels;
  int np = d.num_positive();
  for (int mask = 0; mask < (1 << np); ++mask) {
    std::vector<RatVec> rows;
    for (int i = 0; i < np; ++i)
      if (mask & (1 << i)) rows.push_back(d.roots[i]);
    auto ns = nullspace(rows, d.rank);
    if (ns.empty()) {
      kernels.insert(std::vector<Rational>{});
      continue;
    }
    RatMat m = RatMat::from_rows(ns, d.rank);
    rref(m);
    kernels.insert(m.data());
  }
  return kernels.size();
}

RatVec random_point(std::mt19937& rng, const std::vector<RatVec>& basis, std::size_t n) {
  std::uniform_int_distribution<int> dist(-50, 50);
  RatVec p(n);
  for (const auto& b : basis) p += rat(dist(rng), 7) * b;
  return p;
}

}  // namespace

TEST(Levi, CountsMatchSubsetOracle) {
  EXPECT_EQ(enumerate_levis(build_root_system("A1")).size(), 2u);
  EXPECT_EQ(enumerate_levis(build_root_system("A2")).size(), 5u);
  EXPECT_EQ(enumerate_levis(build_root_system("B2")).size(), 6u);
  for (const auto& label : kLabels) {
    auto d = build_root_system(label);
    EXPECT_EQ(enumerate_levis(d).size(), count_flats(d)) << label;
  }
}

TEST(Levi, KernelAndClosureInvariants) {
  for (const auto& label : kLabels) {
    auto d = build_root_system(label);
    for (const auto& L : enumerate_levis(d)) {
      for (std::size_t i = 0; i < d.roots.size(); ++i) {
        bool vanish = true;
        for (const auto& b : L.basis) vanish = vanish && sgn(dot(d.roots[i], b)) == 0;
        EXPECT_EQ(vanish, L.has_root(static_cast<int>(i)));
      }
      for (int a : L.root_subset)
        for (int b : L.root_subset) {
          RatVec r = act_dual(weyl_reflection(d, a), d.roots[b]);
          EXPECT_TRUE(L.has_root(d.index_of(r)));
        }
    }
  }
}

TEST(Levi, BoundsFilterTheLattice) {
  auto d = build_root_system("A2");
  auto M0 = minimal_levi(d);
  auto G = whole_group(d);
  auto L = levi_from_roots(d, {0});
  auto between = enumerate_levis(d, L, G);
  EXPECT_EQ(between.size(), 2u);
  EXPECT_EQ(enumerate_levis(d, M0, L).size(), 2u);
  EXPECT_THROW(enumerate_levis(d, G, M0), Error);
}

TEST(Parabolics, ChamberCounts) {
  for (const auto& label : kLabels) {
    auto d = build_root_system(label);
    EXPECT_EQ(parabolics(d, minimal_levi(d)).size(), d.weyl.size()) << label;
    EXPECT_EQ(parabolics(d, whole_group(d)).size(), 1u);
  }
  auto d = build_root_system("A2");
  EXPECT_EQ(parabolics(d, levi_from_roots(d, {0})).size(), 2u);
}

TEST(Parabolics, DominantChamberComesFirst) {
  auto d = build_root_system("B2");
  auto P = parabolics(d, minimal_levi(d)).front();
  for (int i = 0; i < d.num_positive(); ++i) EXPECT_GT(dot(d.roots[i], P.chamber_point), 0);
}

TEST(Parabolics, ChambersPartitionGenericPoints) {
  std::mt19937 rng(5);
  for (const auto& label : kLabels) {
    auto d = build_root_system(label);
    for (const auto& M : enumerate_levis(d)) {
      auto chambers = parabolics(d, M);
      auto basis = relative_basis(d, M, whole_group(d));
      for (int trial = 0; trial < 10; ++trial) {
        RatVec p = random_point(rng, basis, d.rank);
        bool generic = true;
        for (const auto& r : chambers.front().reduced) generic = generic && sgn(dot(r.form, p)) != 0;
        if (!generic) continue;
        int hits = 0;
        for (const auto& P : chambers) {
          bool in = true;
          for (std::size_t i = 0; i < P.reduced.size(); ++i)
            in = in && sgn(dot(P.reduced[i].form, p)) == P.sign[i];
          hits += in;
        }
        EXPECT_EQ(hits, 1) << label << " " << M.label;
      }
    }
  }
}

TEST(Theta, ExamplesAndPositivity) {
  auto d = build_root_system("A1");
  auto P = parabolics(d, minimal_levi(d)).front();
  RatVec half_alpha{rat(1, 2)};
  auto t = theta(P, half_alpha);
  EXPECT_EQ(t.product, 1);
  EXPECT_EQ(theta(P, RatVec{0}).product, 0);
  for (const auto& label : kLabels) {
    auto dd = build_root_system(label);
    for (const auto& M : enumerate_levis(dd))
      for (const auto& Q : parabolics(dd, M)) {
        auto th = theta(Q, dd.dual_of(Q.chamber_point));
        EXPECT_GT(th.value(), 0) << label;
      }
  }
  auto a2 = build_root_system("A2");
  auto P0 = parabolics(a2, minimal_levi(a2)).front();
  RatVec rho{1, 1};
  EXPECT_GT(theta(P0, rho).value(), 0);
  EXPECT_EQ(theta(P0, rho).product, 1);
}

TEST(DConstant, ExamplesAndSymmetry) {
  auto d = build_root_system("A2");
  auto M0 = minimal_levi(d);
  auto G = whole_group(d);
  EXPECT_EQ(d_constant(d, M0, M0, G), QuadConst::one());
  EXPECT_TRUE(d_constant(d, M0, M0, M0).is_zero());
  auto La = levi_from_roots(d, {0});
  auto Lb = levi_from_roots(d, {1});
  auto v = d_constant(d, M0, La, Lb);
  EXPECT_FALSE(v.is_zero());
  // Oracle: lines spanned by the two coweights orthogonal to alpha_1 and alpha_2
  // have angle 60 degrees, so the determinant is sin(60) = sqrt(3)/2.
  EXPECT_EQ(v, QuadConst::from_square(rat(3, 4)));
  EXPECT_THROW(d_constant(d, La, M0, G), Error);
  for (const auto& label : kLabels) {
    auto dd = build_root_system(label);
    auto levis = enumerate_levis(dd);
    for (const auto& L1 : levis)
      for (const auto& L : enumerate_levis(dd, L1))
        for (const auto& S : enumerate_levis(dd, L1)) EXPECT_EQ(d_constant(dd, L1, L, S), d_constant(dd, L1, S, L));
  }
}

TEST(DConstant, TransitivityHoldsExactly) {
  for (const auto& label : {"A1", "A2", "B2", "G2", "A1xA1", "A3"}) {
    auto rep = trand_check(build_root_system(label));
    EXPECT_GT(rep.checks.size(), 0u);
    for (const auto* f : rep.failures()) ADD_FAILURE() << f->id << " " << f->detail.dump();
  }
}

TEST(Cosets, CountsAndFilters) {
  auto d = build_root_system("A2");
  auto G = whole_group(d);
  auto M0 = minimal_levi(d);
  auto L = levi_from_roots(d, {0});
  EXPECT_EQ(weyl_cosets(d, G).size(), 1u);
  EXPECT_EQ(weyl_cosets(d, L).size(), 3u);
  EXPECT_EQ(weyl_cosets(d, L, CosetSide::Right).size(), 3u);
  EXPECT_EQ(weyl_cosets(d, M0).size(), 6u);
  for (int w : weyl_cosets_between(d, L, L, L)) EXPECT_EQ(conjugate(d, d.weyl[w], L), L);
  EXPECT_EQ(weyl_cosets_between(d, L, L, L).size(), 1u);
  // Minimal length representatives: identity first.
  EXPECT_TRUE(d.weyl[weyl_cosets(d, L).front()].is_identity());
}

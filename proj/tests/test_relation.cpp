#include "support.hpp"

#include <gtest/gtest.h>

using namespace prox;
using prox::testing::set;

namespace {

GroundSet g3() { return GroundSet::numbered(3); }

ProbeAssignment ribbon_probe() {
  using V = FeatureValue;
  return {{"0", {V(0)}}, {"rbA", {V(4)}}, {"rbB", {V(5)}}, {"1", {V(9)}}};
}

}  // namespace

TEST(BuildRelation, OverlapIsIntersection) {
  auto r = build_relation(g3(), gen::Overlap{});
  EXPECT_TRUE(r.point_generated());
  EXPECT_TRUE(r.near(set(3, {0}), set(3, {0, 1})));
  EXPECT_FALSE(r.near(set(3, {0}), set(3, {1})));
  EXPECT_TRUE(r.near(set(3, {1}), set(3, {1, 2})));
}

TEST(BuildRelation, ContainmentIsAsymmetricTable) {
  auto r = build_relation(g3(), gen::Containment{});
  EXPECT_FALSE(r.point_generated());
  EXPECT_TRUE(r.near(set(3, {0}), set(3, {0, 1})));
  EXPECT_FALSE(r.near(set(3, {0, 1}), set(3, {0})));
  EXPECT_TRUE(r.near(set(3, {0, 1}), set(3, {0, 1, 2})));
}

TEST(BuildRelation, ProbeEqualitySeparatesRibbons) {
  GroundSet g{"0", "rbA", "rbB", "1"};
  auto r = build_relation(g, gen::ProbeEquality{ribbon_probe()});
  EXPECT_TRUE(r.point_generated());
  EXPECT_FALSE(r.near(Subset(bit(1), 4), Subset(bit(2), 4)));
  EXPECT_TRUE(r.near(Subset(bit(1), 4), Subset(bit(1) | bit(2), 4)));
}

TEST(BuildRelation, ProbeEqualityGroupsEqualFeatures) {
  using V = FeatureValue;
  GroundSet g{"a", "b", "c"};
  auto r = build_relation(g, gen::ProbeEquality{{{"a", {V(1, 2)}}, {"b", {V(2, 4)}}, {"c", {V(1)}}}});
  EXPECT_TRUE(r.near_bits(0b001, 0b010));
  EXPECT_FALSE(r.near_bits(0b001, 0b100));
}

TEST(BuildRelation, ProbeErrors) {
  using V = FeatureValue;
  GroundSet g{"a", "b"};
  EXPECT_THROW(build_relation(g, gen::ProbeEquality{{{"a", {V(1)}}}}), InputError);
  EXPECT_THROW(build_relation(g, gen::ProbeEquality{{{"a", {V(1)}}, {"b", {V(1)}}, {"z", {V(1)}}}}), InputError);
  EXPECT_THROW(build_relation(g, gen::ProbeEquality{{{"a", {V(1)}}, {"b", {V(1), V(2)}}}}), InputError);
}

TEST(BuildRelation, GapMetricThreshold) {
  GroundSet g{"p", "q", "r"};
  gen::GapMetric spec{{{"p", {0.0}}, {"q", {0.5}}, {"r", {2.0}}}, 0.5};
  auto r = build_relation(g, spec);
  EXPECT_TRUE(r.near_bits(0b001, 0b010));
  EXPECT_FALSE(r.near_bits(0b001, 0b100));
  EXPECT_FALSE(r.near_bits(0b010, 0b100));
  spec.epsilon = 0.0;
  auto zero = build_relation(g, spec);
  EXPECT_FALSE(zero.near_bits(0b001, 0b010));
  EXPECT_TRUE(zero.near_bits(0b001, 0b011));
  spec.epsilon = -1.0;
  EXPECT_THROW(build_relation(g, spec), InputError);
  EXPECT_THROW(build_relation(g, gen::GapMetric{{{"p", {0.0}}, {"q", {0.0}}}, 1.0}), InputError);
}

TEST(BuildRelation, LiteralTableIsVerbatim) {
  gen::Table spec;
  spec.pairs = {{bit(1), bit(2)}};
  auto r = build_relation(g3(), spec);
  EXPECT_FALSE(r.point_generated());
  EXPECT_TRUE(r.near_bits(bit(1), bit(2)));
  EXPECT_FALSE(r.near_bits(bit(2), bit(1)));
  EXPECT_FALSE(r.near_bits(bit(1), bit(1)));
}

TEST(Near, EmptySetIsFar) {
  for (const auto& r : {prox::testing::overlap(3), prox::testing::containment(3)}) {
    EXPECT_FALSE(r.near(Subset::empty(3), set(3, {1})));
    EXPECT_FALSE(r.near(set(3, {1}), Subset::empty(3)));
    EXPECT_FALSE(r.near(Subset::empty(3), Subset::empty(3)));
  }
}

TEST(Near, MismatchedGroundThrows) {
  auto r = prox::testing::overlap(3);
  EXPECT_THROW(r.near(set(4, {1}), set(3, {1})), InputError);
}

TEST(CompleteToCech, GeneratesFromBasis) {
  auto r = complete_to_cech(g3(), {{bit(1), bit(2)}});
  EXPECT_TRUE(r.near_bits(bit(1), bit(2)));
  EXPECT_TRUE(r.near_bits(bit(2), bit(1)));
  EXPECT_FALSE(r.near_bits(bit(0), bit(2)));

  auto empty = complete_to_cech(g3(), {});
  EXPECT_EQ(empty.adjacency(), prox::testing::overlap(3).adjacency());

  auto wide = complete_to_cech(g3(), {{0b011, 0b100}});
  EXPECT_TRUE(contains(wide.related(0), 2));
  EXPECT_TRUE(contains(wide.related(1), 2));
  EXPECT_FALSE(contains(wide.related(0), 1));
  EXPECT_TRUE(audit_axioms(wide).cech());

  EXPECT_THROW(complete_to_cech(g3(), {{0, bit(1)}}), InputError);
}

TEST(CompleteToCech, PropertyBasisPairsNearAndCech) {
  std::mt19937 rng(7);
  for (int round = 0; round < 60; ++round) {
    const std::size_t n = 1 + rng() % 7;
    const Mask full = full_mask(n);
    std::vector<std::pair<Mask, Mask>> basis;
    for (int k = 0, m = static_cast<int>(rng() % 4); k < m; ++k)
      basis.emplace_back(1 + rng() % full, 1 + rng() % full);
    auto r = complete_to_cech(GroundSet::numbered(n), basis);
    for (auto [p, q] : basis) EXPECT_TRUE(r.near_bits(p, q));
    EXPECT_TRUE(audit_axioms(r).cech());
  }
}

TEST(Subspace, RestrictsOverlapAndContainment) {
  auto sub = restrict_subspace(prox::testing::overlap(3), set(3, {1, 2}));
  EXPECT_EQ(sub.ground().labels(), (std::vector<std::string>{"1", "2"}));
  EXPECT_EQ(sub.adjacency(), prox::testing::overlap(2).adjacency());

  auto point = restrict_subspace(prox::testing::containment(3), set(3, {0}));
  EXPECT_EQ(point.size(), 1u);
  EXPECT_TRUE(point.near_bits(1, 1));

  EXPECT_THROW(restrict_subspace(prox::testing::overlap(3), Subset::empty(3)), InputError);
}

TEST(Subspace, RibbonNonzeroStaysCech) {
  GroundSet g{"0", "rbA", "rbB", "1"};
  auto r = probe_relation(g, ribbon_probe());
  auto star = restrict_subspace(r, Subset(0b1110, 4));
  EXPECT_EQ(star.size(), 3u);
  EXPECT_TRUE(star.point_generated());
  EXPECT_TRUE(audit_axioms(star).cech());
}

TEST(Subspace, PropertyPreservesVerdicts) {
  std::mt19937 rng(11);
  for (int round = 0; round < 40; ++round) {
    const std::size_t n = 2 + rng() % 5;
    auto r = round % 2 ? prox::testing::random_tolerance(n, rng) : prox::testing::random_table(n, rng);
    const Mask s = 1 + rng() % full_mask(n);
    auto sub = restrict_subspace(r, Subset(s, n));
    const auto embed = members(s);
    const Mask fs = full_mask(embed.size());
    for (Mask a = 1; a <= fs; ++a)
      for (Mask b = 1; b <= fs; ++b) {
        Mask pa = 0, pb = 0;
        for_each_bit(a, [&](std::size_t i) { pa |= bit(embed[i]); });
        for_each_bit(b, [&](std::size_t i) { pb |= bit(embed[i]); });
        ASSERT_EQ(sub.near_bits(a, b), r.near_bits(pa, pb));
      }
  }
}

TEST(Product, RectangleExamples) {
  auto ov = product_relation(prox::testing::overlap(2), prox::testing::overlap(2));
  EXPECT_TRUE(ov.near_rectangles(bit(0), bit(1), 0b11, bit(1)));
  auto ct = product_relation(prox::testing::containment(2), prox::testing::containment(2));
  EXPECT_TRUE(ct.near_rectangles(bit(0), bit(1), bit(0), 0b11));
  EXPECT_FALSE(ct.near_rectangles(0b11, bit(1), bit(0), 0b11));
  EXPECT_FALSE(ov.near_projected(0, 0b1111));
}

TEST(Product, PairIndexAndLabels) {
  auto p = product_relation(prox::testing::overlap(2), prox::testing::overlap(3));
  EXPECT_EQ(p.pair_index(1, 2), 5u);
  EXPECT_EQ(p.ground().label(5), "(1,2)");
  EXPECT_EQ(p.rectangle(0b10, 0b101), bit(3) | bit(5));
  EXPECT_EQ(p.projections(bit(3) | bit(2)), std::make_pair(Mask{0b11}, Mask{0b101}));
}

TEST(Product, PropertyRectanglesMatchFactorsExhaustively) {
  std::mt19937 rng(5);
  for (std::size_t nx = 1; nx <= 4; ++nx)
    for (std::size_t ny = 1; ny <= 4 && nx * ny <= 16; ++ny) {
      auto x = prox::testing::random_tolerance(nx, rng, 0.4);
      auto y = nx % 2 ? prox::testing::random_table(ny, rng) : prox::testing::random_tolerance(ny, rng, 0.4);
      auto prod = product_relation(x, y);
      auto as_rel = prod.as_relation();
      for (Mask a = 1; a <= x.ground().full(); ++a)
        for (Mask b = 1; b <= y.ground().full(); ++b)
          for (Mask c = 1; c <= x.ground().full(); ++c)
            for (Mask d = 1; d <= y.ground().full(); ++d) {
              const bool expect = x.near_bits(a, c) && y.near_bits(b, d);
              ASSERT_EQ(prod.near_rectangles(a, b, c, d), expect);
              ASSERT_EQ(prod.near_projected(prod.rectangle(a, b), prod.rectangle(c, d)), expect);
              ASSERT_EQ(as_rel.near_bits(prod.rectangle(a, b), prod.rectangle(c, d)), expect);
            }
    }
}

TEST(Product, ToleranceProductIsFinerThanProjections) {
  // Diagonal vs antidiagonal in {0,1}^2: projections coincide, points do not.
  auto prod = product_relation(prox::testing::overlap(2), prox::testing::overlap(2));
  const Mask diag = bit(0) | bit(3), anti = bit(1) | bit(2);
  EXPECT_TRUE(prod.near_projected(diag, anti));
  EXPECT_FALSE(prod.as_relation().near_bits(diag, anti));
}

TEST(Product, OversizeProductIsCapped) {
  auto p = product_relation(prox::testing::overlap(5), prox::testing::overlap(4));
  EXPECT_THROW(p.as_relation(), CapError);
}

#include "support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace prox;
using V = FeatureValue;

TEST(RibbonBeta, Values) {
  EXPECT_EQ(ribbon_beta(0, 0), 0);
  EXPECT_EQ(ribbon_beta(2, 0), 4);
  EXPECT_EQ(ribbon_beta(2, 1), 5);
  static_assert(ribbon_beta(1, 2) == 4);
  EXPECT_THROW(ribbon_beta(-1, 0), InputError);
}

TEST(RibbonBeta, PropertyMonotone) {
  for (std::int64_t k = 0; k < 8; ++k)
    for (std::int64_t n = 0; n < 8; ++n) {
      EXPECT_LT(ribbon_beta(k, n), ribbon_beta(k + 1, n));
      EXPECT_LT(ribbon_beta(k, n), ribbon_beta(k, n + 1));
    }
}

TEST(RibbonComplex, DefaultFixture) {
  auto c = default_ribbon_complex();
  EXPECT_EQ(c.rbA.beta(), 4);
  EXPECT_EQ(c.rbB.beta(), 5);
  c.rbA.bridge_edges.push_back(99);
  EXPECT_THROW(c.validate(), InputError);
}

TEST(DescriptiveRelation, Examples) {
  auto [r, probe] = ribbon_ring();
  auto rel = descriptive_relation(r.ground(), probe);
  const auto& g = r.ground();
  EXPECT_FALSE(rel.near_bits(g.mask_of({"rbA"}), g.mask_of({"rbB"})));

  GroundSet abc{"a", "b", "c"};
  auto constant = descriptive_relation(abc, {{"a", {V(3)}}, {"b", {V(3)}}, {"c", {V(3)}}});
  for (Mask x = 1; x < 8; ++x)
    for (Mask y = 1; y < 8; ++y) EXPECT_TRUE(constant.near_bits(x, y));

  auto split = descriptive_relation(abc, {{"a", {V(1)}}, {"b", {V(1)}}, {"c", {V(2)}}});
  EXPECT_TRUE(split.near_bits(0b001, 0b010));
  EXPECT_FALSE(split.near_bits(0b001, 0b100));

  EXPECT_THROW(descriptive_relation(abc, {{"a", {V(1)}}}), InputError);
}

TEST(DescriptiveRelation, PropertyInjectiveProbeIsOverlap) {
  std::mt19937 rng(51);
  for (std::size_t n = 1; n <= 6; ++n) {
    auto g = GroundSet::numbered(n);
    std::vector<std::int64_t> values(n);
    std::iota(values.begin(), values.end(), 10);
    std::shuffle(values.begin(), values.end(), rng);
    ProbeAssignment probe;
    for (std::size_t i = 0; i < n; ++i) probe[g.label(i)] = {V(values[i], 3)};
    auto d = descriptive_relation(g, probe);
    auto o = overlap_relation(g);
    for (Mask a = 1; a <= g.full(); ++a)
      for (Mask b = 1; b <= g.full(); ++b) ASSERT_EQ(d.near_bits(a, b), o.near_bits(a, b));
  }
}

TEST(DescriptiveRelation, PropertyAlwaysCech) {
  std::mt19937 rng(52);
  for (int round = 0; round < 40; ++round) {
    const std::size_t n = 1 + round % 7;
    auto g = GroundSet::numbered(n);
    ProbeAssignment probe;
    for (std::size_t i = 0; i < n; ++i) probe[g.label(i)] = {V(static_cast<std::int64_t>(rng() % 3)), V(1, 1 + rng() % 2)};
    EXPECT_TRUE(audit_axioms(descriptive_relation(g, probe)).cech());
  }
}

TEST(RibbonRing, CayleyTables) {
  auto [r, probe] = ribbon_ring();
  const auto& g = r.ground();
  auto row = [&](const char* label, bool mul) {
    std::vector<std::string> out;
    const auto a = g.index_of(label);
    for (std::size_t b = 0; b < 4; ++b) out.push_back(g.label(mul ? r.mul(a, b) : r.add(a, b)));
    return out;
  };
  EXPECT_EQ(row("rbA", false), (std::vector<std::string>{"rbA", "0", "1", "rbB"}));
  EXPECT_EQ(row("rbB", true), (std::vector<std::string>{"0", "0", "rbB", "rbB"}));
  for (std::size_t e = 0; e < 4; ++e) EXPECT_EQ(r.add(e, e), r.zero());
  EXPECT_TRUE(audit_ring(r).is_ring());
  EXPECT_EQ(probe.at("rbA"), FeatureTuple{V(4)});
  EXPECT_EQ(probe.at("1"), FeatureTuple{V(9)});
  auto custom = ribbon_ring(default_ribbon_complex(), RibbonProbeConfig{7, 8});
  EXPECT_EQ(custom.second.at("0"), FeatureTuple{V(7)});
}

TEST(RibbonRing, IsomorphicToBooleanRingOnTwoAtoms) {
  auto [r, probe] = ribbon_ring();
  auto b = boolean_ring(2);
  std::vector<std::size_t> perm{0, 1, 2, 3};
  int isomorphisms = 0;
  do {
    bool ok = true;
    for (std::size_t x = 0; x < 4 && ok; ++x)
      for (std::size_t y = 0; y < 4 && ok; ++y)
        ok = perm[r.add(x, y)] == b.add(perm[x], perm[y]) && perm[r.mul(x, y)] == b.mul(perm[x], perm[y]);
    isomorphisms += ok;
  } while (std::next_permutation(perm.begin(), perm.end()));
  // rbA and rbB may go to either atom
  EXPECT_EQ(isomorphisms, 2);
}

TEST(DescriptiveStructure, RibbonRing) {
  auto [r, probe] = ribbon_ring();
  auto rep = verify_descriptive_structure(r, probe, DescriptiveKind::Ring, "ribbon");
  EXPECT_EQ(rep.structure, "descriptive ring: ribbon");
  EXPECT_FALSE(rep.any_failed());
  EXPECT_EQ(rep.find("invertibility")->details["H"].dump(), R"(["1"])");
}

TEST(DescriptiveStructure, Gf5IdentityProbeField) {
  auto f = ring_gf(5);
  ProbeAssignment probe;
  for (std::size_t i = 0; i < 5; ++i) probe[f.ground().label(i)] = {V(static_cast<std::int64_t>(i))};
  auto rep = verify_descriptive_structure(f, probe, DescriptiveKind::Field, "GF(5)");
  EXPECT_EQ(rep.structure, "descriptive field: GF(5)");
  EXPECT_TRUE(rep.all_passed());
  EXPECT_EQ(rep.checks.size(), 4u);
}

TEST(DescriptiveStructure, ConstantProbeTriviallyContinuous) {
  auto z4 = ring_zn(4);
  ProbeAssignment probe;
  for (const auto& l : z4.ground().labels()) probe[l] = {V(0)};
  SuiteOptions so;
  so.only = {"add", "mul", "inv"};
  auto rep = verify_descriptive_structure(z4, probe, DescriptiveKind::Ring, "Z4", so);
  EXPECT_TRUE(rep.all_passed());
}

TEST(DescriptiveStructure, Module) {
  auto md = regular_module(ring_zn(3));
  ProbeAssignment probe;
  for (const auto& l : md.carrier().labels()) probe[l] = {V(std::stoll(l))};
  auto rep = verify_descriptive_structure(md, probe, probe, "Z3");
  EXPECT_EQ(rep.structure, "descriptive module: Z3");
  EXPECT_TRUE(rep.all_passed());
}

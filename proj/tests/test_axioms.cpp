#include "support.hpp"

#include <gtest/gtest.h>

using namespace prox;

namespace {

/// Oracle: direct triple scan for additivity in the first argument.
std::optional<std::vector<Mask>> additivity_oracle(const ProximityRelation& r) {
  const Mask full = r.ground().full();
  for (Mask a = 1; a <= full; ++a)
    for (Mask b = 1; b <= full; ++b)
      for (Mask c = 1; c <= full; ++c)
        if (r.near_bits(a, b | c) != (r.near_bits(a, b) || r.near_bits(a, c))) return std::vector<Mask>{a, b, c};
  return std::nullopt;
}

}  // namespace

TEST(Axioms, OverlapPassesEverything) {
  auto rep = audit_axioms(prox::testing::overlap(3));
  for (auto [name, v] : rep.entries()) EXPECT_EQ(v->status, Verdict::Pass) << name;
  EXPECT_TRUE(rep.cech());
}

TEST(Axioms, ContainmentFailsWithMinimalWitnesses) {
  auto rep = audit_axioms(prox::testing::containment(2));
  ASSERT_EQ(rep.symmetry.status, Verdict::Fail);
  EXPECT_EQ(rep.symmetry.witness, (std::vector<Mask>{0b01, 0b11}));
  ASSERT_EQ(rep.overlap_implies_near.status, Verdict::Fail);
  EXPECT_EQ(rep.overlap_implies_near.witness, (std::vector<Mask>{0b11, 0b01}));
  EXPECT_EQ(rep.empty_set_far.status, Verdict::Pass);
  EXPECT_FALSE(rep.cech());
  EXPECT_TRUE(rep.any_failed());
}

TEST(Axioms, RibbonProbePassesCech) {
  auto [ring, probe] = ribbon_ring();
  auto rep = audit_axioms(descriptive_relation(ring.ground(), probe));
  EXPECT_TRUE(rep.cech());
  EXPECT_TRUE(rep.lodato.passed());
  EXPECT_TRUE(rep.efremovic.passed());
}

TEST(Axioms, SizeBoundsDegradeToSkipped) {
  auto nine = audit_axioms(prox::testing::overlap(9));
  EXPECT_TRUE(nine.cech());
  EXPECT_EQ(nine.lodato.status, Verdict::Skipped);
  EXPECT_EQ(nine.efremovic.status, Verdict::Skipped);
  auto big = audit_axioms(prox::testing::overlap(13));
  EXPECT_EQ(big.symmetry.status, Verdict::Skipped);
  EXPECT_FALSE(big.any_failed());
}

TEST(Axioms, EfremovicFailureCarriesExhaustion) {
  // Tolerance 0~1~2 without 0~2 is Cech but not Efremovic: {0} far {2}, yet
  // every separator E fails.
  auto r = ProximityRelation::from_tolerance(GroundSet::numbered(3), {0b011, 0b111, 0b110}, GeneratorKind::Tolerance,
                                             "path");
  auto rep = audit_axioms(r);
  EXPECT_TRUE(rep.cech());
  ASSERT_EQ(rep.efremovic.status, Verdict::Fail);
  EXPECT_EQ(rep.efremovic.witness, (std::vector<Mask>{0b001, 0b100}));
  EXPECT_EQ(rep.efremovic.exhausted, 8u);
  // Lodato fails too: {0} near {1} and {1} near {2}, but {0} far {2}.
  ASSERT_EQ(rep.lodato.status, Verdict::Fail);
  EXPECT_EQ(rep.lodato.witness, (std::vector<Mask>{0b001, 0b010, 0b100}));
}

TEST(Axioms, EmptySetFarHoldsByConvention) {
  std::mt19937 rng(3);
  for (int i = 0; i < 10; ++i)
    EXPECT_TRUE(audit_axioms(prox::testing::random_table(3, rng)).empty_set_far.passed());
}

TEST(Axioms, PropertyPointToleranceIsCech) {
  std::mt19937 rng(1);
  for (int round = 0; round < 80; ++round) {
    const std::size_t n = 1 + round % 8;
    auto rep = audit_axioms(prox::testing::random_tolerance(n, rng, 0.35));
    EXPECT_TRUE(rep.cech()) << "n=" << n;
  }
}

TEST(Axioms, PropertyAdditivityMatchesTripleOracle) {
  std::mt19937 rng(2);
  for (int round = 0; round < 60; ++round) {
    const std::size_t n = 1 + round % 4;
    auto r = prox::testing::random_table(n, rng, round % 3 == 0 ? 0.9 : 0.5);
    auto rep = audit_axioms(r);
    auto oracle = additivity_oracle(r);
    if (oracle) {
      ASSERT_EQ(rep.additivity_left.status, Verdict::Fail);
      EXPECT_EQ(rep.additivity_left.witness, *oracle);
    } else {
      EXPECT_TRUE(rep.additivity_left.passed());
    }
  }
}

TEST(Axioms, JsonNamesFailingSubsets) {
  GroundSet g{"e0", "e1"};
  auto r = build_relation(g, gen::Containment{});
  auto j = to_json(audit_axioms(r), g);
  EXPECT_EQ(j["symmetry"]["verdict"], "fail");
  EXPECT_EQ(j["symmetry"]["witness"].dump(), R"([["e0"],["e0","e1"]])");
  EXPECT_EQ(j["additivity-left"]["verdict"], "fail");
  EXPECT_EQ(j["additivity-left"]["witness"].dump(), R"([["e0","e1"],["e0"],["e1"]])");
  EXPECT_EQ(j["empty-set-far"]["verdict"], "pass");
}

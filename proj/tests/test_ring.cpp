#include "support.hpp"

#include <gtest/gtest.h>

#include <numeric>

using namespace prox;
using prox::testing::set;

namespace {

Mask coprime_residues(std::size_t n) {
  Mask m = 0;
  for (std::size_t k = 0; k < n; ++k)
    if (std::gcd(k, n) == 1) m |= bit(k);
  return m;
}

bool all_pass(const RingAuditReport& rep) {
  for (auto [name, v] : rep.entries())
    if (v->status != Verdict::Pass) return false;
  return true;
}

}  // namespace

TEST(BuildRing, Z4FromLabels) {
  std::vector<std::vector<std::string>> add(4), mul(4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      add[a].push_back(std::to_string((a + b) % 4));
      mul[a].push_back(std::to_string((a * b) % 4));
    }
  auto r = build_ring({"0", "1", "2", "3"}, add, mul, "0", "1");
  EXPECT_EQ(r.size(), 4u);
  EXPECT_EQ(r.add_table(), ring_zn(4).add_table());
  EXPECT_EQ(r.mul_table(), ring_zn(4).mul_table());
}

TEST(BuildRing, RejectsBadTables) {
  auto z4 = ring_zn(4);
  auto mul = z4.mul_table();
  mul[5] = 4;
  EXPECT_THROW(FiniteRing(z4.ground(), z4.add_table(), mul, 0, 1), InputError);
  EXPECT_THROW(FiniteRing(z4.ground(), {0, 1}, z4.mul_table(), 0, 1), InputError);
  EXPECT_THROW(FiniteRing(z4.ground(), z4.add_table(), z4.mul_table(), 4, 1), InputError);
  EXPECT_THROW(build_ring({"0", "1"}, {{"0", "1"}, {"1"}}, {{"0", "0"}, {"0", "1"}}, "0"), InputError);
  EXPECT_THROW(build_ring({"0", "1"}, {{"0", "1"}, {"1", "0"}}, {{"0", "0"}, {"0", "x"}}, "0"), InputError);
  EXPECT_THROW(build_ring({"0", "1"}, {{"0", "1"}, {"1", "0"}}, {{"0", "0"}, {"0", "1"}}, "0", "2"), InputError);
}

TEST(AuditRing, Z6PassesEverything) {
  auto rep = audit_ring(ring_zn(6));
  EXPECT_TRUE(all_pass(rep));
  EXPECT_TRUE(rep.is_ring());
}

TEST(AuditRing, RibbonRingWithUnity) {
  auto [r, probe] = ribbon_ring();
  auto rep = audit_ring(r);
  EXPECT_TRUE(all_pass(rep));
  EXPECT_EQ(r.ground().label(*r.one()), "1");
  EXPECT_EQ(r.ground().label(r.zero()), "0");
}

TEST(AuditRing, CorruptedZ4FailsDistributivity) {
  auto z4 = ring_zn(4);
  auto mul = z4.mul_table();
  mul[2 * 4 + 2] = 1;  // 2*2 := 1
  FiniteRing bad(z4.ground(), z4.add_table(), mul, 0, 1);
  auto rep = audit_ring(bad);
  EXPECT_FALSE(rep.is_ring());
  // Frozen minimal witnesses from exhaustive scan.
  ASSERT_EQ(rep.left_distributivity.status, Verdict::Fail);
  EXPECT_EQ(rep.left_distributivity.witness, (std::vector<std::size_t>{2, 1, 1}));
  ASSERT_EQ(rep.right_distributivity.status, Verdict::Fail);
  EXPECT_EQ(rep.right_distributivity.witness, (std::vector<std::size_t>{2, 1, 1}));
  EXPECT_EQ(rep.mul_associativity.witness, (std::vector<std::size_t>{2, 2, 3}));
  ASSERT_TRUE(rep.first_failure());
  EXPECT_EQ(rep.first_failure()->first, "mul-associativity");
}

TEST(AuditRing, WitnessesReproduce) {
  std::mt19937 rng(4);
  for (int round = 0; round < 30; ++round) {
    auto z = ring_zn(3 + round % 4);
    const std::size_t n = z.size();
    auto mul = z.mul_table();
    mul[rng() % (n * n)] = rng() % n;
    FiniteRing r(z.ground(), z.add_table(), mul, 0, 1);
    auto rep = audit_ring(r);
    if (rep.left_distributivity.status == Verdict::Fail) {
      auto w = rep.left_distributivity.witness;
      EXPECT_NE(r.mul(w[0], r.add(w[1], w[2])), r.add(r.mul(w[0], w[1]), r.mul(w[0], w[2])));
    }
    if (rep.mul_associativity.status == Verdict::Fail) {
      auto w = rep.mul_associativity.witness;
      EXPECT_NE(r.mul(r.mul(w[0], w[1]), w[2]), r.mul(w[0], r.mul(w[1], w[2])));
    }
  }
}

TEST(AuditRing, PropertyZnPasses) {
  for (std::size_t n = 2; n <= 12; ++n) EXPECT_TRUE(all_pass(audit_ring(ring_zn(n)))) << n;
}

TEST(AuditRing, PropertyBooleanRings) {
  for (std::size_t m = 1; m <= 3; ++m) {
    auto r = boolean_ring(m);
    EXPECT_TRUE(all_pass(audit_ring(r))) << m;
    for (std::size_t e = 0; e < r.size(); ++e) EXPECT_EQ(r.add(e, e), r.zero());
  }
  EXPECT_THROW(boolean_ring(5), CapError);
  EXPECT_EQ(boolean_ring(2).ground().labels(), (std::vector<std::string>{"0", "1", "a", "b"}));
}

TEST(AuditRing, NoUnityIsSkippedNotFailed) {
  auto r = ring_multiples(2, 8);
  EXPECT_EQ(r.ground().labels(), (std::vector<std::string>{"0", "2", "4", "6"}));
  EXPECT_FALSE(r.one());
  auto rep = audit_ring(r);
  EXPECT_EQ(rep.unity.status, Verdict::Skipped);
  EXPECT_TRUE(rep.is_ring());
  EXPECT_THROW(units_and_inverses(r), StructureError);
}

TEST(SetArithmetic, Examples) {
  auto z4 = ring_zn(4);
  EXPECT_EQ(set_arithmetic(z4, set(4, {1, 2}), set(4, {2}), SetOp::Add), set(4, {0, 3}));
  EXPECT_EQ(set_arithmetic(z4, set(4, {1, 3}), Subset::empty(4), SetOp::Neg), set(4, {1, 3}));
  EXPECT_EQ(set_arithmetic(z4, set(4, {1}), set(4, {1, 2}), SetOp::Sub), set(4, {0, 3}));
  EXPECT_EQ(set_arithmetic(z4, set(4, {2}), set(4, {1, 2, 3}), SetOp::Mul), set(4, {0, 2}));
  auto [rb, probe] = ribbon_ring();
  const auto& g = rb.ground();
  EXPECT_EQ(set_arithmetic_bits(rb, g.mask_of({"rbA"}), g.mask_of({"rbB"}), SetOp::Add), g.mask_of({"1"}));
  EXPECT_THROW(set_arithmetic(z4, set(3, {1}), set(4, {1}), SetOp::Add), InputError);
}

TEST(SetArithmetic, PropertyMonotone) {
  std::mt19937 rng(8);
  auto r = ring_zn(6);
  for (int i = 0; i < 500; ++i) {
    const Mask w = rng() % 64, k = rng() % 64;
    const Mask w2 = w | (rng() % 64), k2 = k | (rng() % 64);
    for (auto op : {SetOp::Add, SetOp::Mul, SetOp::Sub})
      EXPECT_TRUE(is_subset(set_arithmetic_bits(r, w, k, op), set_arithmetic_bits(r, w2, k2, op)));
  }
}

TEST(Units, Examples) {
  EXPECT_EQ(units_and_inverses(ring_zn(6)).units, bit(1) | bit(5));
  EXPECT_EQ(units_and_inverses(ring_gf(5)).units, 0b11110u);
  auto [rb, probe] = ribbon_ring();
  EXPECT_EQ(units_and_inverses(rb).units, rb.ground().mask_of({"1"}));
}

TEST(Units, PropertyCoprimeResidues) {
  for (std::size_t n = 2; n <= 12; ++n) {
    auto u = units_and_inverses(ring_zn(n));
    EXPECT_EQ(u.units, coprime_residues(n)) << n;
    EXPECT_EQ(u.right_invertible, u.units);
    EXPECT_EQ(u.left_invertible, u.units);
  }
}

TEST(Builtins, GfRejectsNonPrime) {
  EXPECT_THROW(ring_gf(4), InputError);
  EXPECT_THROW(ring_gf(1), InputError);
  EXPECT_NO_THROW(ring_gf(13));
  EXPECT_THROW(ring_zn(17), CapError);
  EXPECT_THROW(ring_zn(0), CapError);
}

TEST(DirectProduct, Z2xZ3IsZ6UnderCrt) {
  auto p = direct_product_ring(ring_zn(2), ring_zn(3));
  auto z6 = ring_zn(6);
  auto crt = [](std::size_t k) { return (k % 2) * 3 + k % 3; };
  for (std::size_t a = 0; a < 6; ++a)
    for (std::size_t b = 0; b < 6; ++b) {
      EXPECT_EQ(p.add(crt(a), crt(b)), crt(z6.add(a, b)));
      EXPECT_EQ(p.mul(crt(a), crt(b)), crt(z6.mul(a, b)));
    }
  EXPECT_EQ(*p.one(), crt(1));
  EXPECT_EQ(p.zero(), 0u);
  EXPECT_EQ(p.ground().label(4), "(1,1)");
}

TEST(DirectProduct, SizesAndUnity) {
  auto big = direct_product_ring(ring_zn(4), ring_zn(4));
  EXPECT_EQ(big.size(), 16u);
  EXPECT_TRUE(audit_ring(big).is_ring());
  EXPECT_THROW(direct_product_ring(ring_zn(4), ring_zn(5)), CapError);
  EXPECT_FALSE(direct_product_ring(ring_zn(2), ring_multiples(2, 4)).one());
}

TEST(DirectProduct, PropertyAuditPassesForPassingFactors) {
  std::vector<FiniteRing> factors{ring_zn(1), ring_zn(2), ring_zn(3), ring_zn(4), boolean_ring(2),
                                  ring_multiples(2, 8)};
  for (const auto& a : factors)
    for (const auto& b : factors) {
      if (a.size() * b.size() > 16) continue;
      auto rep = audit_ring(direct_product_ring(a, b));
      EXPECT_TRUE(rep.is_ring());
      for (auto [name, v] : rep.entries()) EXPECT_NE(v->status, Verdict::Fail) << name;
    }
}

TEST(AuditRing, JsonLabelsWitness) {
  auto z4 = ring_zn(4);
  auto mul = z4.mul_table();
  mul[2 * 4 + 2] = 1;
  FiniteRing bad(z4.ground(), z4.add_table(), mul, 0, 1);
  auto j = to_json(audit_ring(bad), bad.ground());
  EXPECT_EQ(j["left-distributivity"]["witness"].dump(), R"(["2","1","1"])");
  EXPECT_EQ(j["add-associativity"]["verdict"], "pass");
}

TEST(Group, AuditsAndInverts) {
  auto z5 = ring_zn(5);
  FiniteGroup g(z5.ground(), z5.add_table());
  EXPECT_EQ(g.identity(), 0u);
  EXPECT_EQ(g.inverse(2), 3u);
  EXPECT_THROW(FiniteGroup(z5.ground(), z5.mul_table()), StructureError);
}

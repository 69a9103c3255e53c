#pragma once

#include <prox/relation.hpp>
#include <prox/report.hpp>

#include <array>
#include <string>
#include <vector>

namespace prox {

inline constexpr std::size_t kCechAuditCap = 12;
inline constexpr std::size_t kTripleAuditCap = 8;

struct AxiomVerdict {
  Verdict status = Verdict::Pass;
  /// Failing subsets in check order: (A,B) for pair axioms, (A,B,C) for
  /// triple axioms. Efremovič failures carry (A,B) and the number of
  /// separating candidates E that were exhausted.
  std::vector<Mask> witness;
  std::uint64_t exhausted = 0;
  std::string note;

  bool passed() const noexcept { return status == Verdict::Pass; }
};

struct AxiomReport {
  AxiomVerdict symmetry;
  AxiomVerdict overlap_implies_near;
  AxiomVerdict additivity_left;   // A near (B u C)  <=>  A near B or A near C
  AxiomVerdict additivity_right;  // (B u C) near A  <=>  B near A or C near A
  AxiomVerdict empty_set_far;
  AxiomVerdict lodato;
  AxiomVerdict efremovic;

  bool cech() const {
    return symmetry.passed() && overlap_implies_near.passed() && additivity_left.passed() &&
           additivity_right.passed() && empty_set_far.passed();
  }

  /// (name, verdict) in report order.
  std::array<std::pair<const char*, const AxiomVerdict*>, 7> entries() const {
    return {{{"symmetry", &symmetry},
             {"overlap-implies-near", &overlap_implies_near},
             {"additivity-left", &additivity_left},
             {"additivity-right", &additivity_right},
             {"empty-set-far", &empty_set_far},
             {"lodato", &lodato},
             {"efremovic", &efremovic}}};
  }

  bool any_failed() const {
    for (auto [_, v] : entries())
      if (v->status == Verdict::Fail) return true;
    return false;
  }
};

namespace detail {

inline AxiomVerdict fail_with(std::vector<Mask> w) {
  AxiomVerdict v;
  v.status = Verdict::Fail;
  v.witness = std::move(w);
  return v;
}

inline AxiomVerdict skipped_for(std::size_t n, std::size_t cap) {
  AxiomVerdict v;
  v.status = Verdict::Skipped;
  v.note = "ground size " + std::to_string(n) + " exceeds audit bound " + std::to_string(cap);
  return v;
}

/// Additivity in one argument. For a fixed A the axiom holds for every
/// (B,C) iff near(A,B) equals the union of near(A,{b}) over b in B, so rows
/// are screened pointwise and only the first broken row is scanned for the
/// minimal triple.
template <typename Near>
AxiomVerdict audit_additivity(Mask full, std::size_t n, Near near) {
  std::vector<bool> single(n);
  for (Mask a = 1; a <= full; ++a) {
    for (std::size_t b = 0; b < n; ++b) single[b] = near(a, bit(b));
    bool broken = false;
    for (Mask b = 1; b <= full && !broken; ++b) {
      bool any = false;
      for_each_bit(b, [&](std::size_t i) { any = any || single[i]; });
      broken = any != near(a, b);
    }
    if (!broken) continue;
    for (Mask b = 1; b <= full; ++b)
      for (Mask c = 1; c <= full; ++c)
        if (near(a, b | c) != (near(a, b) || near(a, c))) return fail_with({a, b, c});
  }
  return {};
}

}  // namespace detail

/// Exhaustive axiom audit over nonempty subsets. Fail verdicts carry the
/// lexicographically minimal witness (subsets ordered by mask value).
inline AxiomReport audit_axioms(const ProximityRelation& rel) {
  AxiomReport rep;
  const std::size_t n = rel.size();
  const Mask full = rel.ground().full();
  auto near = [&](Mask a, Mask b) { return rel.near_bits(a, b); };

  if (n > kCechAuditCap) {
    rep.symmetry = rep.overlap_implies_near = rep.additivity_left = rep.additivity_right = rep.empty_set_far =
        detail::skipped_for(n, kCechAuditCap);
  } else {
    for (Mask a = 1; a <= full && rep.symmetry.passed(); ++a)
      for (Mask b = 1; b <= full; ++b)
        if (near(a, b) != near(b, a)) {
          rep.symmetry = detail::fail_with({a, b});
          break;
        }
    for (Mask a = 1; a <= full && rep.overlap_implies_near.passed(); ++a)
      for (Mask b = 1; b <= full; ++b)
        if ((a & b) != 0 && !near(a, b)) {
          rep.overlap_implies_near = detail::fail_with({a, b});
          break;
        }
    rep.additivity_left = detail::audit_additivity(full, n, near);
    rep.additivity_right = detail::audit_additivity(full, n, [&](Mask a, Mask b) { return near(b, a); });
    for (Mask b = 0; b <= full; ++b)
      if (near(0, b) || near(b, 0)) {
        rep.empty_set_far = detail::fail_with({0, b});
        break;
      }
  }

  if (n > kTripleAuditCap) {
    rep.lodato = rep.efremovic = detail::skipped_for(n, kTripleAuditCap);
    return rep;
  }

  // points[c] = {b : {b} near C}
  std::vector<Mask> points(std::size_t{full} + 1, 0);
  for (Mask c = 1; c <= full; ++c)
    for (std::size_t b = 0; b < n; ++b)
      if (near(bit(b), c)) points[c] |= bit(b);

  for (Mask a = 1; a <= full && rep.lodato.passed(); ++a)
    for (Mask b = 1; b <= full && rep.lodato.passed(); ++b) {
      if (!near(a, b)) continue;
      for (Mask c = 1; c <= full; ++c)
        if (is_subset(b, points[c]) && !near(a, c)) {
          rep.lodato = detail::fail_with({a, b, c});
          break;
        }
    }

  for (Mask a = 1; a <= full && rep.efremovic.passed(); ++a)
    for (Mask b = 1; b <= full; ++b) {
      if (near(a, b)) continue;
      bool separated = false;
      for (Mask e = 0; e <= full && !separated; ++e) separated = !near(a, e) && !near(full & ~e, b);
      if (!separated) {
        rep.efremovic = detail::fail_with({a, b});
        rep.efremovic.exhausted = std::uint64_t{full} + 1;
        break;
      }
    }
  return rep;
}

inline Json to_json(const AxiomReport& rep, const GroundSet& ground) {
  Json j = Json::object();
  for (auto [name, v] : rep.entries()) {
    Json e;
    e["verdict"] = to_string(v->status);
    if (v->status == Verdict::Fail) {
      Json w = Json::array();
      for (Mask m : v->witness) w.push_back(ground.labels_of(m));
      e["witness"] = w;
      if (v->exhausted) e["separators_tried"] = v->exhausted;
    }
    if (!v->note.empty()) e["note"] = v->note;
    j[name] = e;
  }
  return j;
}

}  // namespace prox

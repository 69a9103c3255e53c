#pragma once

#include <prox/relation.hpp>

#include <algorithm>
#include <vector>

namespace prox {

inline constexpr std::size_t kTopologyCap = 12;

/// cl(A) = {x : {x} near A}. Closure of the empty set is empty.
inline Mask closure_bits(const ProximityRelation& rel, Mask a) {
  if (a == 0) return 0;
  if (rel.point_generated()) return rel.neighborhood(a);
  Mask out = 0;
  for (std::size_t x = 0; x < rel.size(); ++x)
    if (rel.near_bits(bit(x), a)) out |= bit(x);
  return out;
}

inline Subset closure(const ProximityRelation& rel, const Subset& a) {
  a.checked(rel.size());
  return Subset(closure_bits(rel, a.bits()), rel.size());
}

struct TopologyReport {
  std::vector<Mask> closed_family;  // ascending
  std::vector<Mask> open_family;    // complements, in the same order
  bool is_union_stable = true;
  bool is_intersection_stable = true;

  bool is_closed(Mask m) const {
    return std::binary_search(closed_family.begin(), closed_family.end(), m);
  }
};

/// Fixed points of the closure over all subsets, with stability of the
/// closed family under pairwise union and intersection reported rather than
/// assumed.
inline TopologyReport closed_family(const ProximityRelation& rel) {
  const std::size_t n = rel.size();
  if (n > kTopologyCap)
    throw CapError("closed-family enumeration needs ground size <= " + std::to_string(kTopologyCap));
  const Mask full = rel.ground().full();
  TopologyReport rep;
  std::vector<bool> closed(std::size_t{full} + 1, false);
  for (Mask m = 0; m <= full; ++m)
    if (closure_bits(rel, m) == m) {
      closed[m] = true;
      rep.closed_family.push_back(m);
      rep.open_family.push_back(full & ~m);
    }
  for (Mask a : rep.closed_family)
    for (Mask b : rep.closed_family) {
      rep.is_union_stable = rep.is_union_stable && closed[a | b];
      rep.is_intersection_stable = rep.is_intersection_stable && closed[a & b];
    }
  return rep;
}

}  // namespace prox

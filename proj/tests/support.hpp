#pragma once

#include <prox/prox.hpp>

#include <random>
#include <vector>

namespace prox::testing {

/// Random symmetric reflexive tolerance on n points; `density` in [0,1].
inline ProximityRelation random_tolerance(std::size_t n, std::mt19937& rng, double density = 0.3) {
  std::bernoulli_distribution coin(density);
  std::vector<Mask> rows(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng)) {
        rows[i] |= bit(j);
        rows[j] |= bit(i);
      }
  return ProximityRelation::from_tolerance(GroundSet::numbered(n), rows, GeneratorKind::Tolerance, "random");
}

/// Random predicate relation with no axiom guarantees.
inline ProximityRelation random_table(std::size_t n, std::mt19937& rng, double density = 0.5) {
  const Mask full = full_mask(n);
  std::bernoulli_distribution coin(density);
  auto near = std::make_shared<std::vector<bool>>((std::size_t{full} + 1) * (std::size_t{full} + 1));
  for (Mask a = 1; a <= full; ++a)
    for (Mask b = 1; b <= full; ++b) (*near)[a * (std::size_t{full} + 1) + b] = coin(rng);
  return ProximityRelation::from_predicate(
      GroundSet::numbered(n), [near, full](Mask a, Mask b) { return (*near)[a * (std::size_t{full} + 1) + b]; },
      GeneratorKind::Table, "random-table");
}

inline ProximityRelation overlap(std::size_t n) { return overlap_relation(GroundSet::numbered(n)); }

inline ProximityRelation containment(std::size_t n) {
  return build_relation(GroundSet::numbered(n), gen::Containment{});
}

inline Subset set(std::size_t universe, std::initializer_list<std::size_t> idx) {
  Mask m = 0;
  for (auto i : idx) m |= bit(i);
  return Subset(m, universe);
}

/// Brute-force continuity oracle: W near K implies f(W) near f(K).
inline bool continuous_oracle(const ProximityRelation& x, const ProximityRelation& y,
                              const std::vector<std::size_t>& f) {
  const Mask full = x.ground().full();
  for (Mask w = 1; w <= full; ++w)
    for (Mask k = 1; k <= full; ++k)
      if (x.near_bits(w, k) && !y.near_bits(image(w, f), image(k, f))) return false;
  return true;
}

}  // namespace prox::testing

#pragma once

#include <prox/algebra/ring.hpp>
#include <prox/proximal.hpp>
#include <prox/relation.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace prox {

/// Ribbon invariant 2k + n from the bridge-edge count k and the
/// common-vertex count n.
constexpr std::int64_t ribbon_beta(std::int64_t bridges, std::int64_t common_vertices) {
  if (bridges < 0 || common_vertices < 0) throw InputError("ribbon counts must be non-negative");
  return 2 * bridges + common_vertices;
}

/// One ribbon of a cell complex: indices into the complex's edge and
/// vertex lists.
struct Ribbon {
  std::string name;
  std::vector<std::size_t> bridge_edges;
  std::vector<std::size_t> common_vertices;

  std::int64_t beta() const {
    return ribbon_beta(static_cast<std::int64_t>(bridge_edges.size()),
                       static_cast<std::int64_t>(common_vertices.size()));
  }
};

/// A cell complex carrying the two ribbons rbA and rbB.
struct RibbonComplex {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  Ribbon rbA;
  Ribbon rbB;

  void validate() const {
    for (const auto& [u, v] : edges)
      if (u >= vertices.size() || v >= vertices.size()) throw InputError("edge endpoint is not a vertex");
    for (const Ribbon* r : {&rbA, &rbB}) {
      for (auto e : r->bridge_edges)
        if (e >= edges.size()) throw InputError("ribbon " + r->name + ": bridge edge not in the complex");
      for (auto v : r->common_vertices)
        if (v >= vertices.size()) throw InputError("ribbon " + r->name + ": common vertex not in the complex");
    }
  }
};

/// Fixture complex with (k, n) = (2, 0) for rbA and (2, 1) for rbB, giving
/// probe values 4 and 5. Other (k, n) pairs with the same values are
/// equally valid; only the invariant feeds the relation.
inline RibbonComplex default_ribbon_complex() {
  RibbonComplex c;
  c.vertices = {"v0", "v1", "v2", "v3", "v4", "v5"};
  c.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}};
  c.rbA = Ribbon{"rbA", {0, 3}, {}};
  c.rbB = Ribbon{"rbB", {1, 4}, {2}};
  c.validate();
  return c;
}

/// Probe values for the two elements the complex leaves unspecified.
struct RibbonProbeConfig {
  std::int64_t zero = 0;
  std::int64_t one = 9;
};

inline ProximityRelation descriptive_relation(const GroundSet& ground, const ProbeAssignment& probe) {
  return probe_relation(ground, probe);
}

/// The four-element ring {0, rbA, rbB, 1} under symmetric difference and
/// intersection, with its default probe.
inline std::pair<FiniteRing, ProbeAssignment> ribbon_ring(const RibbonComplex& complex = default_ribbon_complex(),
                                                          RibbonProbeConfig cfg = {}) {
  complex.validate();
  const std::vector<std::string> k{"0", "rbA", "rbB", "1"};
  auto ring = build_ring(k,
                         {{"0", "rbA", "rbB", "1"},
                          {"rbA", "0", "1", "rbB"},
                          {"rbB", "1", "0", "rbA"},
                          {"1", "rbB", "rbA", "0"}},
                         {{"0", "0", "0", "0"},
                          {"0", "rbA", "0", "rbA"},
                          {"0", "0", "rbB", "rbB"},
                          {"0", "rbA", "rbB", "1"}},
                         "0", "1");
  ProbeAssignment probe{{"0", {FeatureValue(cfg.zero)}},
                        {"rbA", {FeatureValue(complex.rbA.beta())}},
                        {"rbB", {FeatureValue(complex.rbB.beta())}},
                        {"1", {FeatureValue(cfg.one)}}};
  return {std::move(ring), std::move(probe)};
}

enum class DescriptiveKind { Ring, Field };

/// Runs the proximal engine against the descriptive relation of `probe`;
/// continuity with respect to that relation is descriptive continuity.
inline SuiteReport verify_descriptive_structure(const FiniteRing& ring, const ProbeAssignment& probe,
                                                DescriptiveKind kind, const std::string& label = "ring",
                                                const SuiteOptions& so = {}) {
  ProximalRing ps(ring, descriptive_relation(ring.ground(), probe), ProductMode::Rectangle, label);
  SuiteReport rep = kind == DescriptiveKind::Field ? verify_proximal_field(ps, so.scan) : run_full_suite(ps, so);
  rep.structure = std::string(kind == DescriptiveKind::Field ? "descriptive field: " : "descriptive ring: ") + label;
  return rep;
}

inline SuiteReport verify_descriptive_structure(const FiniteModule& module, const ProbeAssignment& ring_probe,
                                                const ProbeAssignment& carrier_probe,
                                                const std::string& label = "module", const SuiteOptions& so = {}) {
  ProximalModule pm(module, descriptive_relation(module.ring().ground(), ring_probe),
                    descriptive_relation(module.carrier(), carrier_probe), ProductMode::Rectangle, label);
  auto rep = verify_proximal_module(pm, so);
  rep.structure = "descriptive module: " + label;
  return rep;
}

}  // namespace prox

#pragma once

#include <prox/errors.hpp>
#include <prox/subset.hpp>

#include <boost/rational.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace prox {

using FeatureValue = boost::rational<std::int64_t>;
using FeatureTuple = std::vector<FeatureValue>;

/// Probe function: feature tuple per element label.
using ProbeAssignment = std::map<std::string, FeatureTuple>;

enum class Representation { PointTolerance, Table };

enum class GeneratorKind { Overlap, Containment, ProbeEquality, GapMetric, Table, Tolerance, Subspace, Product };

inline const char* to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::Overlap: return "overlap";
    case GeneratorKind::Containment: return "containment";
    case GeneratorKind::ProbeEquality: return "probe-equality";
    case GeneratorKind::GapMetric: return "gap-metric";
    case GeneratorKind::Table: return "table";
    case GeneratorKind::Tolerance: return "tolerance";
    case GeneratorKind::Subspace: return "subspace";
    case GeneratorKind::Product: return "product";
  }
  return "?";
}

/// Generator recipes accepted by build_relation.
namespace gen {
struct Overlap {};
struct Containment {};
struct ProbeEquality {
  ProbeAssignment probe;
};
struct GapMetric {
  std::map<std::string, std::vector<double>> coords;
  double epsilon = 0.0;
};
struct Table {
  std::vector<std::pair<Mask, Mask>> pairs;
  bool complete = false;
};
}  // namespace gen

using RelationSpec = std::variant<gen::Overlap, gen::Containment, gen::ProbeEquality, gen::GapMetric, gen::Table>;

/// Immutable nearness predicate over the nonempty subsets of a ground set.
/// The empty set is far from everything.
///
/// PointTolerance relations are generated by a symmetric reflexive element
/// relation (A near B iff some a in A is related to some b in B) and keep a
/// precomputed neighbourhood for every subset. Table relations evaluate an
/// explicit predicate and carry no axiom guarantees.
class ProximityRelation {
 public:
  using Predicate = std::function<bool(Mask, Mask)>;

  /// Point-generated relation from an adjacency row per element. Rows are
  /// symmetrized and made reflexive.
  static ProximityRelation from_tolerance(GroundSet ground, std::vector<Mask> adjacency,
                                          GeneratorKind kind, std::string name) {
    const std::size_t n = ground.size();
    if (adjacency.size() != n) throw InputError("tolerance matrix size does not match ground set");
    for (std::size_t i = 0; i < n; ++i) {
      adjacency[i] &= full_mask(n);
      adjacency[i] |= bit(i);
    }
    for (std::size_t i = 0; i < n; ++i)
      for_each_bit(adjacency[i], [&](std::size_t j) { adjacency[j] |= bit(i); });

    auto st = std::make_shared<State>();
    st->ground = std::move(ground);
    st->name = std::move(name);
    st->kind = kind;
    st->rep = Representation::PointTolerance;
    st->adjacency = std::move(adjacency);
    st->hood.assign(std::size_t{1} << n, 0);
    for (Mask m = 1; m < st->hood.size(); ++m)
      st->hood[m] = st->hood[m & (m - 1)] | st->adjacency[std::countr_zero(m)];
    return ProximityRelation(std::move(st));
  }

  static ProximityRelation from_predicate(GroundSet ground, Predicate pred, GeneratorKind kind,
                                          std::string name) {
    auto st = std::make_shared<State>();
    st->ground = std::move(ground);
    st->name = std::move(name);
    st->kind = kind;
    st->rep = Representation::Table;
    st->table = std::move(pred);
    return ProximityRelation(std::move(st));
  }

  const GroundSet& ground() const noexcept { return state_->ground; }
  std::size_t size() const noexcept { return state_->ground.size(); }
  const std::string& name() const noexcept { return state_->name; }
  GeneratorKind kind() const noexcept { return state_->kind; }
  Representation representation() const noexcept { return state_->rep; }
  bool point_generated() const noexcept { return state_->rep == Representation::PointTolerance; }

  bool near(const Subset& a, const Subset& b) const {
    a.checked(size());
    b.checked(size());
    return near_bits(a.bits(), b.bits());
  }

  /// Unchecked hot path; masks must lie inside the ground set.
  bool near_bits(Mask a, Mask b) const {
    if (a == 0 || b == 0) return false;
    if (state_->rep == Representation::PointTolerance) return (state_->hood[a] & b) != 0;
    return state_->table(a, b);
  }

  /// Points related to some member of `a`. PointTolerance only.
  Mask neighborhood(Mask a) const { return state_->hood[a]; }

  /// Element tolerance row. PointTolerance only.
  Mask related(std::size_t i) const { return state_->adjacency[i]; }
  const std::vector<Mask>& adjacency() const noexcept { return state_->adjacency; }

 private:
  struct State {
    GroundSet ground;
    std::string name;
    GeneratorKind kind = GeneratorKind::Overlap;
    Representation rep = Representation::PointTolerance;
    std::vector<Mask> adjacency;
    std::vector<Mask> hood;
    Predicate table;
  };

  explicit ProximityRelation(std::shared_ptr<const State> st) : state_(std::move(st)) {}

  std::shared_ptr<const State> state_;
};

namespace detail {

inline std::vector<Mask> identity_rows(std::size_t n) {
  std::vector<Mask> rows(n);
  for (std::size_t i = 0; i < n; ++i) rows[i] = bit(i);
  return rows;
}

template <typename Map>
const typename Map::mapped_type& lookup(const Map& m, const std::string& label, const char* what) {
  auto it = m.find(label);
  if (it == m.end()) throw InputError(std::string(what) + " missing for element '" + label + "'");
  return it->second;
}

template <typename Map>
void reject_strangers(const Map& m, const GroundSet& ground, const char* what) {
  for (const auto& [label, _] : m)
    if (!ground.has(label))
      throw InputError(std::string(what) + " names unknown element '" + label + "'");
}

inline std::uint64_t pair_key(Mask a, Mask b) { return (std::uint64_t{a} << 32) | b; }

}  // namespace detail

/// Point relation generated by a~b iff a=b or some basis pair (P,Q) has a in P
/// and b in Q, symmetrized.
inline ProximityRelation complete_to_cech(const GroundSet& ground,
                                          const std::vector<std::pair<Mask, Mask>>& basis,
                                          std::string name = "tolerance") {
  auto rows = detail::identity_rows(ground.size());
  for (const auto& [p, q] : basis) {
    if (p == 0 || q == 0) throw InputError("basis pairs must consist of nonempty subsets");
    if ((p | q) & ~ground.full()) throw InputError("basis subset outside the ground set");
    for_each_bit(p, [&](std::size_t a) { rows[a] |= q; });
  }
  return ProximityRelation::from_tolerance(ground, std::move(rows), GeneratorKind::Tolerance, std::move(name));
}

inline ProximityRelation overlap_relation(const GroundSet& ground) {
  return ProximityRelation::from_tolerance(ground, detail::identity_rows(ground.size()),
                                           GeneratorKind::Overlap, "overlap");
}

/// Point relation a~b iff probe(a) = probe(b).
inline ProximityRelation probe_relation(const GroundSet& ground, const ProbeAssignment& probe) {
  detail::reject_strangers(probe, ground, "probe");
  const std::size_t n = ground.size();
  std::vector<const FeatureTuple*> feats(n);
  for (std::size_t i = 0; i < n; ++i) feats[i] = &detail::lookup(probe, ground.label(i), "probe value");
  for (std::size_t i = 1; i < n; ++i)
    if (feats[i]->size() != feats[0]->size()) throw InputError("probe feature tuples have differing arity");
  std::vector<Mask> rows(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (*feats[i] == *feats[j]) rows[i] |= bit(j);
  return ProximityRelation::from_tolerance(ground, std::move(rows), GeneratorKind::ProbeEquality, "probe-equality");
}

inline ProximityRelation build_relation(const GroundSet& ground, const RelationSpec& spec) {
  const std::size_t n = ground.size();
  return std::visit(
      [&](const auto& g) -> ProximityRelation {
        using G = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<G, gen::Overlap>) {
          return overlap_relation(ground);
        } else if constexpr (std::is_same_v<G, gen::Containment>) {
          return ProximityRelation::from_predicate(
              ground, [](Mask a, Mask b) { return is_subset(a, b); }, GeneratorKind::Containment, "containment");
        } else if constexpr (std::is_same_v<G, gen::ProbeEquality>) {
          return probe_relation(ground, g.probe);
        } else if constexpr (std::is_same_v<G, gen::GapMetric>) {
          if (!(g.epsilon >= 0.0)) throw InputError("gap-metric epsilon must be >= 0");
          detail::reject_strangers(g.coords, ground, "coords");
          std::vector<const std::vector<double>*> pts(n);
          for (std::size_t i = 0; i < n; ++i) pts[i] = &detail::lookup(g.coords, ground.label(i), "coordinates");
          for (std::size_t i = 1; i < n; ++i)
            if (pts[i]->size() != pts[0]->size()) throw InputError("coordinates have differing dimension");
          std::vector<Mask> rows(n, 0);
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
              double sq = 0.0;
              for (std::size_t d = 0; d < pts[i]->size(); ++d) {
                const double diff = (*pts[i])[d] - (*pts[j])[d];
                sq += diff * diff;
              }
              if (std::sqrt(sq) <= g.epsilon) rows[i] |= bit(j);
            }
          return ProximityRelation::from_tolerance(ground, std::move(rows), GeneratorKind::GapMetric, "gap-metric");
        } else {
          if (g.complete) return complete_to_cech(ground, g.pairs, "table (completed)");
          std::vector<std::uint64_t> keys;
          for (const auto& [a, b] : g.pairs) {
            if (a == 0 || b == 0) throw InputError("table pairs must consist of nonempty subsets");
            if ((a | b) & ~ground.full()) throw InputError("table subset outside the ground set");
            keys.push_back(detail::pair_key(a, b));
          }
          std::sort(keys.begin(), keys.end());
          keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
          return ProximityRelation::from_predicate(
              ground,
              [keys = std::move(keys)](Mask a, Mask b) {
                return std::binary_search(keys.begin(), keys.end(), detail::pair_key(a, b));
              },
              GeneratorKind::Table, "table");
        }
      },
      spec);
}

/// Relation on the subspace S: near_S(A,B) = near(A,B) with A, B read in the
/// parent ground set. Elements of S keep their parent order.
inline ProximityRelation restrict_subspace(const ProximityRelation& rel, const Subset& s) {
  s.checked(rel.size());
  if (s.is_empty()) throw InputError("cannot restrict to the empty subspace");
  const auto embed = members(s.bits());
  GroundSet sub(rel.ground().labels_of(s.bits()));
  if (rel.point_generated()) {
    std::vector<Mask> rows(embed.size(), 0);
    for (std::size_t i = 0; i < embed.size(); ++i)
      for (std::size_t j = 0; j < embed.size(); ++j)
        if (contains(rel.related(embed[i]), embed[j])) rows[i] |= bit(j);
    return ProximityRelation::from_tolerance(std::move(sub), std::move(rows), GeneratorKind::Subspace,
                                             rel.name() + " | subspace");
  }
  auto lift = [embed](Mask m) {
    Mask out = 0;
    for_each_bit(m, [&](std::size_t i) { out |= bit(embed[i]); });
    return out;
  };
  return ProximityRelation::from_predicate(
      std::move(sub), [rel, lift](Mask a, Mask b) { return rel.near_bits(lift(a), lift(b)); },
      GeneratorKind::Subspace, rel.name() + " | subspace");
}

/// Product proximity on X x Y. Pair (i,j) has index i*|Y| + j.
class ProductRelation {
 public:
  ProductRelation(ProximityRelation x, ProximityRelation y) : x_(std::move(x)), y_(std::move(y)) {}

  const ProximityRelation& first() const noexcept { return x_; }
  const ProximityRelation& second() const noexcept { return y_; }

  /// (A x B) near (C x D) iff A near C and B near D.
  bool near_rectangles(Mask a, Mask b, Mask c, Mask d) const {
    return x_.near_bits(a, c) && y_.near_bits(b, d);
  }

  std::size_t pair_index(std::size_t i, std::size_t j) const noexcept { return i * y_.size() + j; }

  Mask rectangle(Mask a, Mask b) const {
    Mask out = 0;
    for_each_bit(a, [&](std::size_t i) { for_each_bit(b, [&](std::size_t j) { out |= bit(pair_index(i, j)); }); });
    return out;
  }

  std::pair<Mask, Mask> projections(Mask s) const {
    Mask p = 0, q = 0;
    const std::size_t ny = y_.size();
    for_each_bit(s, [&](std::size_t k) {
      p |= bit(k / ny);
      q |= bit(k % ny);
    });
    return {p, q};
  }

  /// Nearness on arbitrary subsets of X x Y by projections.
  bool near_projected(Mask s, Mask t) const {
    auto [s1, s2] = projections(s);
    auto [t1, t2] = projections(t);
    return x_.near_bits(s1, t1) && y_.near_bits(s2, t2);
  }

  GroundSet ground() const {
    std::vector<std::string> labels;
    for (const auto& a : x_.ground().labels())
      for (const auto& b : y_.ground().labels()) labels.push_back("(" + a + "," + b + ")");
    return GroundSet(std::move(labels));
  }

  /// Materializes the product as a relation on X x Y. Point-generated
  /// factors give the tolerance product (a,b)~(c,d) iff a~c and b~d; any
  /// other factor falls back to the projection predicate. Both agree on
  /// rectangles.
  ProximityRelation as_relation() const {
    const std::size_t total = x_.size() * y_.size();
    if (total > kMaxGround)
      throw CapError("product ground set has " + std::to_string(total) + " elements; at most " +
                     std::to_string(kMaxGround) + " are supported");
    auto g = ground();
    const std::string name = "(" + x_.name() + ") x (" + y_.name() + ")";
    if (x_.point_generated() && y_.point_generated()) {
      std::vector<Mask> rows(total, 0);
      for (std::size_t a = 0; a < x_.size(); ++a)
        for (std::size_t b = 0; b < y_.size(); ++b)
          rows[pair_index(a, b)] = rectangle(x_.related(a), y_.related(b));
      return ProximityRelation::from_tolerance(std::move(g), std::move(rows), GeneratorKind::Product, name);
    }
    return ProximityRelation::from_predicate(
        std::move(g), [self = *this](Mask s, Mask t) { return self.near_projected(s, t); },
        GeneratorKind::Product, name);
  }

 private:
  ProximityRelation x_;
  ProximityRelation y_;
};

inline ProductRelation product_relation(ProximityRelation x, ProximityRelation y) {
  return ProductRelation(std::move(x), std::move(y));
}

}  // namespace prox

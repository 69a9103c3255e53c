#pragma once

#include <prox/algebra/group.hpp>
#include <prox/algebra/module.hpp>
#include <prox/algebra/ring.hpp>
#include <prox/relation.hpp>
#include <prox/report.hpp>
#include <prox/scan.hpp>
#include <prox/topology.hpp>

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace prox {

/// Product-continuity semantics. Rectangle iterates pairs of rectangles
/// A x B; FullProduct iterates every subset of the product (carriers of at
/// most three elements).
enum class ProductMode { Rectangle, FullProduct };

inline const char* to_string(ProductMode m) { return m == ProductMode::Rectangle ? "rectangle" : "full"; }

inline constexpr std::size_t kClosedSetCap = 10;

namespace detail {

inline void require_same_ground(const GroundSet& algebra, const ProximityRelation& rel, const char* what) {
  if (!(algebra == rel.ground()))
    throw InputError(std::string(what) + ": relation ground set does not match the algebra's elements");
}

inline void require_mode_fits(ProductMode mode, std::size_t n) {
  if (mode == ProductMode::FullProduct && n > kFullProductCap)
    throw CapError("full-product mode needs carriers of size <= " + std::to_string(kFullProductCap));
}

}  // namespace detail

/// A ring paired with a proximity relation on its elements.
struct ProximalRing {
  FiniteRing ring;
  ProximityRelation rel;
  ProductMode mode = ProductMode::Rectangle;
  std::string label = "ring";

  ProximalRing(FiniteRing r, ProximityRelation z, ProductMode m = ProductMode::Rectangle, std::string name = "ring")
      : ring(std::move(r)), rel(std::move(z)), mode(m), label(std::move(name)) {
    detail::require_same_ground(ring.ground(), rel, "proximal ring");
    detail::require_mode_fits(mode, ring.size());
  }
};

struct ProximalGroup {
  FiniteGroup group;
  ProximityRelation rel;
  ProductMode mode = ProductMode::Rectangle;
  std::string label = "group";

  ProximalGroup(FiniteGroup g, ProximityRelation z, ProductMode m = ProductMode::Rectangle,
                std::string name = "group")
      : group(std::move(g)), rel(std::move(z)), mode(m), label(std::move(name)) {
    detail::require_same_ground(group.ground(), rel, "proximal group");
    detail::require_mode_fits(mode, group.size());
  }
};

/// A module with one relation on the ring and one on the carrier.
struct ProximalModule {
  FiniteModule module;
  ProximityRelation ring_rel;
  ProximityRelation carrier_rel;
  ProductMode mode = ProductMode::Rectangle;
  std::string label = "module";

  ProximalModule(FiniteModule md, ProximityRelation zr, ProximityRelation ze,
                 ProductMode m = ProductMode::Rectangle, std::string name = "module")
      : module(std::move(md)), ring_rel(std::move(zr)), carrier_rel(std::move(ze)), mode(m), label(std::move(name)) {
    detail::require_same_ground(module.ring().ground(), ring_rel, "proximal module (ring)");
    detail::require_same_ground(module.carrier(), carrier_rel, "proximal module (carrier)");
    detail::require_mode_fits(mode, std::max(module.size(), module.ring().size()));
  }
};

/// Restricts a suite to named checks; empty means every check.
struct SuiteOptions {
  ScanOptions scan;
  std::vector<std::string> only;

  bool wants(std::string_view name) const {
    return only.empty() || std::find(only.begin(), only.end(), name) != only.end();
  }
};

/// Check names in registry order.
inline const std::vector<std::string>& ring_registry() {
  static const std::vector<std::string> names{"add",           "mul",          "inv",
                                              "inversion",     "translations", "multiplicative",
                                              "sandwich-swap", "invertibility", "closed-sets"};
  return names;
}

inline const std::vector<std::string>& module_registry() {
  static const std::vector<std::string> names{"module-add", "module-action", "module-inv", "module-alpha",
                                              "module-beta"};
  return names;
}

namespace detail {

/// Folds sub-check results into one named check: pair counts add up and the
/// first failure in fold order supplies the witness.
class Tally {
 public:
  explicit Tally(std::string name) : t0_(Clock::now()) { result_.name = std::move(name); }

  bool absorb(CheckResult sub) {
    result_.pairs_examined += sub.pairs_examined;
    if (sub.failed() && !result_.failed()) {
      result_.verdict = Verdict::Fail;
      result_.witness = std::move(sub.witness);
    }
    return sub.passed();
  }

  void fail(Witness w) {
    if (result_.failed()) return;
    result_.verdict = Verdict::Fail;
    result_.witness = std::move(w);
  }

  void count(std::uint64_t n = 1) { result_.pairs_examined += n; }
  Json& details() { return result_.details; }

  CheckResult finish() {
    result_.elapsed = std::chrono::duration<double, std::milli>(ms_since(t0_));
    return std::move(result_);
  }

 private:
  CheckResult result_;
  Clock::time_point t0_;
};

inline CheckResult renamed(CheckResult r, std::string name) {
  r.name = std::move(name);
  return r;
}

template <typename Fn>
UnaryMap unary(std::string name, std::size_t n, Fn fn) {
  UnaryMap m{std::move(name), std::vector<std::size_t>(n)};
  for (std::size_t i = 0; i < n; ++i) m.table[i] = fn(i);
  return m;
}

inline BinaryMap binary(std::string name, std::size_t rows, std::size_t cols, const std::vector<std::size_t>& table) {
  return BinaryMap{std::move(name), rows, cols, table};
}

inline CheckResult binary_check(const ProximityRelation& ra, const ProximityRelation& rb, const ProximityRelation& rc,
                                const BinaryMap& f, ProductMode mode, const ScanOptions& opt) {
  return mode == ProductMode::Rectangle ? check_pro_con_rectangles(ra, rb, rc, f, opt)
                                        : check_pro_con_full_product(ra, rb, rc, f, opt);
}

inline void require_ring(const FiniteRing& r) {
  auto audit = audit_ring(r);
  if (auto bad = audit.first_failure())
    throw StructureError("not a ring: " + bad->first + " fails");
}

inline Witness element_witness(std::string map, std::string kind, const GroundSet& g, std::size_t e) {
  Witness w;
  w.map = map;
  w.kind = kind;
  w.points = {e};
  w.doc["map"] = std::move(map);
  w.doc["kind"] = std::move(kind);
  w.doc["element"] = g.label(e);
  return w;
}

}  // namespace detail

// -- proximal ring -------------------------------------------------------

inline CheckResult check_add(const ProximalRing& ps, const ScanOptions& opt = {}) {
  const auto& r = ps.ring;
  return detail::renamed(
      detail::binary_check(ps.rel, ps.rel, ps.rel, detail::binary("add", r.size(), r.size(), r.add_table()), ps.mode,
                           opt),
      "add");
}

inline CheckResult check_mul(const ProximalRing& ps, const ScanOptions& opt = {}) {
  const auto& r = ps.ring;
  return detail::renamed(
      detail::binary_check(ps.rel, ps.rel, ps.rel, detail::binary("mul", r.size(), r.size(), r.mul_table()), ps.mode,
                           opt),
      "mul");
}

inline CheckResult check_inv(const ProximalRing& ps, const ScanOptions& opt = {}) {
  if (!ps.ring.has_negation()) throw StructureError("additive inverses missing");
  return detail::renamed(check_pro_con(ps.rel, ps.rel, UnaryMap{"inv", ps.ring.neg_table()}, opt), "inv");
}

/// add, mul and inv continuity; the structure is a proximal ring iff all pass.
inline SuiteReport verify_proximal_ring(const ProximalRing& ps, const ScanOptions& opt = {}) {
  detail::require_ring(ps.ring);
  SuiteReport rep{ps.label, to_string(ps.mode), {}};
  rep.checks.push_back(check_add(ps, opt));
  rep.checks.push_back(check_mul(ps, opt));
  rep.checks.push_back(check_inv(ps, opt));
  return rep;
}

/// Proximal group: add continuity over the product and inv continuity.
inline SuiteReport verify_proximal_group(const ProximalGroup& pg, const ScanOptions& opt = {}) {
  const auto& g = pg.group;
  SuiteReport rep{pg.label, to_string(pg.mode), {}};
  rep.checks.push_back(detail::renamed(
      detail::binary_check(pg.rel, pg.rel, pg.rel, detail::binary("add", g.size(), g.size(), g.table()), pg.mode, opt),
      "add"));
  rep.checks.push_back(detail::renamed(check_pro_con(pg.rel, pg.rel, UnaryMap{"inv", g.inverse_table()}, opt), "inv"));
  return rep;
}

inline SuiteReport verify_proximal_group(const GroundSet& ground, const std::vector<std::size_t>& table,
                                         const ProximityRelation& rel, ProductMode mode = ProductMode::Rectangle,
                                         const ScanOptions& opt = {}) {
  return verify_proximal_group(ProximalGroup(FiniteGroup(ground, table), rel, mode), opt);
}

// -- subrings -------------------------------------------------------------------

/// Checks that S is a subring and returns the restricted structure: tables
/// restricted to S (in ground order) and the subspace relation.
inline ProximalRing restrict_to_subring(const ProximalRing& ps, const Subset& s) {
  const auto& r = ps.ring;
  s.checked(r.size());
  const auto& g = r.ground();
  const Mask m = s.bits();
  if (!contains(m, r.zero())) throw StructureError("not a subring: zero '" + g.label(r.zero()) + "' not in S");
  detail::require_ring(r);
  for (auto a : members(m))
    for (auto b : members(m)) {
      if (!contains(m, r.add(a, b)))
        throw StructureError("not a subring: not closed under add (" + g.label(a) + "+" + g.label(b) + "=" +
                             g.label(r.add(a, b)) + " not in S)");
      if (!contains(m, r.mul(a, b)))
        throw StructureError("not a subring: not closed under mul (" + g.label(a) + "*" + g.label(b) + "=" +
                             g.label(r.mul(a, b)) + " not in S)");
    }
  for (auto a : members(m))
    if (!contains(m, r.neg(a)))
      throw StructureError("not a subring: -" + g.label(a) + " = " + g.label(r.neg(a)) + " not in S");

  const auto idx = members(m);
  std::vector<std::size_t> pos(r.size(), 0);
  for (std::size_t i = 0; i < idx.size(); ++i) pos[idx[i]] = i;
  const std::size_t k = idx.size();
  FiniteRing::Table add(k * k), mul(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      add[i * k + j] = pos[r.add(idx[i], idx[j])];
      mul[i * k + j] = pos[r.mul(idx[i], idx[j])];
    }
  std::optional<std::size_t> one;
  if (r.one() && contains(m, *r.one())) one = pos[*r.one()];
  FiniteRing sub(GroundSet(g.labels_of(m)), std::move(add), std::move(mul), pos[r.zero()], one);
  return ProximalRing(std::move(sub), restrict_subspace(ps.rel, s), ps.mode, ps.label + " | " + g.format(m));
}

inline SuiteReport verify_subring_restriction(const ProximalRing& ps, const Subset& s, const ScanOptions& opt = {}) {
  return verify_proximal_ring(restrict_to_subring(ps, s), opt);
}

// -- translations and multiplications --------------------------------------

/// Every translation w -> w+c and w -> c+w is a proximal homeomorphism.
inline CheckResult check_translation_homos(const ProximalRing& ps, const ScanOptions& opt = {}) {
  const auto& r = ps.ring;
  const auto& g = r.ground();
  detail::Tally tally("translations");
  for (std::size_t c = 0; c < r.size(); ++c) {
    tally.absorb(check_pro_homo(ps.rel, ps.rel,
                                detail::unary("phi[" + g.label(c) + "]", r.size(), [&](auto w) { return r.add(w, c); }),
                                opt));
    tally.absorb(check_pro_homo(
        ps.rel, ps.rel, detail::unary("beta[" + g.label(c) + "]", r.size(), [&](auto w) { return r.add(c, w); }),
        opt));
  }
  return tally.finish();
}

/// Left and right multiplications are continuous for every a; for units
/// (when a unity exists) they are homeomorphisms. details.pro_homo lists
/// every a for which both are homeomorphisms.
inline CheckResult check_multiplicative_maps(const ProximalRing& ps, const ScanOptions& opt = {}) {
  const auto& r = ps.ring;
  const auto& g = r.ground();
  const std::size_t n = r.size();
  detail::Tally tally("multiplicative");
  std::optional<UnitSets> units;
  if (r.one()) units = units_and_inverses(r);
  Mask homo = 0;
  for (std::size_t a = 0; a < n; ++a) {
    auto sigma = detail::unary("sigma[" + g.label(a) + "]", n, [&](auto w) { return r.mul(a, w); });
    auto gamma = detail::unary("gamma[" + g.label(a) + "]", n, [&](auto w) { return r.mul(w, a); });
    tally.absorb(check_pro_con(ps.rel, ps.rel, sigma, opt));
    tally.absorb(check_pro_con(ps.rel, ps.rel, gamma, opt));
    auto hs = check_pro_homo(ps.rel, ps.rel, sigma, opt);
    auto hg = check_pro_homo(ps.rel, ps.rel, gamma, opt);
    if (hs.passed() && hg.passed()) homo |= bit(a);
    if (units && contains(units->units, a)) {
      tally.absorb(std::move(hs));
      tally.absorb(std::move(hg));
    } else {
      tally.count(hs.pairs_examined + hg.pairs_examined);
    }
  }
  tally.details()["pro_homo"] = g.labels_of(homo);
  if (units) {
    tally.details()["units"] = g.labels_of(units->units);
  } else {
    tally.details()["note"] = "no unity: homeomorphism half not applicable";
  }
  return tally.finish();
}

/// Invertibility theorems: rho_e(w) = e*w a homeomorphism with e != 0
/// implies e right invertible; psi_l(k) = k*l a homeomorphism implies l left
/// invertible. The converse is reported, never failed.
inline CheckResult audit_invertibility(const ProximalRing& ps, const ScanOptions& opt = {}) {
  const auto& r = ps.ring;
  const auto& g = r.ground();
  const std::size_t n = r.size();
  if (!r.one()) throw StructureError("invertibility audit needs a unity");
  const std::size_t one = *r.one();
  const auto inv = units_and_inverses(r);
  detail::Tally tally("invertibility");
  Mask h = 0, h_prime = 0, zero_preimage = 0;
  for (std::size_t e = 0; e < n; ++e) {
    if (e == r.zero()) continue;
    auto rho = detail::unary("rho[" + g.label(e) + "]", n, [&](auto w) { return r.mul(e, w); });
    auto psi = detail::unary("psi[" + g.label(e) + "]", n, [&](auto k) { return r.mul(k, e); });
    auto hr = check_pro_homo(ps.rel, ps.rel, rho, opt);
    auto hl = check_pro_homo(ps.rel, ps.rel, psi, opt);
    tally.count(hr.pairs_examined + hl.pairs_examined);
    if (hr.passed()) {
      h |= bit(e);
      for (std::size_t w = 0; w < n; ++w)
        if (rho.table[w] == one && w == r.zero()) zero_preimage |= bit(e);
    }
    if (hl.passed()) h_prime |= bit(e);
  }
  for_each_bit(h & ~inv.right_invertible,
               [&](std::size_t e) { tally.fail(detail::element_witness("rho", "not-right-invertible", g, e)); });
  for_each_bit(h_prime & ~inv.left_invertible,
               [&](std::size_t e) { tally.fail(detail::element_witness("psi", "not-left-invertible", g, e)); });
  auto& d = tally.details();
  d["H"] = g.labels_of(h);
  d["H_prime"] = g.labels_of(h_prime);
  d["right_invertible"] = g.labels_of(inv.right_invertible);
  d["left_invertible"] = g.labels_of(inv.left_invertible);
  d["units"] = g.labels_of(inv.units);
  d["units_act_homeomorphically"] = is_subset(inv.units & ~bit(r.zero()), h & h_prime);
  d["inverse_image_of_one_is_zero"] = g.labels_of(zero_preimage);
  return tally.finish();
}

/// Sandwich maps r -> w*r*k for every (w,k); the swap (x,y) -> (y,x) on
/// rectangles; and G(w0,w1) = w1*w0 over the product.
inline CheckResult check_sandwich_and_swap(const ProximalRing& ps, const ScanOptions& opt = {}) {
  const auto& r = ps.ring;
  const auto& g = r.ground();
  const std::size_t n = r.size();
  const auto& rel = ps.rel;
  detail::Tally tally("sandwich-swap");
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t k = 0; k < n; ++k)
      tally.absorb(check_pro_con(rel, rel,
                                 detail::unary("mu[" + g.label(w) + "," + g.label(k) + "]", n,
                                               [&](auto x) { return r.mul(r.mul(w, x), k); }),
                                 opt));

  // swap
  if (ps.mode == ProductMode::FullProduct) {
    const auto prod = product_relation(rel, rel).as_relation();
    tally.absorb(check_pro_con(prod, prod, detail::unary("swap", n * n, [&](auto p) { return (p % n) * n + p / n; }),
                               opt));
  } else {
    const bool reduced = opt.strategy == Strategy::Auto && rel.point_generated();
    if (!reduced && n > (opt.unsafe_caps ? kRectangleUnsafeCap : kRectangleCap))
      throw CapError("rectangle scan of 'swap' needs carriers of size <= " + std::to_string(kRectangleCap));
    const ProductRelation prod = product_relation(rel, rel);
    const Mask full = g.full();
    bool failed = false;
    if (reduced) {
      for (std::size_t a1 = 0; a1 < n && !failed; ++a1)
        for_each_bit(rel.related(a1), [&](std::size_t a2) {
          for (std::size_t b1 = 0; b1 < n; ++b1)
            for_each_bit(rel.related(b1), [&](std::size_t b2) {
              tally.count();
              failed = failed || !(contains(rel.related(b1), b2) && contains(rel.related(a1), a2));
            });
        });
    }
    if (!reduced || failed) {
      for (Mask a1 = 1; a1 <= full; ++a1)
        for (Mask b1 = 1; b1 <= full; ++b1)
          for (Mask a2 = 1; a2 <= full; ++a2) {
            if (!rel.near_bits(a1, a2)) continue;
            for (Mask b2 = 1; b2 <= full; ++b2) {
              if (!rel.near_bits(b1, b2)) continue;
              if (!reduced) tally.count();
              if (!prod.near_rectangles(b1, a1, b2, a2)) {
                Witness wt;
                wt.map = "swap";
                wt.kind = "rectangle";
                wt.sets = {a1, b1, a2, b2};
                wt.doc["map"] = "swap";
                wt.doc["kind"] = "rectangle";
                wt.doc["left"] = Json::array({g.labels_of(a1), g.labels_of(b1)});
                wt.doc["right"] = Json::array({g.labels_of(a2), g.labels_of(b2)});
                tally.fail(std::move(wt));
              }
            }
          }
    }
  }

  std::vector<std::size_t> flipped(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) flipped[a * n + b] = r.mul(b, a);
  tally.absorb(detail::binary_check(rel, rel, rel, detail::binary("G", n, n, flipped), ps.mode, opt));
  tally.details()["sandwich_maps"] = n * n;
  return tally.finish();
}

// -- closed sets --------------------------------------------------------------

namespace detail {

inline Witness closed_witness(const std::string& op, const GroundSet& g, Mask set, std::size_t elem, Mask result,
                              Mask closure) {
  Witness w;
  w.map = op;
  w.kind = "not-closed";
  w.sets = {set, result};
  w.points = {elem};
  w.doc["map"] = op;
  w.doc["kind"] = "not-closed";
  w.doc["set"] = g.labels_of(set);
  w.doc["element"] = g.label(elem);
  w.doc["result"] = g.labels_of(result);
  w.doc["closure"] = g.labels_of(closure);
  return w;
}

inline CheckResult closed_set_scan(const ProximalRing& ps) {
  const auto& r = ps.ring;
  const auto& g = r.ground();
  const auto& rel = ps.rel;
  const std::size_t n = r.size();
  if (n > kClosedSetCap) throw CapError("closed-set checks need ground size <= " + std::to_string(kClosedSetCap));
  Tally tally("closed-sets");
  const auto topo = closed_family(rel);
  std::optional<UnitSets> units;
  if (r.one()) units = units_and_inverses(r);

  auto probe = [&](const std::string& op, Mask set, std::size_t e, Mask result) {
    tally.count();
    if (!topo.is_closed(result)) tally.fail(closed_witness(op, g, set, e, result, closure_bits(rel, result)));
  };
  for (Mask f : topo.closed_family)
    for (std::size_t e = 0; e < n; ++e) probe("eps+F", f, e, set_arithmetic_bits(r, bit(e), f, SetOp::Add));
  for (Mask f : topo.closed_family)
    for (std::size_t e = 0; e < n; ++e) probe("eps-F", f, e, set_arithmetic_bits(r, bit(e), f, SetOp::Sub));
  if (units) {
    for (Mask v : topo.closed_family)
      for_each_bit(units->units, [&](std::size_t l) {
        probe("lambda*V", v, l, set_arithmetic_bits(r, bit(l), v, SetOp::Mul));
        probe("V*lambda", v, l, set_arithmetic_bits(r, v, bit(l), SetOp::Mul));
      });
  }

  // h(cl A) subset of cl(h A) for translations and unit scalings
  std::vector<UnaryMap> maps;
  for (std::size_t c = 0; c < n; ++c) {
    maps.push_back(unary("phi[" + g.label(c) + "]", n, [&](auto w) { return r.add(w, c); }));
    maps.push_back(unary("beta[" + g.label(c) + "]", n, [&](auto w) { return r.add(c, w); }));
  }
  if (units)
    for_each_bit(units->units, [&](std::size_t l) {
      maps.push_back(unary("sigma[" + g.label(l) + "]", n, [&](auto w) { return r.mul(l, w); }));
      maps.push_back(unary("gamma[" + g.label(l) + "]", n, [&](auto w) { return r.mul(w, l); }));
    });
  for (const auto& h : maps)
    for (Mask a = 0; a <= g.full(); ++a) {
      tally.count();
      const Mask lhs = image(closure_bits(rel, a), h.table);
      const Mask rhs = closure_bits(rel, image(a, h.table));
      if (!is_subset(lhs, rhs)) {
        Witness w;
        w.map = h.name;
        w.kind = "closure-not-preserved";
        w.sets = {a};
        w.doc["map"] = h.name;
        w.doc["kind"] = "closure-not-preserved";
        w.doc["A"] = g.labels_of(a);
        w.doc["image_of_closure"] = g.labels_of(lhs);
        w.doc["closure_of_image"] = g.labels_of(rhs);
        tally.fail(std::move(w));
      }
    }
  auto& d = tally.details();
  d["closed_sets"] = topo.closed_family.size();
  d["union_stable"] = topo.is_union_stable;
  d["intersection_stable"] = topo.is_intersection_stable;
  return tally.finish();
}

}  // namespace detail

/// Closed-set propositions. Presupposes a proximal ring: reported skipped
/// when add, mul or inv continuity fails.
inline CheckResult check_closed_set_props(const ProximalRing& ps, const ScanOptions& opt = {}) {
  auto ring = verify_proximal_ring(ps, opt);
  if (ring.any_failed()) return CheckResult::skipped("closed-sets", "structure is not a proximal ring");
  return detail::closed_set_scan(ps);
}

// -- fields -------------------------------------------------------------------

inline bool is_field(const FiniteRing& r) {
  if (!r.one() || r.size() < 2 || *r.one() == r.zero()) return false;
  return units_and_inverses(r).units == (r.ground().full() & ~bit(r.zero()));
}

/// Continuity of w -> w^-1 on the nonzero elements under the subspace relation.
inline CheckResult check_field_inversion(const ProximalRing& ps, const ScanOptions& opt = {}) {
  const auto& r = ps.ring;
  if (!is_field(r)) {
    std::string why = "no unity";
    if (r.one()) {
      const auto u = units_and_inverses(r);
      const Mask bad = r.ground().full() & ~bit(r.zero()) & ~u.units;
      why = bad ? "'" + r.ground().label(static_cast<std::size_t>(std::countr_zero(bad))) + "' has no inverse"
                : "1 = 0";
    }
    throw StructureError("not a field: " + why);
  }
  const Mask nonzero = r.ground().full() & ~bit(r.zero());
  const auto star = restrict_subspace(ps.rel, Subset(nonzero, r.size()));
  const auto idx = members(nonzero);
  std::vector<std::size_t> pos(r.size(), 0);
  for (std::size_t i = 0; i < idx.size(); ++i) pos[idx[i]] = i;
  UnaryMap inversion{"inversion", std::vector<std::size_t>(idx.size())};
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t x = 0; x < r.size(); ++x)
      if (r.mul(idx[i], x) == *r.one()) inversion.table[i] = pos[x];
  return detail::renamed(check_pro_con(star, star, inversion, opt), "inversion");
}

inline SuiteReport verify_proximal_field(const ProximalRing& ps, const ScanOptions& opt = {}) {
  auto inversion = check_field_inversion(ps, opt);
  auto rep = verify_proximal_ring(ps, opt);
  rep.checks.push_back(std::move(inversion));
  return rep;
}

// -- registry runner ------------------------------------------------------------

namespace detail {

template <typename Fn>
CheckResult guarded(const std::string& name, Fn&& fn) {
  try {
    return fn();
  } catch (const CapError& e) {
    return CheckResult::skipped(name, e.what());
  }
}

}  // namespace detail

/// Runs every applicable ring check in registry order. Inapplicable checks
/// (no unity, not a field, hypotheses unmet, size caps) are reported skipped
/// with a reason. When the tables are not a ring the suite leads with a
/// failing "ring-axioms" entry and skips the rest.
inline SuiteReport run_full_suite(const ProximalRing& ps, const SuiteOptions& so = {}) {
  const auto& opt = so.scan;
  SuiteReport rep{ps.label, to_string(ps.mode), {}};
  const auto audit = audit_ring(ps.ring);
  if (auto bad = audit.first_failure()) {
    CheckResult axioms;
    axioms.name = "ring-axioms";
    axioms.verdict = Verdict::Fail;
    Witness w;
    w.map = bad->first;
    w.kind = "law";
    w.points = bad->second.witness;
    w.doc["map"] = bad->first;
    w.doc["kind"] = "law";
    Json elems = Json::array();
    for (auto i : bad->second.witness) elems.push_back(ps.ring.ground().label(i));
    w.doc["elements"] = elems;
    axioms.witness = std::move(w);
    rep.checks.push_back(std::move(axioms));
    for (const auto& name : ring_registry())
      if (so.wants(name)) rep.checks.push_back(CheckResult::skipped(name, "ring axioms fail"));
    return rep;
  }

  std::vector<CheckResult> core;
  auto core_checks = [&]() -> const std::vector<CheckResult>& {
    if (core.empty()) {
      core.push_back(detail::guarded("add", [&] { return check_add(ps, opt); }));
      core.push_back(detail::guarded("mul", [&] { return check_mul(ps, opt); }));
      core.push_back(detail::guarded("inv", [&] { return check_inv(ps, opt); }));
    }
    return core;
  };
  const bool unity = ps.ring.one().has_value();

  for (const auto& name : ring_registry()) {
    if (!so.wants(name)) continue;
    if (name == "add") rep.checks.push_back(core_checks()[0]);
    else if (name == "mul") rep.checks.push_back(core_checks()[1]);
    else if (name == "inv") rep.checks.push_back(core_checks()[2]);
    else if (name == "inversion") {
      rep.checks.push_back(is_field(ps.ring)
                               ? detail::guarded(name, [&] { return check_field_inversion(ps, opt); })
                               : CheckResult::skipped(name, "not a field"));
    } else if (name == "translations") {
      rep.checks.push_back(detail::guarded(name, [&] { return check_translation_homos(ps, opt); }));
    } else if (name == "multiplicative") {
      rep.checks.push_back(detail::guarded(name, [&] { return check_multiplicative_maps(ps, opt); }));
    } else if (name == "sandwich-swap") {
      rep.checks.push_back(detail::guarded(name, [&] { return check_sandwich_and_swap(ps, opt); }));
    } else if (name == "invertibility") {
      rep.checks.push_back(unity ? detail::guarded(name, [&] { return audit_invertibility(ps, opt); })
                                 : CheckResult::skipped(name, "ring has no unity"));
    } else if (name == "closed-sets") {
      const auto& c = core_checks();
      const bool skipped_core = std::any_of(c.begin(), c.end(), [](const auto& x) { return x.verdict == Verdict::Skipped; });
      const bool failed_core = std::any_of(c.begin(), c.end(), [](const auto& x) { return x.failed(); });
      if (failed_core)
        rep.checks.push_back(CheckResult::skipped(name, "structure is not a proximal ring"));
      else if (skipped_core)
        rep.checks.push_back(CheckResult::skipped(name, "proximal ring verification incomplete"));
      else
        rep.checks.push_back(detail::guarded(name, [&] { return detail::closed_set_scan(ps); }));
    }
  }
  return rep;
}

// -- modules --------------------------------------------------------------------

inline SuiteReport verify_proximal_module(const ProximalModule& pm, const SuiteOptions& so = {}) {
  const auto& md = pm.module;
  const auto& R = md.ring();
  if (auto v = audit_module(md)) throw StructureError("module law " + v->law + " fails: " + v->message);
  detail::require_ring(R);
  const auto& opt = so.scan;
  const auto& el = md.carrier();
  const auto& rl = R.ground();
  const std::size_t m = md.size(), n = R.size();
  SuiteReport rep{pm.label, to_string(pm.mode), {}};

  for (const auto& name : module_registry()) {
    if (!so.wants(name)) continue;
    rep.checks.push_back(detail::guarded(name, [&]() -> CheckResult {
      if (name == "module-add")
        return detail::renamed(detail::binary_check(pm.carrier_rel, pm.carrier_rel, pm.carrier_rel,
                                                    detail::binary("add^E", m, m, md.add_table()), pm.mode, opt),
                               name);
      if (name == "module-action")
        return detail::renamed(detail::binary_check(pm.ring_rel, pm.carrier_rel, pm.carrier_rel,
                                                    detail::binary("mul^E", n, m, md.action_table()), pm.mode, opt),
                               name);
      if (name == "module-inv")
        return detail::renamed(check_pro_con(pm.carrier_rel, pm.carrier_rel, UnaryMap{"inv^E", md.neg_table()}, opt),
                               name);
      if (name == "module-alpha") {
        detail::Tally tally(name);
        for (std::size_t e = 0; e < m; ++e)
          tally.absorb(check_pro_con(pm.ring_rel, pm.carrier_rel,
                                     detail::unary("alpha[" + el.label(e) + "]", n, [&](auto w) { return md.act(w, e); }),
                                     opt));
        return tally.finish();
      }
      detail::Tally tally(name);
      std::optional<UnitSets> units;
      if (R.one()) units = units_and_inverses(R);
      Mask homo = 0;
      for (std::size_t r = 0; r < n; ++r) {
        auto beta = detail::unary("beta[" + rl.label(r) + "]", m, [&](auto e) { return md.act(r, e); });
        tally.absorb(check_pro_con(pm.carrier_rel, pm.carrier_rel, beta, opt));
        auto h = check_pro_homo(pm.carrier_rel, pm.carrier_rel, beta, opt);
        if (h.passed()) homo |= bit(r);
        if (units && contains(units->units, r)) tally.absorb(std::move(h));
        else tally.count(h.pairs_examined);
      }
      tally.details()["pro_homo"] = rl.labels_of(homo);
      if (units) tally.details()["units"] = rl.labels_of(units->units);
      return tally.finish();
    }));
  }
  return rep;
}

// -- products -------------------------------------------------------------------

/// Direct product structure: componentwise ring and product relation.
inline ProximalRing product_structure(const ProximalRing& a, const ProximalRing& b) {
  auto ring = direct_product_ring(a.ring, b.ring);
  auto rel = product_relation(a.rel, b.rel).as_relation();
  auto mode = a.mode;
  if (mode == ProductMode::FullProduct && ring.size() > kFullProductCap) mode = ProductMode::Rectangle;
  return ProximalRing(std::move(ring), std::move(rel), mode, "(" + a.label + ") x (" + b.label + ")");
}

inline SuiteReport verify_product(const std::vector<ProximalRing>& factors, const SuiteOptions& so = {}) {
  if (factors.empty()) throw InputError("product of no factors");
  ProximalRing acc = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) acc = product_structure(acc, factors[i]);
  const std::size_t cap = so.scan.unsafe_caps ? kRectangleUnsafeCap : kRectangleCap;
  if (!acc.rel.point_generated() && acc.ring.size() > cap)
    throw CapError("product of non-point-generated relations has " + std::to_string(acc.ring.size()) +
                   " elements; subset scans are capped at " + std::to_string(cap));
  return run_full_suite(acc, so);
}

inline SuiteReport verify_product(const ProximalRing& a, const ProximalRing& b, const SuiteOptions& so = {}) {
  return verify_product(std::vector<ProximalRing>{a, b}, so);
}

/// Direct product of two proximal modules over the same proximal ring.
inline SuiteReport verify_module_product(const ProximalModule& a, const ProximalModule& b,
                                         const SuiteOptions& so = {}) {
  auto md = direct_product_module(a.module, b.module);
  auto rel = product_relation(a.carrier_rel, b.carrier_rel).as_relation();
  auto mode = a.mode;
  if (mode == ProductMode::FullProduct && md.size() > kFullProductCap) mode = ProductMode::Rectangle;
  ProximalModule pm(std::move(md), a.ring_rel, std::move(rel), mode, "(" + a.label + ") x (" + b.label + ")");
  return verify_proximal_module(pm, so);
}

}  // namespace prox

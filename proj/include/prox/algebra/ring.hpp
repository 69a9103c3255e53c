#pragma once

#include <prox/errors.hpp>
#include <prox/report.hpp>
#include <prox/subset.hpp>

#include <algorithm>
#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace prox {

/// Finite ring given by Cayley tables over element indices. Construction
/// validates shape and range only; ring axioms are checked by audit_ring so
/// that broken tables can be studied too.
class FiniteRing {
 public:
  using Table = std::vector<std::size_t>;

  FiniteRing(GroundSet ground, Table add, Table mul, std::size_t zero, std::optional<std::size_t> one = {})
      : ground_(std::move(ground)), add_(std::move(add)), mul_(std::move(mul)), zero_(zero), one_(one) {
    const std::size_t n = ground_.size();
    if (add_.size() != n * n) throw InputError("add table must be " + std::to_string(n) + "x" + std::to_string(n));
    if (mul_.size() != n * n) throw InputError("mul table must be " + std::to_string(n) + "x" + std::to_string(n));
    for (std::size_t k = 0; k < n * n; ++k) {
      if (add_[k] >= n) throw InputError("add table entry out of range at row " + std::to_string(k / n));
      if (mul_[k] >= n) throw InputError("mul table entry out of range at row " + std::to_string(k / n));
    }
    if (zero_ >= n) throw InputError("zero is not an element");
    if (one_ && *one_ >= n) throw InputError("one is not an element");
    neg_.assign(n, kNone);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n && neg_[a] == kNone; ++b)
        if (this->add(a, b) == zero_ && this->add(b, a) == zero_) neg_[a] = b;
  }

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  const GroundSet& ground() const noexcept { return ground_; }
  std::size_t size() const noexcept { return ground_.size(); }
  std::size_t add(std::size_t a, std::size_t b) const { return add_[a * size() + b]; }
  std::size_t mul(std::size_t a, std::size_t b) const { return mul_[a * size() + b]; }
  const Table& add_table() const noexcept { return add_; }
  const Table& mul_table() const noexcept { return mul_; }
  std::size_t zero() const noexcept { return zero_; }
  std::optional<std::size_t> one() const noexcept { return one_; }

  /// Additive inverse, or kNone when the add table has none.
  std::size_t neg(std::size_t a) const { return neg_[a]; }
  const Table& neg_table() const noexcept { return neg_; }
  bool has_negation() const {
    return std::find(neg_.begin(), neg_.end(), kNone) == neg_.end();
  }

 private:
  GroundSet ground_;
  Table add_;
  Table mul_;
  Table neg_;
  std::size_t zero_;
  std::optional<std::size_t> one_;
};

/// Builds a ring from label matrices (row-major, rows indexed like `elements`).
inline FiniteRing build_ring(const std::vector<std::string>& elements,
                             const std::vector<std::vector<std::string>>& add,
                             const std::vector<std::vector<std::string>>& mul, const std::string& zero,
                             const std::optional<std::string>& one = {}) {
  GroundSet g(elements);
  const std::size_t n = g.size();
  auto flatten = [&](const std::vector<std::vector<std::string>>& rows, const char* what) {
    if (rows.size() != n) throw InputError(std::string(what) + " table must have " + std::to_string(n) + " rows");
    FiniteRing::Table t;
    for (std::size_t r = 0; r < n; ++r) {
      if (rows[r].size() != n)
        throw InputError(std::string(what) + " table row " + std::to_string(r) + " must have " +
                         std::to_string(n) + " entries");
      for (const auto& s : rows[r]) t.push_back(g.index_of(s));
    }
    return t;
  };
  auto a = flatten(add, "add");
  auto m = flatten(mul, "mul");
  std::optional<std::size_t> u;
  if (one) u = g.index_of(*one);
  const std::size_t z = g.index_of(zero);
  return FiniteRing(std::move(g), std::move(a), std::move(m), z, u);
}

// -- builtin generators: element 0 is zero, element 1 (when present) is one --

/// Integers mod n.
inline FiniteRing ring_zn(std::size_t n) {
  if (n < 1 || n > kMaxGround) throw CapError("Z_n is built for 1 <= n <= " + std::to_string(kMaxGround));
  FiniteRing::Table add(n * n), mul(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      add[a * n + b] = (a + b) % n;
      mul[a * n + b] = (a * b) % n;
    }
  std::optional<std::size_t> one;
  if (n > 1) one = 1;
  return FiniteRing(GroundSet::numbered(n), std::move(add), std::move(mul), 0, one);
}

inline bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// Prime field GF(p). Only prime orders are built in.
inline FiniteRing ring_gf(std::size_t p) {
  if (!is_prime(p)) throw InputError("GF(" + std::to_string(p) + "): only prime orders are built in");
  return ring_zn(p);
}

/// Multiples of k inside Z_n, labelled by their residues. Has no unity in
/// general (e.g. 2Z_8).
inline FiniteRing ring_multiples(std::size_t k, std::size_t n) {
  if (k == 0 || n % k != 0) throw InputError("k must divide n");
  const std::size_t m = n / k;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i) labels.push_back(std::to_string(i * k));
  FiniteRing::Table add(m * m), mul(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      add[a * m + b] = (a + b) % m;
      mul[a * m + b] = ((a * k) * (b * k) % n) / k;
    }
  std::optional<std::size_t> one;
  for (std::size_t e = 0; e < m && !one; ++e) {
    bool unit = true;
    for (std::size_t x = 0; x < m && unit; ++x) unit = mul[e * m + x] == x && mul[x * m + e] == x;
    if (unit) one = e;
  }
  return FiniteRing(GroundSet(std::move(labels)), std::move(add), std::move(mul), 0, one);
}

/// Boolean ring of the power set of m atoms under symmetric difference and
/// intersection. Index 0 is the empty set, index 1 the full set, then the
/// remaining subsets by ascending mask; labels spell the atoms (a, b, ...).
inline FiniteRing boolean_ring(std::size_t m) {
  if (m < 1 || m > 4) throw CapError("boolean ring is built for 1 <= m <= 4 atoms");
  const std::size_t n = std::size_t{1} << m;
  const Mask top = full_mask(m);
  std::vector<Mask> order{0, top};
  for (Mask s = 1; s < top; ++s) order.push_back(s);
  std::vector<std::size_t> index_of(n);
  for (std::size_t i = 0; i < n; ++i) index_of[order[i]] = i;
  std::vector<std::string> labels;
  for (Mask s : order) {
    if (s == 0) {
      labels.emplace_back("0");
    } else if (s == top) {
      labels.emplace_back("1");
    } else {
      std::string l;
      for_each_bit(s, [&](std::size_t a) { l += static_cast<char>('a' + a); });
      labels.push_back(l);
    }
  }
  FiniteRing::Table add(n * n), mul(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      add[i * n + j] = index_of[order[i] ^ order[j]];
      mul[i * n + j] = index_of[order[i] & order[j]];
    }
  return FiniteRing(GroundSet(std::move(labels)), std::move(add), std::move(mul), 0, 1);
}

// -- audit --

struct LawVerdict {
  Verdict status = Verdict::Pass;
  std::vector<std::size_t> witness;  // element indices, lexicographically minimal
  bool passed() const noexcept { return status == Verdict::Pass; }
};

struct RingAuditReport {
  LawVerdict add_associativity;
  LawVerdict add_commutativity;
  LawVerdict add_identity;
  LawVerdict add_inverses;
  LawVerdict mul_associativity;
  LawVerdict left_distributivity;
  LawVerdict right_distributivity;
  LawVerdict unity;
  LawVerdict mul_commutativity;

  std::array<std::pair<const char*, const LawVerdict*>, 9> entries() const {
    return {{{"add-associativity", &add_associativity},
             {"add-commutativity", &add_commutativity},
             {"add-identity", &add_identity},
             {"add-inverses", &add_inverses},
             {"mul-associativity", &mul_associativity},
             {"left-distributivity", &left_distributivity},
             {"right-distributivity", &right_distributivity},
             {"unity", &unity},
             {"mul-commutativity", &mul_commutativity}}};
  }

  /// Ring laws hold (unity and commutativity of multiplication are not ring
  /// laws; a declared unity that fails is still reported as a failure).
  bool is_ring() const {
    return add_associativity.passed() && add_commutativity.passed() && add_identity.passed() &&
           add_inverses.passed() && mul_associativity.passed() && left_distributivity.passed() &&
           right_distributivity.passed() && unity.status != Verdict::Fail;
  }

  /// First failing ring law, for diagnostics.
  std::optional<std::pair<std::string, LawVerdict>> first_failure() const {
    for (auto [name, v] : entries()) {
      if (std::string_view(name) == "mul-commutativity") continue;
      if (v->status == Verdict::Fail) return std::make_pair(std::string(name), *v);
    }
    return std::nullopt;
  }
};

namespace detail {

inline LawVerdict law_fail(std::vector<std::size_t> w) { return {Verdict::Fail, std::move(w)}; }

template <typename Law>
LawVerdict scan_triples(std::size_t n, Law holds) {
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (!holds(a, b, c)) return law_fail({a, b, c});
  return {};
}

template <typename Law>
LawVerdict scan_pairs(std::size_t n, Law holds) {
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (!holds(a, b)) return law_fail({a, b});
  return {};
}

template <typename Law>
LawVerdict scan_points(std::size_t n, Law holds) {
  for (std::size_t a = 0; a < n; ++a)
    if (!holds(a)) return law_fail({a});
  return {};
}

}  // namespace detail

inline RingAuditReport audit_ring(const FiniteRing& r) {
  using namespace detail;
  const std::size_t n = r.size();
  const std::size_t z = r.zero();
  RingAuditReport rep;
  rep.add_associativity =
      scan_triples(n, [&](auto a, auto b, auto c) { return r.add(r.add(a, b), c) == r.add(a, r.add(b, c)); });
  rep.add_commutativity = scan_pairs(n, [&](auto a, auto b) { return r.add(a, b) == r.add(b, a); });
  rep.add_identity = scan_points(n, [&](auto a) { return r.add(z, a) == a && r.add(a, z) == a; });
  rep.add_inverses = scan_points(n, [&](auto a) { return r.neg(a) != FiniteRing::kNone; });
  rep.mul_associativity =
      scan_triples(n, [&](auto a, auto b, auto c) { return r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c)); });
  rep.left_distributivity = scan_triples(
      n, [&](auto a, auto b, auto c) { return r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c)); });
  rep.right_distributivity = scan_triples(
      n, [&](auto a, auto b, auto c) { return r.mul(r.add(b, c), a) == r.add(r.mul(b, a), r.mul(c, a)); });
  if (auto one = r.one()) {
    rep.unity = scan_points(n, [&](auto a) { return r.mul(*one, a) == a && r.mul(a, *one) == a; });
  } else {
    rep.unity.status = Verdict::Skipped;
  }
  rep.mul_commutativity = scan_pairs(n, [&](auto a, auto b) { return r.mul(a, b) == r.mul(b, a); });
  return rep;
}

inline Json to_json(const RingAuditReport& rep, const GroundSet& ground) {
  Json j = Json::object();
  for (auto [name, v] : rep.entries()) {
    Json e;
    e["verdict"] = to_string(v->status);
    if (v->status == Verdict::Fail) {
      Json w = Json::array();
      for (auto i : v->witness) w.push_back(ground.label(i));
      e["witness"] = w;
    }
    j[name] = e;
  }
  return j;
}

// -- set arithmetic --

enum class SetOp { Add, Mul, Sub, Neg };

/// Elementwise image sets: W+K, W*K, W-K = {w + (-k)}, and -W (K ignored).
inline Mask set_arithmetic_bits(const FiniteRing& r, Mask w, Mask k, SetOp op) {
  Mask out = 0;
  if (op == SetOp::Neg) {
    for_each_bit(w, [&](std::size_t a) {
      if (r.neg(a) == FiniteRing::kNone) throw StructureError("element '" + r.ground().label(a) + "' has no negative");
      out |= bit(r.neg(a));
    });
    return out;
  }
  for_each_bit(w, [&](std::size_t a) {
    for_each_bit(k, [&](std::size_t b) {
      switch (op) {
        case SetOp::Add: out |= bit(r.add(a, b)); break;
        case SetOp::Mul: out |= bit(r.mul(a, b)); break;
        case SetOp::Sub:
          if (r.neg(b) == FiniteRing::kNone)
            throw StructureError("element '" + r.ground().label(b) + "' has no negative");
          out |= bit(r.add(a, r.neg(b)));
          break;
        case SetOp::Neg: break;
      }
    });
  });
  return out;
}

inline Subset set_arithmetic(const FiniteRing& r, const Subset& w, const Subset& k, SetOp op) {
  w.checked(r.size());
  k.checked(r.size());
  return Subset(set_arithmetic_bits(r, w.bits(), k.bits(), op), r.size());
}

struct UnitSets {
  Mask units = 0;
  Mask right_invertible = 0;  // e with e*x = 1 for some x
  Mask left_invertible = 0;   // e with x*e = 1 for some x
};

inline UnitSets units_and_inverses(const FiniteRing& r) {
  const auto one = r.one();
  if (!one) throw StructureError("ring has no unity");
  UnitSets u;
  for (std::size_t e = 0; e < r.size(); ++e)
    for (std::size_t x = 0; x < r.size(); ++x) {
      if (r.mul(e, x) == *one) u.right_invertible |= bit(e);
      if (r.mul(x, e) == *one) u.left_invertible |= bit(e);
    }
  u.units = u.right_invertible & u.left_invertible;
  return u;
}

/// Componentwise ring on R1 x R2; pair (i,j) has index i*|R2| + j.
inline FiniteRing direct_product_ring(const FiniteRing& r1, const FiniteRing& r2) {
  const std::size_t n1 = r1.size(), n2 = r2.size(), n = n1 * n2;
  if (n > kMaxGround)
    throw CapError("direct product has " + std::to_string(n) + " elements; at most " +
                   std::to_string(kMaxGround) + " are supported");
  std::vector<std::string> labels;
  for (const auto& a : r1.ground().labels())
    for (const auto& b : r2.ground().labels()) labels.push_back("(" + a + "," + b + ")");
  FiniteRing::Table add(n * n), mul(n * n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      const std::size_t a1 = p / n2, b1 = p % n2, a2 = q / n2, b2 = q % n2;
      add[p * n + q] = r1.add(a1, a2) * n2 + r2.add(b1, b2);
      mul[p * n + q] = r1.mul(a1, a2) * n2 + r2.mul(b1, b2);
    }
  std::optional<std::size_t> one;
  if (r1.one() && r2.one()) one = *r1.one() * n2 + *r2.one();
  return FiniteRing(GroundSet(std::move(labels)), std::move(add), std::move(mul), r1.zero() * n2 + r2.zero(), one);
}

}  // namespace prox

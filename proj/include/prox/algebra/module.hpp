#pragma once

#include <prox/algebra/ring.hpp>

#include <optional>
#include <string>
#include <vector>

namespace prox {

/// Left module over a finite ring: carrier addition table and scalar action
/// table (|R| rows, |E| columns).
class FiniteModule {
 public:
  using Table = std::vector<std::size_t>;

  FiniteModule(FiniteRing ring, GroundSet carrier, Table madd, Table action, std::size_t mzero)
      : ring_(std::move(ring)),
        carrier_(std::move(carrier)),
        madd_(std::move(madd)),
        action_(std::move(action)),
        mzero_(mzero) {
    const std::size_t m = carrier_.size(), r = ring_.size();
    if (madd_.size() != m * m) throw InputError("madd table must be " + std::to_string(m) + "x" + std::to_string(m));
    if (action_.size() != r * m)
      throw InputError("action table must be " + std::to_string(r) + "x" + std::to_string(m));
    for (auto v : madd_)
      if (v >= m) throw InputError("madd table entry out of range");
    for (auto v : action_)
      if (v >= m) throw InputError("action table entry out of range");
    if (mzero_ >= m) throw InputError("module zero is not a carrier element");
    neg_.assign(m, FiniteRing::kNone);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m && neg_[a] == FiniteRing::kNone; ++b)
        if (add(a, b) == mzero_ && add(b, a) == mzero_) neg_[a] = b;
  }

  const FiniteRing& ring() const noexcept { return ring_; }
  const GroundSet& carrier() const noexcept { return carrier_; }
  std::size_t size() const noexcept { return carrier_.size(); }
  std::size_t add(std::size_t e, std::size_t f) const { return madd_[e * size() + f]; }
  std::size_t act(std::size_t r, std::size_t e) const { return action_[r * size() + e]; }
  std::size_t neg(std::size_t e) const { return neg_[e]; }
  std::size_t zero() const noexcept { return mzero_; }
  const Table& add_table() const noexcept { return madd_; }
  const Table& action_table() const noexcept { return action_; }
  const Table& neg_table() const noexcept { return neg_; }

 private:
  FiniteRing ring_;
  GroundSet carrier_;
  Table madd_;
  Table action_;
  Table neg_;
  std::size_t mzero_;
};

struct ModuleViolation {
  std::string law;
  std::vector<std::size_t> witness;  // ring/carrier indices in the law's variable order
  std::string message;
};

/// First violated module law (abelian carrier group, then the action laws),
/// with the lexicographically minimal witness.
inline std::optional<ModuleViolation> audit_module(const FiniteModule& md) {
  const auto& R = md.ring();
  const std::size_t m = md.size(), n = R.size();
  const auto& rl = R.ground();
  const auto& el = md.carrier();
  auto fail = [](std::string law, std::vector<std::size_t> w, std::string msg) {
    return std::optional<ModuleViolation>(ModuleViolation{std::move(law), std::move(w), std::move(msg)});
  };

  for (std::size_t e = 0; e < m; ++e)
    for (std::size_t f = 0; f < m; ++f)
      for (std::size_t g = 0; g < m; ++g)
        if (md.add(md.add(e, f), g) != md.add(e, md.add(f, g)))
          return fail("madd-associativity", {e, f, g},
                      "(e+f)+g != e+(f+g) at e=" + el.label(e) + ", f=" + el.label(f) + ", g=" + el.label(g));
  for (std::size_t e = 0; e < m; ++e)
    for (std::size_t f = 0; f < m; ++f)
      if (md.add(e, f) != md.add(f, e))
        return fail("madd-commutativity", {e, f}, "e+f != f+e at e=" + el.label(e) + ", f=" + el.label(f));
  for (std::size_t e = 0; e < m; ++e)
    if (md.add(md.zero(), e) != e || md.add(e, md.zero()) != e)
      return fail("madd-identity", {e}, "zero is not an identity for e=" + el.label(e));
  for (std::size_t e = 0; e < m; ++e)
    if (md.neg(e) == FiniteRing::kNone) return fail("madd-inverses", {e}, "e=" + el.label(e) + " has no negative");

  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t e = 0; e < m; ++e)
        if (md.act(R.add(r, s), e) != md.add(md.act(r, e), md.act(s, e)))
          return fail("action-ring-additivity", {r, s, e},
                      "(r+s).e != r.e + s.e at r=" + rl.label(r) + ", s=" + rl.label(s) + ", e=" + el.label(e));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t e = 0; e < m; ++e)
      for (std::size_t f = 0; f < m; ++f)
        if (md.act(r, md.add(e, f)) != md.add(md.act(r, e), md.act(r, f)))
          return fail("action-module-additivity", {r, e, f},
                      "r.(e+f) != r.e + r.f at r=" + rl.label(r) + ", e=" + el.label(e) + ", f=" + el.label(f));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = 0; s < n; ++s)
      for (std::size_t e = 0; e < m; ++e)
        if (md.act(R.mul(r, s), e) != md.act(r, md.act(s, e)))
          return fail("action-compatibility", {r, s, e},
                      "(r*s).e != r.(s.e) at r=" + rl.label(r) + ", s=" + rl.label(s) + ", e=" + el.label(e));
  if (auto one = R.one())
    for (std::size_t e = 0; e < m; ++e)
      if (md.act(*one, e) != e) return fail("action-unity", {e}, "1.e != e at e=" + el.label(e));
  return std::nullopt;
}

/// Constructs and audits; throws StructureError naming the violated law.
inline FiniteModule build_module(FiniteRing ring, GroundSet carrier, FiniteModule::Table madd,
                                 FiniteModule::Table action, std::size_t mzero) {
  FiniteModule md(std::move(ring), std::move(carrier), std::move(madd), std::move(action), mzero);
  if (auto v = audit_module(md)) throw StructureError("module law " + v->law + " fails: " + v->message);
  return md;
}

/// A ring as a module over itself.
inline FiniteModule regular_module(const FiniteRing& r) {
  return build_module(r, r.ground(), r.add_table(), r.mul_table(), r.zero());
}

/// Componentwise module E1 x E2 over a common ring; pair (i,j) has index
/// i*|E2| + j.
inline FiniteModule direct_product_module(const FiniteModule& m1, const FiniteModule& m2) {
  if (!(m1.ring().ground() == m2.ring().ground()) || m1.ring().add_table() != m2.ring().add_table() ||
      m1.ring().mul_table() != m2.ring().mul_table())
    throw StructureError("module product needs both factors over the same ring");
  const std::size_t a = m1.size(), b = m2.size(), n = a * b, r = m1.ring().size();
  if (n > kMaxGround) throw CapError("product carrier has " + std::to_string(n) + " elements");
  std::vector<std::string> labels;
  for (const auto& x : m1.carrier().labels())
    for (const auto& y : m2.carrier().labels()) labels.push_back("(" + x + "," + y + ")");
  FiniteModule::Table madd(n * n), action(r * n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) madd[p * n + q] = m1.add(p / b, q / b) * b + m2.add(p % b, q % b);
    for (std::size_t s = 0; s < r; ++s) action[s * n + p] = m1.act(s, p / b) * b + m2.act(s, p % b);
  }
  return build_module(m1.ring(), GroundSet(std::move(labels)), std::move(madd), std::move(action),
                      m1.zero() * b + m2.zero());
}

}  // namespace prox

#pragma once

#include <prox/errors.hpp>
#include <prox/subset.hpp>

#include <string>
#include <vector>

namespace prox {

/// Finite group given by its Cayley table; construction audits the group
/// laws and locates the identity.
class FiniteGroup {
 public:
  using Table = std::vector<std::size_t>;

  FiniteGroup(GroundSet ground, Table op) : ground_(std::move(ground)), op_(std::move(op)) {
    const std::size_t n = ground_.size();
    if (op_.size() != n * n) throw InputError("group table must be " + std::to_string(n) + "x" + std::to_string(n));
    for (auto v : op_)
      if (v >= n) throw InputError("group table entry out of range");
    auto label = [&](std::size_t i) { return "'" + ground_.label(i) + "'"; };
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (at(at(a, b), c) != at(a, at(b, c)))
            throw StructureError("not a group: associativity fails at (" + label(a) + "," + label(b) + "," +
                                 label(c) + ")");
    identity_ = n;
    for (std::size_t e = 0; e < n && identity_ == n; ++e) {
      bool ok = true;
      for (std::size_t x = 0; x < n && ok; ++x) ok = at(e, x) == x && at(x, e) == x;
      if (ok) identity_ = e;
    }
    if (identity_ == n) throw StructureError("not a group: no identity element");
    inverse_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n && inverse_[a] == n; ++b)
        if (at(a, b) == identity_ && at(b, a) == identity_) inverse_[a] = b;
      if (inverse_[a] == n) throw StructureError("not a group: " + label(a) + " has no inverse");
    }
  }

  const GroundSet& ground() const noexcept { return ground_; }
  std::size_t size() const noexcept { return ground_.size(); }
  std::size_t at(std::size_t a, std::size_t b) const { return op_[a * size() + b]; }
  const Table& table() const noexcept { return op_; }
  std::size_t identity() const noexcept { return identity_; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  const Table& inverse_table() const noexcept { return inverse_; }

 private:
  GroundSet ground_;
  Table op_;
  Table inverse_;
  std::size_t identity_ = 0;
};

}  // namespace prox

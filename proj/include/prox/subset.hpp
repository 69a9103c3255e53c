#pragma once

#include <prox/errors.hpp>

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace prox {

/// Characteristic vector of a subset; element i is bit i.
using Mask = std::uint32_t;

inline constexpr std::size_t kMaxGround = 16;

constexpr Mask full_mask(std::size_t n) noexcept {
  return n >= 32 ? ~Mask{0} : (Mask{1} << n) - 1;
}

constexpr Mask bit(std::size_t i) noexcept { return Mask{1} << i; }

constexpr bool contains(Mask set, std::size_t i) noexcept {
  return (set >> i) & 1U;
}

constexpr bool is_subset(Mask a, Mask b) noexcept { return (a & ~b) == 0; }

/// Calls fn(i) for each member of `set`, ascending.
template <typename Fn>
constexpr void for_each_bit(Mask set, Fn&& fn) {
  while (set != 0) {
    fn(static_cast<std::size_t>(std::countr_zero(set)));
    set &= set - 1;
  }
}

inline std::vector<std::size_t> members(Mask set) {
  std::vector<std::size_t> out;
  for_each_bit(set, [&](std::size_t i) { out.push_back(i); });
  return out;
}

/// Image of `set` under an elementwise map given as a lookup table.
template <typename Table>
constexpr Mask image(Mask set, const Table& map) {
  Mask out = 0;
  for_each_bit(set, [&](std::size_t i) { out |= bit(map[i]); });
  return out;
}

/// Ordered list of distinct element labels; index i names labels[i].
class GroundSet {
 public:
  GroundSet() = default;

  explicit GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw InputError("ground set must have at least one element");
    if (labels_.size() > kMaxGround)
      throw CapError("ground set has " + std::to_string(labels_.size()) +
                     " elements; at most " + std::to_string(kMaxGround) + " are supported");
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      auto [it, fresh] = index_.emplace(labels_[i], i);
      if (!fresh) throw InputError("duplicate element label '" + labels_[i] + "'");
    }
  }

  GroundSet(std::initializer_list<std::string> labels)
      : GroundSet(std::vector<std::string>(labels)) {}

  /// Ground set labelled "0", "1", ..., "n-1".
  static GroundSet numbered(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    return GroundSet(std::move(labels));
  }

  std::size_t size() const noexcept { return labels_.size(); }
  Mask full() const noexcept { return full_mask(size()); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_.at(i); }

  std::size_t index_of(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) throw InputError("unknown element label '" + std::string(label) + "'");
    return it->second;
  }

  bool has(std::string_view label) const { return index_.contains(std::string(label)); }

  Mask mask_of(const std::vector<std::string>& names) const {
    Mask m = 0;
    for (const auto& s : names) m |= bit(index_of(s));
    return m;
  }

  std::vector<std::string> labels_of(Mask m) const {
    std::vector<std::string> out;
    for_each_bit(m, [&](std::size_t i) { out.push_back(labels_[i]); });
    return out;
  }

  /// "{a,b}" rendering used by human-readable reports.
  std::string format(Mask m) const {
    std::string out = "{";
    bool first = true;
    for_each_bit(m, [&](std::size_t i) {
      if (!first) out += ',';
      out += labels_[i];
      first = false;
    });
    return out + "}";
  }

  friend bool operator==(const GroundSet& a, const GroundSet& b) { return a.labels_ == b.labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// A subset of a ground set of known size. Operations between subsets of
/// different universes are rejected.
class Subset {
 public:
  constexpr Subset() = default;
  constexpr Subset(Mask bits, std::size_t universe) : bits_(bits), universe_(universe) {
    if (universe > kMaxGround || (bits & ~full_mask(universe)) != 0)
      throw InputError("subset has members outside its ground set");
  }

  static Subset of(const GroundSet& ground, std::initializer_list<std::size_t> idx) {
    Mask m = 0;
    for (auto i : idx) {
      if (i >= ground.size()) throw InputError("element index out of range");
      m |= bit(i);
    }
    return Subset(m, ground.size());
  }
  static Subset empty(std::size_t universe) { return Subset(0, universe); }
  static Subset all(std::size_t universe) { return Subset(full_mask(universe), universe); }

  constexpr Mask bits() const noexcept { return bits_; }
  constexpr std::size_t universe() const noexcept { return universe_; }
  constexpr bool is_empty() const noexcept { return bits_ == 0; }
  std::size_t count() const noexcept { return static_cast<std::size_t>(std::popcount(bits_)); }
  constexpr bool has(std::size_t i) const noexcept { return contains(bits_, i); }

  Subset operator|(const Subset& o) const { return {bits_ | o.checked(universe_).bits_, universe_}; }
  Subset operator&(const Subset& o) const { return {bits_ & o.checked(universe_).bits_, universe_}; }
  Subset complement() const { return {full_mask(universe_) & ~bits_, universe_}; }
  bool subset_of(const Subset& o) const { return is_subset(bits_, o.checked(universe_).bits_); }

  const Subset& checked(std::size_t universe) const {
    if (universe != universe_) throw InputError("subsets over mismatched ground sets");
    return *this;
  }

  friend constexpr bool operator==(const Subset&, const Subset&) = default;
  friend constexpr auto operator<=>(const Subset& a, const Subset& b) { return a.bits_ <=> b.bits_; }

 private:
  Mask bits_ = 0;
  std::size_t universe_ = 0;
};

}  // namespace prox

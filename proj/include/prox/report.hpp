#pragma once

#include <prox/subset.hpp>

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace prox {

using Json = nlohmann::ordered_json;

enum class Verdict { Pass, Fail, Skipped };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skipped: return "skipped";
  }
  return "?";
}

/// Concrete counterexample. `sets` holds the raw subsets in the order the
/// check defines (W,K for pairs; A1,B1,A2,B2 for rectangle pairs), `points`
/// holds element indices for pointwise witnesses. `doc` is the labelled
/// rendering used in reports.
struct Witness {
  std::string map;
  std::string kind;
  std::vector<Mask> sets;
  std::vector<std::size_t> points;
  Json doc = Json::object();
};

struct CheckResult {
  std::string name;
  Verdict verdict = Verdict::Pass;
  std::optional<Witness> witness;
  std::uint64_t pairs_examined = 0;
  std::chrono::duration<double, std::milli> elapsed{0};
  Json details = Json::object();

  bool passed() const noexcept { return verdict == Verdict::Pass; }
  bool failed() const noexcept { return verdict == Verdict::Fail; }

  static CheckResult skipped(std::string name, std::string reason) {
    CheckResult r;
    r.name = std::move(name);
    r.verdict = Verdict::Skipped;
    r.details["reason"] = std::move(reason);
    return r;
  }
};

struct SuiteReport {
  std::string structure;
  std::string mode = "rectangle";
  std::vector<CheckResult> checks;

  bool any_failed() const {
    for (const auto& c : checks)
      if (c.failed()) return true;
    return false;
  }

  /// All checks pass; skipped entries count as not passing.
  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.passed()) return false;
    return !checks.empty();
  }

  const CheckResult* find(std::string_view name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

/// Report document. Field order is fixed; elapsed times are omitted so that
/// identical inputs serialize to identical bytes.
inline Json to_json(const CheckResult& c) {
  Json j;
  j["name"] = c.name;
  j["verdict"] = to_string(c.verdict);
  j["witness"] = c.witness ? c.witness->doc : Json(nullptr);
  j["pairs_examined"] = c.pairs_examined;
  j["details"] = c.details;
  return j;
}

inline Json to_json(const SuiteReport& r) {
  Json j;
  j["structure"] = r.structure;
  j["mode"] = r.mode;
  j["checks"] = Json::array();
  for (const auto& c : r.checks) j["checks"].push_back(to_json(c));
  return j;
}

}  // namespace prox

// proxcheck: command-line driver for the proximity verification engine.
//
// Exit codes: 0 no failing check, 1 at least one failing check, 2 the inputs
// never reached the engine (bad flags, unreadable or invalid documents).

#include <prox/prox.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace prox;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInput = 2;

struct Flags {
  std::string mode = "rectangle";
  std::vector<std::string> checks;
  bool json = false;
  bool unsafe_caps = false;
  unsigned threads = 1;
  std::string probe;
  std::optional<std::string> set;
};

std::size_t ground_cap(bool unsafe) {
  std::size_t cap = 12;
  if (const char* env = std::getenv("PROX_MAX_GROUND")) {
    try {
      std::size_t used = 0;
      const long v = std::stol(env, &used);
      if (used != std::string(env).size() || v < 1) throw InputError("");
      cap = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw InputError("PROX_MAX_GROUND must be a positive integer, got '" + std::string(env) + "'");
    }
  }
  if (cap > 12 && !unsafe) throw InputError("PROX_MAX_GROUND above 12 requires --unsafe-caps");
  return std::min(cap, kMaxGround);
}

void require_cap(const GroundSet& g, const std::string& what, const Flags& f) {
  const auto cap = ground_cap(f.unsafe_caps);
  if (g.size() > cap)
    throw InputError(what + ": " + std::to_string(g.size()) + " elements exceed the accepted ground size " +
                     std::to_string(cap) + " (PROX_MAX_GROUND)");
}

ProductMode parse_mode(const std::string& m) { return m == "full" ? ProductMode::FullProduct : ProductMode::Rectangle; }

/// Check names split on commas; "all" clears the filter.
std::vector<std::string> check_filter(const Flags& f, const std::vector<std::string>& registry) {
  std::vector<std::string> out;
  for (const auto& item : f.checks) {
    std::stringstream ss(item);
    std::string name;
    while (std::getline(ss, name, ',')) {
      if (name.empty()) continue;
      if (name == "all") return {};
      if (std::find(registry.begin(), registry.end(), name) == registry.end()) {
        std::string known;
        for (const auto& r : registry) known += (known.empty() ? "" : ", ") + r;
        throw InputError("--check: unknown check '" + name + "' (known: " + known + ", all)");
      }
      out.push_back(name);
    }
  }
  return out;
}

SuiteOptions suite_options(const Flags& f, const std::vector<std::string>& registry) {
  SuiteOptions so;
  so.scan.unsafe_caps = f.unsafe_caps;
  so.scan.threads = std::max(1U, f.threads);
  so.only = check_filter(f, registry);
  return so;
}

/// Loads a space document, applying --probe overrides to probe-equality
/// spaces.
io::SpaceDocument load_space(const std::string& path, const Flags& f) {
  Json j = io::load_json(path);
  if (!f.probe.empty()) {
    const auto overrides = io::parse_probe_overrides(f.probe);
    if (!j.is_object() || !j.contains("proximity") || !j["proximity"].is_object() ||
        j["proximity"].value("kind", "") != "probe-equality")
      throw InputError(path + ": --probe applies only to probe-equality spaces");
    for (const auto& [label, tuple] : overrides) {
      Json v = Json::array();
      for (const auto& x : tuple) v.push_back(io::format_feature(x));
      j["proximity"]["probe"][label] = v;
    }
  }
  auto doc = io::parse_space(j, path);
  require_cap(doc.ground, path, f);
  return doc;
}

int emit_suite(const SuiteReport& rep, const Flags& f) {
  if (f.json)
    std::cout << to_json(rep).dump(2) << '\n';
  else
    std::cout << io::render(rep);
  return rep.any_failed() ? kFail : kPass;
}

int cmd_audit_space(const std::string& path, const Flags& f) {
  auto doc = load_space(path, f);
  auto rep = audit_axioms(doc.relation);
  if (f.json) {
    Json j;
    j["structure"] = path;
    j["relation"] = doc.relation.name();
    j["elements"] = doc.ground.labels();
    j["axioms"] = to_json(rep, doc.ground);
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "space: " << path << "  (" << doc.relation.name() << ", " << doc.ground.size() << " elements)\n"
              << io::render(rep, doc.ground)
              << (rep.cech() ? "Cech axioms hold\n" : "Cech axioms fail\n");
  }
  return rep.any_failed() ? kFail : kPass;
}

int cmd_audit_ring(const std::string& path, const Flags& f) {
  auto ring = io::load_ring(path);
  require_cap(ring.ground(), path, f);
  auto rep = audit_ring(ring);
  bool failed = false;
  for (auto [name, v] : rep.entries()) failed = failed || v->status == Verdict::Fail;
  if (f.json) {
    Json j;
    j["structure"] = path;
    j["elements"] = ring.ground().labels();
    j["laws"] = to_json(rep, ring.ground());
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "ring: " << path << "  (" << ring.size() << " elements)\n" << io::render(rep, ring.ground());
  }
  return failed ? kFail : kPass;
}

int cmd_verify(const std::vector<std::string>& paths, const Flags& f) {
  const Json algebra = io::load_json(paths[0]);
  const bool module = algebra.is_object() && algebra.contains("carrier");
  if (module) {
    if (paths.size() != 3)
      throw InputError("verify: a module document needs two space documents (ring space, carrier space)");
    auto md = io::parse_module(algebra, paths[0]);
    auto ring_space = load_space(paths[1], f);
    auto carrier_space = load_space(paths[2], f);
    require_cap(md.carrier(), paths[0], f);
    if (!(ring_space.ground == md.ring().ground()))
      throw InputError("verify: " + paths[1] + " has " + std::to_string(ring_space.ground.size()) +
                       " elements but the ring in " + paths[0] + " has " + std::to_string(md.ring().size()) +
                       " (element lists must match)");
    if (!(carrier_space.ground == md.carrier()))
      throw InputError("verify: " + paths[2] + " elements do not match the carrier in " + paths[0]);
    auto so = suite_options(f, module_registry());
    ProximalModule pm(std::move(md), ring_space.relation, carrier_space.relation, parse_mode(f.mode), paths[0]);
    return emit_suite(verify_proximal_module(pm, so), f);
  }
  if (paths.size() != 2) throw InputError("verify: expected a ring document and one space document");
  auto ring = io::parse_ring(algebra, paths[0]);
  require_cap(ring.ground(), paths[0], f);
  auto space = load_space(paths[1], f);
  if (!(space.ground == ring.ground()))
    throw InputError("verify: " + paths[1] + " has " + std::to_string(space.ground.size()) +
                     " elements but the ring in " + paths[0] + " has " + std::to_string(ring.size()) +
                     " (element lists must match)");
  auto so = suite_options(f, ring_registry());
  ProximalRing ps(std::move(ring), space.relation, parse_mode(f.mode), paths[0]);
  return emit_suite(run_full_suite(ps, so), f);
}

int cmd_product(const std::vector<std::string>& paths, const Flags& f) {
  if (paths.size() < 4 || paths.size() % 2 != 0)
    throw InputError("product: expected ring/space document pairs (at least two factors)");
  auto so = suite_options(f, ring_registry());
  std::vector<ProximalRing> factors;
  for (std::size_t i = 0; i < paths.size(); i += 2) {
    auto ring = io::load_ring(paths[i]);
    auto space = load_space(paths[i + 1], f);
    if (!(space.ground == ring.ground()))
      throw InputError("product: " + paths[i + 1] + " elements do not match the ring in " + paths[i]);
    factors.emplace_back(std::move(ring), space.relation, parse_mode(f.mode), paths[i]);
  }
  return emit_suite(verify_product(factors, so), f);
}

/// "zn:6" -> 6; throws on a malformed or missing parameter.
std::size_t demo_parameter(const std::string& name, const std::string& prefix) {
  const auto arg = name.substr(prefix.size());
  std::size_t used = 0;
  long v = -1;
  try {
    v = std::stol(arg, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != arg.size() || v < 0) throw InputError("demo: '" + name + "' needs a non-negative integer");
  return static_cast<std::size_t>(v);
}

int cmd_demo(const std::string& name, const Flags& f) {
  auto so = suite_options(f, ring_registry());
  const auto mode = parse_mode(f.mode);
  if (name == "ribbon") {
    auto [ring, probe] = ribbon_ring();
    if (!f.probe.empty())
      for (const auto& [label, tuple] : io::parse_probe_overrides(f.probe)) {
        if (!ring.ground().has(label)) throw InputError("--probe: unknown element label '" + label + "'");
        probe[label] = tuple;
      }
    const auto rel = descriptive_relation(ring.ground(), probe);
    ProximalRing ps(ring, rel, mode, "ribbon complexes {0, rbA, rbB, 1}");
    auto rep = run_full_suite(ps, so);
    rep.structure = "descriptive ring: " + ps.label;
    if (!f.json) {
      const auto& g = ring.ground();
      std::cout << io::render_table(ring, false, "⊕") << '\n' << io::render_table(ring, true, "⊙") << '\n';
      std::cout << "probe:";
      for (const auto& l : g.labels()) {
        std::cout << ' ' << l << "=";
        const auto& t = probe.at(l);
        for (std::size_t i = 0; i < t.size(); ++i) std::cout << (i ? "," : "") << io::format_feature(t[i]);
      }
      const bool near = rel.near_bits(g.mask_of({"rbA"}), g.mask_of({"rbB"}));
      std::cout << "\nnear({rbA},{rbB}) = " << (near ? "true" : "false") << '\n';
      const auto audit = audit_ring(ring);
      std::cout << "ring axioms: " << (audit.is_ring() ? "pass" : "fail") << "\n\n";
    }
    return emit_suite(rep, f);
  }

  std::optional<FiniteRing> ring;
  std::string label;
  if (name.rfind("zn:", 0) == 0) {
    const auto n = demo_parameter(name, "zn:");
    if (n < 2 || n > kMaxGround) throw InputError("demo zn:<n> needs 2 <= n <= 16");
    ring = ring_zn(n);
    label = "Z_" + std::to_string(n);
  } else if (name.rfind("gf:", 0) == 0) {
    const auto p = demo_parameter(name, "gf:");
    if (p > kMaxGround) throw InputError("demo gf:<p> needs p <= 16");
    ring = ring_gf(p);
    label = "GF(" + std::to_string(p) + ")";
  } else if (name.rfind("boolean:", 0) == 0) {
    const auto m = demo_parameter(name, "boolean:");
    if (m < 1 || m > 4) throw InputError("demo boolean:<m> needs 1 <= m <= 4");
    ring = boolean_ring(m);
    label = "boolean ring on " + std::to_string(m) + " atoms";
  } else {
    throw InputError("demo: unknown structure '" + name + "' (ribbon, zn:<n>, gf:<p>, boolean:<m>)");
  }
  require_cap(ring->ground(), "demo " + name, f);
  ProximalRing ps(*ring, overlap_relation(ring->ground()), mode, label + " with overlap");
  if (!f.json) {
    std::cout << io::render_table(*ring, false, "+") << '\n' << io::render_table(*ring, true, "*") << '\n';
    std::cout << "relation: overlap\n\n";
  }
  return emit_suite(run_full_suite(ps, so), f);
}

int cmd_closure(const std::string& path, const Flags& f) {
  auto doc = load_space(path, f);
  Mask a = 0;
  if (f.set) {
    std::stringstream ss(*f.set);
    std::string label;
    while (std::getline(ss, label, ',')) {
      if (label.empty()) continue;
      if (!doc.ground.has(label)) throw InputError("--set: unknown element label '" + label + "'");
      a |= bit(doc.ground.index_of(label));
    }
  }
  const Mask cl = closure_bits(doc.relation, a);
  const bool closed = cl == a;
  if (f.json) {
    Json j;
    j["set"] = doc.ground.labels_of(a);
    j["closure"] = doc.ground.labels_of(cl);
    j["closed"] = closed;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "set:     " << doc.ground.format(a) << '\n'
              << "closure: " << doc.ground.format(cl) << '\n'
              << (closed ? "closed\n" : "not closed\n");
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"proxcheck: proximity spaces, proximal rings and their continuity checks"};
  app.require_subcommand(1, 1);
  Flags f;
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", f.json, "machine-readable report");
    sub->add_flag("--unsafe-caps", f.unsafe_caps, "raise enumeration size caps");
    sub->add_option("--probe", f.probe, "probe overrides label=value,...");
  };
  auto add_suite = [&](CLI::App* sub) {
    add_common(sub);
    sub->add_option("--mode", f.mode, "product continuity: rectangle or full")
        ->check(CLI::IsMember({"rectangle", "full"}));
    sub->add_option("--check", f.checks, "check name(s) or all; repeatable, comma-separated")
        ->expected(1)
        ->allow_extra_args(false)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    sub->add_option("--threads", f.threads, "worker threads for subset scans")->check(CLI::Range(1, 256));
  };

  std::string path;
  std::vector<std::string> paths;
  std::string demo_name;

  auto* audit_space = app.add_subcommand("audit-space", "audit the proximity axioms of a space document");
  audit_space->add_option("space", path, "space document")->required();
  add_common(audit_space);

  auto* audit_ring_cmd = app.add_subcommand("audit-ring", "audit the ring laws of a ring document");
  audit_ring_cmd->add_option("ring", path, "ring document")->required();
  add_common(audit_ring_cmd);

  auto* verify = app.add_subcommand("verify", "run the proximal suite on a ring (or module) and its space(s)");
  verify->add_option("documents", paths, "ring space | module ring-space carrier-space")->required()->expected(1, 3);
  add_suite(verify);

  auto* demo = app.add_subcommand("demo", "run a builtin structure: ribbon, zn:<n>, gf:<p>, boolean:<m>");
  demo->add_option("name", demo_name, "structure")->required();
  add_suite(demo);

  auto* closure_cmd = app.add_subcommand("closure", "closure of a subset");
  closure_cmd->add_option("space", path, "space document")->required();
  closure_cmd->add_option("--set", f.set, "comma-separated element labels");
  add_common(closure_cmd);

  auto* product = app.add_subcommand("product", "verify the direct product of ring/space pairs");
  product->add_option("documents", paths, "ring1 space1 ring2 space2 ...")->required()->expected(1, 32);
  add_suite(product);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    ground_cap(f.unsafe_caps);
    if (!f.checks.empty()) {
      auto known = ring_registry();
      known.insert(known.end(), module_registry().begin(), module_registry().end());
      check_filter(f, known);
    }
    if (*audit_space) return cmd_audit_space(path, f);
    if (*audit_ring_cmd) return cmd_audit_ring(path, f);
    if (*verify) return cmd_verify(paths, f);
    if (*demo) return cmd_demo(demo_name, f);
    if (*closure_cmd) return cmd_closure(path, f);
    if (*product) return cmd_product(paths, f);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const StructureError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  } catch (const CapError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return kInput;
}

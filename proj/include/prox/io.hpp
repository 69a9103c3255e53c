#pragma once

#include <prox/algebra/module.hpp>
#include <prox/algebra/ring.hpp>
#include <prox/axioms.hpp>
#include <prox/relation.hpp>
#include <prox/report.hpp>

#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace prox::io {

/// Space document: elements plus a proximity generator.
struct SpaceDocument {
  GroundSet ground;
  ProximityRelation relation;
};

namespace detail {

inline Json parse_text(const std::string& text, const std::string& doc) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(doc + ": malformed JSON (" + std::string(e.what()) + ")");
  }
}

inline void only_keys(const Json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw InputError(where + " must be an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw InputError(where + ": unknown field '" + key + "'");
  }
}

inline const Json& required(const Json& j, const std::string& where, const char* key) {
  if (!j.contains(key)) throw InputError(where + ": missing field '" + key + "'");
  return j.at(key);
}

inline std::string as_label(const Json& v, const std::string& where) {
  if (!v.is_string()) throw InputError(where + " must be an element label (string)");
  return v.get<std::string>();
}

inline std::vector<std::string> label_list(const Json& v, const std::string& where) {
  if (!v.is_array()) throw InputError(where + " must be an array of element labels");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_label(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline Mask subset_of(const GroundSet& g, const Json& v, const std::string& where) {
  Mask m = 0;
  for (const auto& l : label_list(v, where)) {
    if (!g.has(l)) throw InputError(where + ": unknown element label '" + l + "'");
    m |= bit(g.index_of(l));
  }
  return m;
}

inline FeatureValue feature(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return FeatureValue(v.get<std::int64_t>());
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d == static_cast<double>(static_cast<std::int64_t>(d))) return FeatureValue(static_cast<std::int64_t>(d));
    throw InputError(where + ": probe values must be integers or \"p/q\" strings");
  }
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    try {
      const auto slash = s.find('/');
      std::size_t used = 0;
      if (slash == std::string::npos) {
        const auto num = std::stoll(s, &used);
        if (used != s.size()) throw InputError("");
        return FeatureValue(num);
      }
      const auto num = std::stoll(s.substr(0, slash), &used);
      if (used != slash) throw InputError("");
      const auto rest = s.substr(slash + 1);
      const auto den = std::stoll(rest, &used);
      if (used != rest.size() || den == 0) throw InputError("");
      return FeatureValue(num, den);
    } catch (const std::exception&) {
      throw InputError(where + ": cannot read probe value \"" + s + "\"");
    }
  }
  throw InputError(where + ": probe values must be integers or \"p/q\" strings");
}

inline FeatureTuple feature_tuple(const Json& v, const std::string& where) {
  if (!v.is_array()) return {feature(v, where)};
  FeatureTuple t;
  for (std::size_t i = 0; i < v.size(); ++i) t.push_back(feature(v[i], where + "[" + std::to_string(i) + "]"));
  return t;
}

inline FiniteRing::Table label_matrix(const GroundSet& g, const Json& v, std::size_t rows, std::size_t cols,
                                      const GroundSet& values, const std::string& where) {
  if (!v.is_array() || v.size() != rows)
    throw InputError(where + " must be an array of " + std::to_string(rows) + " rows");
  FiniteRing::Table t;
  for (std::size_t r = 0; r < rows; ++r) {
    const auto row_where = where + " row " + std::to_string(r) + " ('" + g.label(r) + "')";
    if (!v[r].is_array() || v[r].size() != cols)
      throw InputError(row_where + " must have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) {
      const auto l = as_label(v[r][c], row_where + " column " + std::to_string(c));
      if (!values.has(l)) throw InputError(row_where + " column " + std::to_string(c) + ": unknown element label '" + l + "'");
      t.push_back(values.index_of(l));
    }
  }
  return t;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

inline SpaceDocument parse_space(const Json& j, const std::string& doc = "space document") {
  using namespace detail;
  only_keys(j, doc, {"elements", "proximity"});
  GroundSet g(label_list(required(j, doc, "elements"), doc + " field 'elements'"));
  const auto pwhere = doc + " field 'proximity'";
  const Json& p = required(j, doc, "proximity");
  if (!p.is_object()) throw InputError(pwhere + " must be an object");
  const auto kind = as_label(required(p, pwhere, "kind"), pwhere + " field 'kind'");

  auto build = [&](RelationSpec spec) { return SpaceDocument{g, build_relation(g, spec)}; };
  if (kind == "overlap" || kind == "containment") {
    only_keys(p, pwhere + " (kind '" + kind + "')", {"kind"});
    return kind == "overlap" ? build(gen::Overlap{}) : build(gen::Containment{});
  }
  if (kind == "probe-equality") {
    only_keys(p, pwhere + " (kind '" + kind + "')", {"kind", "probe"});
    const Json& probe = required(p, pwhere, "probe");
    if (!probe.is_object()) throw InputError(pwhere + " field 'probe' must be an object");
    gen::ProbeEquality spec;
    for (const auto& [label, v] : probe.items()) {
      if (!g.has(label)) throw InputError(pwhere + " field 'probe': unknown element label '" + label + "'");
      spec.probe[label] = feature_tuple(v, pwhere + " field 'probe' entry '" + label + "'");
    }
    for (const auto& l : g.labels())
      if (!spec.probe.contains(l)) throw InputError(pwhere + " field 'probe': no value for element '" + l + "'");
    return build(spec);
  }
  if (kind == "gap-metric") {
    only_keys(p, pwhere + " (kind '" + kind + "')", {"kind", "coords", "epsilon"});
    const Json& coords = required(p, pwhere, "coords");
    if (!coords.is_object()) throw InputError(pwhere + " field 'coords' must be an object");
    gen::GapMetric spec;
    const Json& eps = required(p, pwhere, "epsilon");
    if (!eps.is_number()) throw InputError(pwhere + " field 'epsilon' must be a number");
    spec.epsilon = eps.get<double>();
    for (const auto& [label, v] : coords.items()) {
      if (!g.has(label)) throw InputError(pwhere + " field 'coords': unknown element label '" + label + "'");
      const auto where = pwhere + " field 'coords' entry '" + label + "'";
      if (!v.is_array()) throw InputError(where + " must be an array of numbers");
      std::vector<double> pt;
      for (const auto& x : v) {
        if (!x.is_number()) throw InputError(where + " must be an array of numbers");
        pt.push_back(x.get<double>());
      }
      spec.coords[label] = std::move(pt);
    }
    for (const auto& l : g.labels())
      if (!spec.coords.contains(l)) throw InputError(pwhere + " field 'coords': no value for element '" + l + "'");
    return build(spec);
  }
  if (kind == "table") {
    only_keys(p, pwhere + " (kind '" + kind + "')", {"kind", "pairs", "complete"});
    const Json& pairs = required(p, pwhere, "pairs");
    if (!pairs.is_array()) throw InputError(pwhere + " field 'pairs' must be an array");
    gen::Table spec;
    if (p.contains("complete")) {
      if (!p["complete"].is_boolean()) throw InputError(pwhere + " field 'complete' must be true or false");
      spec.complete = p["complete"].get<bool>();
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto where = pwhere + " field 'pairs'[" + std::to_string(i) + "]";
      if (!pairs[i].is_array() || pairs[i].size() != 2) throw InputError(where + " must be a pair of label lists");
      const Mask a = subset_of(g, pairs[i][0], where + "[0]");
      const Mask b = subset_of(g, pairs[i][1], where + "[1]");
      if (a == 0 || b == 0) throw InputError(where + ": subsets must be nonempty");
      spec.pairs.emplace_back(a, b);
    }
    return build(spec);
  }
  throw InputError(pwhere + " field 'kind': unknown kind '" + kind + "'");
}

inline FiniteRing parse_ring_fields(const Json& j, const std::string& doc) {
  using namespace detail;
  GroundSet g(label_list(required(j, doc, "elements"), doc + " field 'elements'"));
  const std::size_t n = g.size();
  auto add = label_matrix(g, required(j, doc, "add"), n, n, g, doc + " field 'add'");
  auto mul = label_matrix(g, required(j, doc, "mul"), n, n, g, doc + " field 'mul'");
  const auto zero = as_label(required(j, doc, "zero"), doc + " field 'zero'");
  if (!g.has(zero)) throw InputError(doc + " field 'zero': unknown element label '" + zero + "'");
  std::optional<std::size_t> one;
  if (j.contains("one") && !j["one"].is_null()) {
    const auto o = as_label(j["one"], doc + " field 'one'");
    if (!g.has(o)) throw InputError(doc + " field 'one': unknown element label '" + o + "'");
    one = g.index_of(o);
  }
  const auto z = g.index_of(zero);
  return FiniteRing(std::move(g), std::move(add), std::move(mul), z, one);
}

inline FiniteRing parse_ring(const Json& j, const std::string& doc = "ring document") {
  detail::only_keys(j, doc, {"elements", "zero", "one", "add", "mul"});
  return parse_ring_fields(j, doc);
}

/// Module document: a ring document plus carrier, madd, action and an
/// optional mzero (defaults to the identity of madd).
inline FiniteModule parse_module(const Json& j, const std::string& doc = "module document") {
  using namespace detail;
  only_keys(j, doc, {"elements", "zero", "one", "add", "mul", "carrier", "madd", "action", "mzero"});
  auto ring = parse_ring_fields(j, doc);
  GroundSet e(label_list(required(j, doc, "carrier"), doc + " field 'carrier'"));
  auto madd = label_matrix(e, required(j, doc, "madd"), e.size(), e.size(), e, doc + " field 'madd'");
  auto action = label_matrix(ring.ground(), required(j, doc, "action"), ring.size(), e.size(), e,
                             doc + " field 'action'");
  std::size_t mzero = e.size();
  if (j.contains("mzero")) {
    const auto z = as_label(j["mzero"], doc + " field 'mzero'");
    if (!e.has(z)) throw InputError(doc + " field 'mzero': unknown element label '" + z + "'");
    mzero = e.index_of(z);
  } else {
    for (std::size_t c = 0; c < e.size() && mzero == e.size(); ++c) {
      bool id = true;
      for (std::size_t x = 0; x < e.size() && id; ++x) id = madd[c * e.size() + x] == x && madd[x * e.size() + c] == x;
      if (id) mzero = c;
    }
    if (mzero == e.size()) throw InputError(doc + " field 'madd': no identity element");
  }
  return build_module(std::move(ring), std::move(e), std::move(madd), std::move(action), mzero);
}

inline SpaceDocument load_space(const std::string& path) {
  return parse_space(detail::parse_text(detail::read_file(path), path), path);
}
inline FiniteRing load_ring(const std::string& path) {
  return parse_ring(detail::parse_text(detail::read_file(path), path), path);
}
inline FiniteModule load_module(const std::string& path) {
  return parse_module(detail::parse_text(detail::read_file(path), path), path);
}
inline Json load_json(const std::string& path) { return detail::parse_text(detail::read_file(path), path); }

/// "a=4,b=1/2" -> single-feature probe overrides.
inline ProbeAssignment parse_probe_overrides(const std::string& text) {
  ProbeAssignment out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("--probe: expected label=value, got '" + item + "'");
    out[item.substr(0, eq)] = {detail::feature(Json(item.substr(eq + 1)), "--probe entry '" + item + "'")};
  }
  return out;
}

inline Json to_json(const FiniteRing& r) {
  const auto& g = r.ground();
  Json j;
  j["elements"] = g.labels();
  j["zero"] = g.label(r.zero());
  if (r.one()) j["one"] = g.label(*r.one());
  auto matrix = [&](auto op) {
    Json m = Json::array();
    for (std::size_t a = 0; a < r.size(); ++a) {
      Json row = Json::array();
      for (std::size_t b = 0; b < r.size(); ++b) row.push_back(g.label(op(a, b)));
      m.push_back(row);
    }
    return m;
  };
  j["add"] = matrix([&](auto a, auto b) { return r.add(a, b); });
  j["mul"] = matrix([&](auto a, auto b) { return r.mul(a, b); });
  return j;
}

// -- human-readable rendering --

/// Cayley table with a header row, columns padded to the widest label.
inline std::string render_table(const FiniteRing& r, bool multiplication, const std::string& symbol) {
  const auto& g = r.ground();
  // Display width counts UTF-8 code points, not bytes.
  auto width = [](const std::string& s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
  };
  std::size_t w = width(symbol);
  for (const auto& l : g.labels()) w = std::max(w, width(l));
  std::ostringstream out;
  auto cell = [&](const std::string& s) { out << s << std::string(w + 1 - width(s), ' '); };
  cell(symbol);
  out << "| ";
  for (const auto& l : g.labels()) cell(l);
  out << '\n' << std::string(w + 1, '-') << "+-" << std::string((w + 1) * g.size(), '-') << '\n';
  for (std::size_t a = 0; a < r.size(); ++a) {
    cell(g.label(a));
    out << "| ";
    for (std::size_t b = 0; b < r.size(); ++b) cell(g.label(multiplication ? r.mul(a, b) : r.add(a, b)));
    out << '\n';
  }
  return out.str();
}

/// "4" for integral values, "1/2" otherwise.
inline std::string format_feature(const FeatureValue& v) {
  if (v.denominator() == 1) return std::to_string(v.numerator());
  return std::to_string(v.numerator()) + "/" + std::to_string(v.denominator());
}

inline std::string render(const SuiteReport& rep, bool timing = true) {
  std::ostringstream out;
  out << "structure: " << rep.structure << "  [" << rep.mode << "]\n";
  for (const auto& c : rep.checks) {
    const char* tag = c.verdict == Verdict::Pass ? "PASS" : c.verdict == Verdict::Fail ? "FAIL" : "SKIP";
    out << "  " << tag << "  " << std::left << std::setw(16) << c.name;
    if (c.verdict == Verdict::Skipped) {
      out << "  (" << c.details.value("reason", std::string("skipped")) << ")\n";
      continue;
    }
    out << "  pairs=" << c.pairs_examined;
    if (timing) out << "  " << std::fixed << std::setprecision(2) << c.elapsed.count() << " ms";
    out << '\n';
    if (c.witness) out << "        witness: " << c.witness->doc.dump() << '\n';
    Json info = c.details;
    if (!info.empty()) out << "        details: " << info.dump() << '\n';
  }
  const auto failed = std::count_if(rep.checks.begin(), rep.checks.end(), [](const auto& c) { return c.failed(); });
  out << (failed ? std::to_string(failed) + " check(s) failed\n" : "no failing checks\n");
  return out.str();
}

inline std::string render(const AxiomReport& rep, const GroundSet& g) {
  std::ostringstream out;
  for (auto [name, v] : rep.entries()) {
    const char* tag = v->status == Verdict::Pass ? "PASS" : v->status == Verdict::Fail ? "FAIL" : "SKIP";
    out << "  " << tag << "  " << std::left << std::setw(22) << name;
    if (v->status == Verdict::Fail) {
      out << " witness:";
      for (Mask m : v->witness) out << ' ' << g.format(m);
      if (v->exhausted) out << " (" << v->exhausted << " separators tried)";
    }
    if (!v->note.empty()) out << " (" << v->note << ")";
    out << '\n';
  }
  return out.str();
}

inline std::string render(const RingAuditReport& rep, const GroundSet& g) {
  std::ostringstream out;
  for (auto [name, v] : rep.entries()) {
    const char* tag = v->status == Verdict::Pass ? "PASS" : v->status == Verdict::Fail ? "FAIL" : "SKIP";
    out << "  " << tag << "  " << std::left << std::setw(22) << name;
    if (v->status == Verdict::Fail) {
      out << " witness:";
      for (auto i : v->witness) out << ' ' << g.label(i);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace prox::io

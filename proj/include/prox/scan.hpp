#pragma once

#include <prox/relation.hpp>
#include <prox/report.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

namespace prox {

/// Auto evaluates point-generated relations through their element tolerance
/// (a map is continuous iff it preserves related points) and falls back to
/// subset enumeration otherwise. Exhaustive always enumerates subsets. Both
/// report the same lexicographically minimal witness.
enum class Strategy { Auto, Exhaustive };

struct ScanOptions {
  Strategy strategy = Strategy::Auto;
  unsigned threads = 1;
  bool unsafe_caps = false;
};

inline constexpr std::size_t kUnaryCap = 12;
inline constexpr std::size_t kUnaryUnsafeCap = 14;
inline constexpr std::size_t kRectangleCap = 6;
inline constexpr std::size_t kRectangleUnsafeCap = 7;
inline constexpr std::size_t kFullProductCap = 3;

/// Total map X -> Y as a lookup table.
struct UnaryMap {
  std::string name;
  std::vector<std::size_t> table;
};

/// Total map A x B -> C; (i,j) is stored at i*cols + j.
struct BinaryMap {
  std::string name;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> table;

  std::size_t at(std::size_t i, std::size_t j) const { return table[i * cols + j]; }
};

namespace detail {

struct ScanHit {
  bool failed = false;
  std::vector<Mask> witness;
  std::uint64_t pairs = 0;
};

using Clock = std::chrono::steady_clock;

/// Runs body(worker, stride) on `threads` workers; each worker walks the
/// outer index set {worker+1, worker+1+stride, ...} in ascending order.
template <typename Body>
void run_workers(unsigned threads, Body&& body) {
  if (threads <= 1) {
    body(0U, 1U);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back([&, t] { body(t, threads); });
  for (auto& th : pool) th.join();
}

/// Min-reduce per-worker hits; pair counts are summed.
inline ScanHit merge_hits(const std::vector<ScanHit>& hits) {
  ScanHit out;
  for (const auto& h : hits) {
    out.pairs += h.pairs;
    if (h.failed && (!out.failed || h.witness < out.witness)) {
      out.failed = true;
      out.witness = h.witness;
    }
  }
  return out;
}

inline void validate_unary(const ProximityRelation& src, const ProximityRelation& dst, const UnaryMap& f) {
  if (f.table.size() != src.size())
    throw InputError("map '" + f.name + "' is not total: " + std::to_string(f.table.size()) + " of " +
                     std::to_string(src.size()) + " elements mapped");
  for (auto v : f.table)
    if (v >= dst.size()) throw InputError("map '" + f.name + "' sends an element out of range");
}

inline void validate_binary(const ProximityRelation& a, const ProximityRelation& b, const ProximityRelation& c,
                            const BinaryMap& f) {
  if (f.rows != a.size() || f.cols != b.size() || f.table.size() != f.rows * f.cols)
    throw InputError("map '" + f.name + "' does not match its domain");
  for (auto v : f.table)
    if (v >= c.size()) throw InputError("map '" + f.name + "' sends a pair out of range");
}

inline std::vector<Mask> image_table(const std::vector<std::size_t>& f, std::size_t n) {
  std::vector<Mask> img(std::size_t{1} << n, 0);
  for (Mask m = 1; m < img.size(); ++m) img[m] = img[m & (m - 1)] | bit(f[std::countr_zero(m)]);
  return img;
}

inline ScanHit unary_exhaustive(const ProximityRelation& src, const ProximityRelation& dst,
                                const std::vector<std::size_t>& f, unsigned threads) {
  const Mask full = src.ground().full();
  const auto img = image_table(f, src.size());
  std::vector<ScanHit> hits(std::max(1U, threads));
  run_workers(threads, [&](unsigned t, unsigned stride) {
    ScanHit& h = hits[t];
    for (Mask w = 1 + t; w <= full; w += stride)
      for (Mask k = 1; k <= full; ++k) {
        if (!src.near_bits(w, k)) continue;
        ++h.pairs;
        if (!h.failed && !dst.near_bits(img[w], img[k])) {
          h.failed = true;
          h.witness = {w, k};
        }
      }
  });
  return merge_hits(hits);
}

/// Point-generated source and target: continuity is preservation of related
/// points. On failure the minimal subset witness is recovered directly: for
/// a given W some K fails iff some k near W lands outside the neighbourhood
/// of f(W).
inline ScanHit unary_reduced(const ProximityRelation& src, const ProximityRelation& dst,
                             const std::vector<std::size_t>& f) {
  ScanHit h;
  const std::size_t n = src.size();
  bool broken = false;
  for (std::size_t a = 0; a < n; ++a)
    for_each_bit(src.related(a), [&](std::size_t b) {
      ++h.pairs;
      broken = broken || !contains(dst.related(f[a]), f[b]);
    });
  if (!broken) return h;
  const Mask full = src.ground().full();
  for (Mask w = 1; w <= full; ++w) {
    const Mask nw = src.neighborhood(w);
    const Mask forbidden = dst.neighborhood(image(w, f));
    bool exists = false;
    for_each_bit(nw, [&](std::size_t k) { exists = exists || !contains(forbidden, f[k]); });
    if (!exists) continue;
    for (Mask k = 1; k <= full; ++k)
      if ((k & nw) && (image(k, f) & forbidden) == 0) {
        h.failed = true;
        h.witness = {w, k};
        return h;
      }
  }
  return h;
}

inline Mask rect_image(const BinaryMap& f, Mask a, Mask b) {
  Mask out = 0;
  for_each_bit(a, [&](std::size_t i) { for_each_bit(b, [&](std::size_t j) { out |= bit(f.at(i, j)); }); });
  return out;
}

inline std::vector<std::vector<Mask>> near_lists(const ProximityRelation& rel) {
  const Mask full = rel.ground().full();
  std::vector<std::vector<Mask>> out(std::size_t{full} + 1);
  for (Mask a = 1; a <= full; ++a)
    for (Mask b = 1; b <= full; ++b)
      if (rel.near_bits(a, b)) out[a].push_back(b);
  return out;
}

inline ScanHit binary_exhaustive(const ProximityRelation& ra, const ProximityRelation& rb,
                                 const ProximityRelation& rc, const BinaryMap& f, unsigned threads) {
  const Mask fa = ra.ground().full(), fb = rb.ground().full();
  const std::size_t wb = std::size_t{fb} + 1;
  std::vector<Mask> img((std::size_t{fa} + 1) * wb, 0);
  for (std::size_t i = 0; i < ra.size(); ++i) {
    Mask* row = &img[bit(i) * wb];
    for (Mask b = 1; b <= fb; ++b) row[b] = row[b & (b - 1)] | bit(f.at(i, std::countr_zero(b)));
  }
  for (Mask a = 1; a <= fa; ++a) {
    const Mask rest = a & (a - 1);
    if (rest == 0) continue;
    const Mask low = a & ~rest;
    for (Mask b = 1; b <= fb; ++b) img[a * wb + b] = img[rest * wb + b] | img[low * wb + b];
  }
  const auto la = near_lists(ra);
  const auto lb = near_lists(rb);
  std::vector<ScanHit> hits(std::max(1U, threads));
  run_workers(threads, [&](unsigned t, unsigned stride) {
    ScanHit& h = hits[t];
    for (Mask a1 = 1 + t; a1 <= fa; a1 += stride)
      for (Mask b1 = 1; b1 <= fb; ++b1) {
        h.pairs += std::uint64_t{la[a1].size()} * lb[b1].size();
        if (h.failed) continue;
        const Mask c1 = img[a1 * wb + b1];
        for (Mask a2 : la[a1]) {
          for (Mask b2 : lb[b1])
            if (!rc.near_bits(c1, img[a2 * wb + b2])) {
              h.failed = true;
              h.witness = {a1, b1, a2, b2};
              break;
            }
          if (h.failed) break;
        }
      }
  });
  return merge_hits(hits);
}

inline ScanHit binary_reduced(const ProximityRelation& ra, const ProximityRelation& rb, const ProximityRelation& rc,
                              const BinaryMap& f) {
  ScanHit h;
  bool broken = false;
  for (std::size_t a1 = 0; a1 < ra.size(); ++a1)
    for_each_bit(ra.related(a1), [&](std::size_t a2) {
      for (std::size_t b1 = 0; b1 < rb.size(); ++b1)
        for_each_bit(rb.related(b1), [&](std::size_t b2) {
          ++h.pairs;
          broken = broken || !contains(rc.related(f.at(a1, b1)), f.at(a2, b2));
        });
    });
  if (!broken) return h;
  const Mask fa = ra.ground().full(), fb = rb.ground().full();
  for (Mask a1 = 1; a1 <= fa; ++a1)
    for (Mask b1 = 1; b1 <= fb; ++b1) {
      const Mask forbidden = rc.neighborhood(rect_image(f, a1, b1));
      const Mask na = ra.neighborhood(a1), nb = rb.neighborhood(b1);
      bool exists = false;
      for_each_bit(na, [&](std::size_t a2) {
        for_each_bit(nb, [&](std::size_t b2) { exists = exists || !contains(forbidden, f.at(a2, b2)); });
      });
      if (!exists) continue;
      for (Mask a2 = 1; a2 <= fa; ++a2) {
        if ((a2 & na) == 0) continue;
        Mask columns = 0;
        for_each_bit(nb, [&](std::size_t b2) {
          if ((rect_image(f, a2, bit(b2)) & forbidden) == 0) columns |= bit(b2);
        });
        if (columns == 0) continue;
        for (Mask b2 = 1; b2 <= fb; ++b2)
          if ((b2 & nb) && (rect_image(f, a2, b2) & forbidden) == 0) {
            h.failed = true;
            h.witness = {a1, b1, a2, b2};
            return h;
          }
      }
    }
  return h;
}

inline Witness pair_witness(const std::string& map, const GroundSet& src, const GroundSet& dst, Mask w, Mask k,
                            const std::vector<std::size_t>& f) {
  Witness out;
  out.map = map;
  out.kind = "pair";
  out.sets = {w, k};
  out.doc["map"] = map;
  out.doc["kind"] = "pair";
  out.doc["W"] = src.labels_of(w);
  out.doc["K"] = src.labels_of(k);
  out.doc["image_W"] = dst.labels_of(image(w, f));
  out.doc["image_K"] = dst.labels_of(image(k, f));
  return out;
}

inline Witness rectangle_witness(const std::string& map, const GroundSet& ga, const GroundSet& gb,
                                 const GroundSet& gc, const std::vector<Mask>& s, const BinaryMap& f) {
  Witness out;
  out.map = map;
  out.kind = "rectangle";
  out.sets = s;
  out.doc["map"] = map;
  out.doc["kind"] = "rectangle";
  out.doc["left"] = Json::array({ga.labels_of(s[0]), gb.labels_of(s[1])});
  out.doc["right"] = Json::array({ga.labels_of(s[2]), gb.labels_of(s[3])});
  out.doc["image_left"] = gc.labels_of(rect_image(f, s[0], s[1]));
  out.doc["image_right"] = gc.labels_of(rect_image(f, s[2], s[3]));
  return out;
}

inline double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

}  // namespace detail

/// Proximal continuity of f: X -> Y, i.e. W near K implies f(W) near f(K)
/// for every pair of nonempty subsets.
inline CheckResult check_pro_con(const ProximityRelation& x, const ProximityRelation& y, const UnaryMap& f,
                                 const ScanOptions& opt = {}) {
  detail::validate_unary(x, y, f);
  const auto t0 = detail::Clock::now();
  detail::ScanHit hit;
  if (opt.strategy == Strategy::Auto && x.point_generated() && y.point_generated()) {
    hit = detail::unary_reduced(x, y, f.table);
  } else {
    const std::size_t cap = opt.unsafe_caps ? kUnaryUnsafeCap : kUnaryCap;
    if (x.size() > cap)
      throw CapError("continuity scan of '" + f.name + "' needs ground size <= " + std::to_string(cap));
    hit = detail::unary_exhaustive(x, y, f.table, opt.threads);
  }
  CheckResult r;
  r.name = f.name;
  r.pairs_examined = hit.pairs;
  if (hit.failed) {
    r.verdict = Verdict::Fail;
    r.witness = detail::pair_witness(f.name, x.ground(), y.ground(), hit.witness[0], hit.witness[1], f.table);
  }
  r.elapsed = std::chrono::duration<double, std::milli>(detail::ms_since(t0));
  return r;
}

/// Continuity of f: A x B -> C over rectangle pairs: A1 near A2 and B1 near
/// B2 imply f(A1 x B1) near f(A2 x B2). Witness order is (A1,B1,A2,B2).
inline CheckResult check_pro_con_rectangles(const ProximityRelation& ra, const ProximityRelation& rb,
                                            const ProximityRelation& rc, const BinaryMap& f,
                                            const ScanOptions& opt = {}) {
  detail::validate_binary(ra, rb, rc, f);
  const auto t0 = detail::Clock::now();
  detail::ScanHit hit;
  if (opt.strategy == Strategy::Auto && ra.point_generated() && rb.point_generated() && rc.point_generated()) {
    hit = detail::binary_reduced(ra, rb, rc, f);
  } else {
    const std::size_t cap = opt.unsafe_caps ? kRectangleUnsafeCap : kRectangleCap;
    if (std::max(ra.size(), rb.size()) > cap)
      throw CapError("rectangle scan of '" + f.name + "' needs carriers of size <= " + std::to_string(cap) +
                     (opt.unsafe_caps ? "" : " (raise with unsafe caps)"));
    hit = detail::binary_exhaustive(ra, rb, rc, f, opt.threads);
  }
  CheckResult r;
  r.name = f.name;
  r.pairs_examined = hit.pairs;
  if (hit.failed) {
    r.verdict = Verdict::Fail;
    r.witness = detail::rectangle_witness(f.name, ra.ground(), rb.ground(), rc.ground(), hit.witness, f);
  }
  r.elapsed = std::chrono::duration<double, std::milli>(detail::ms_since(t0));
  return r;
}

/// Continuity of f: A x B -> C over every subset of A x B under the product
/// relation. Carriers must have at most three elements.
inline CheckResult check_pro_con_full_product(const ProximityRelation& ra, const ProximityRelation& rb,
                                              const ProximityRelation& rc, const BinaryMap& f,
                                              const ScanOptions& opt = {}) {
  detail::validate_binary(ra, rb, rc, f);
  if (std::max(ra.size(), rb.size()) > kFullProductCap)
    throw CapError("full-product mode needs carriers of size <= " + std::to_string(kFullProductCap));
  const auto product = product_relation(ra, rb).as_relation();
  UnaryMap g{f.name, f.table};
  return check_pro_con(product, rc, g, opt);
}

/// Proximal homeomorphism: f bijective, f and its inverse both continuous.
inline CheckResult check_pro_homo(const ProximityRelation& x, const ProximityRelation& y, const UnaryMap& f,
                                  const ScanOptions& opt = {}) {
  detail::validate_unary(x, y, f);
  const auto t0 = detail::Clock::now();
  CheckResult r;
  r.name = f.name;
  auto finish = [&](CheckResult& res) -> CheckResult& {
    res.elapsed = std::chrono::duration<double, std::milli>(detail::ms_since(t0));
    return res;
  };
  if (x.size() != y.size()) {
    r.verdict = Verdict::Fail;
    Witness w;
    w.map = f.name;
    w.kind = "not-bijective";
    w.doc["map"] = f.name;
    w.doc["kind"] = "not-bijective";
    w.doc["domain_size"] = x.size();
    w.doc["codomain_size"] = y.size();
    r.witness = std::move(w);
    return finish(r);
  }
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = a + 1; b < x.size(); ++b)
      if (f.table[a] == f.table[b]) {
        r.verdict = Verdict::Fail;
        Witness w;
        w.map = f.name;
        w.kind = "not-injective";
        w.points = {a, b};
        w.doc["map"] = f.name;
        w.doc["kind"] = "not-injective";
        w.doc["x"] = x.ground().label(a);
        w.doc["y"] = x.ground().label(b);
        w.doc["image"] = y.ground().label(f.table[a]);
        r.witness = std::move(w);
        return finish(r);
      }
  UnaryMap inverse{f.name + "^-1", std::vector<std::size_t>(y.size())};
  for (std::size_t a = 0; a < x.size(); ++a) inverse.table[f.table[a]] = a;

  auto forward = check_pro_con(x, y, f, opt);
  r.pairs_examined += forward.pairs_examined;
  if (forward.failed()) {
    r.verdict = Verdict::Fail;
    r.witness = std::move(forward.witness);
    r.witness->doc["leg"] = "forward";
    return finish(r);
  }
  auto backward = check_pro_con(y, x, inverse, opt);
  r.pairs_examined += backward.pairs_examined;
  if (backward.failed()) {
    r.verdict = Verdict::Fail;
    r.witness = std::move(backward.witness);
    r.witness->doc["leg"] = "inverse";
  }
  return finish(r);
}

}  // namespace prox

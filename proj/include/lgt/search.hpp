#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <tuple>
#include <utility>
#include <vector>

#include "lgt/error.hpp"
#include "lgt/graph.hpp"
#include "lgt/linegraph.hpp"
#include "lgt/transplant.hpp"

namespace lgt {

struct SearchConfig {
  int n = 1;
  int k = 1;
  bool allow_nloops = true;
  bool allow_dloops = true;
  std::optional<std::vector<long>> trace;  // required trace vector
  int lfilter = 4;                         // word length of the bucketing fingerprint
  std::size_t max_pairs = std::numeric_limits<std::size_t>::max();
  double time_budget_seconds = std::numeric_limits<double>::infinity();
  bool check_line_isomorphism = true;
  std::uint64_t seed = 1;

  void require_valid() const {
    if (n < 1 || k < 1) throw PreconditionViolated("search: n and k must be positive");
    if (lfilter < 1) throw PreconditionViolated("search: lfilter must be at least 1");
    if (n > 12) throw PreconditionViolated("search: n above 12 is out of reach for exhaustive canonical forms");
  }
};

struct PairRecord {
  CanonicalKey key_a;
  CanonicalKey key_b;
  ColoredGraph a;
  ColoredGraph b;
  TransplantCertificate certificate;
  std::optional<bool> line_graph_isomorphic;
  bool certificate_verified = false;  // verify_line_certificate on the emitted T_L
};

// Every labeled signed involution on n vertices (one color's possible edge
// structure), honoring the loop constraints. Deterministic order.
inline std::vector<SignedPermutation> color_structures(int n, bool allow_nloops, bool allow_dloops) {
  std::vector<SignedPermutation> out;
  std::vector<int> img(static_cast<std::size_t>(n), -1);
  std::vector<std::int8_t> sgn(static_cast<std::size_t>(n), 1);
  std::function<void(int)> rec = [&](int v) {
    while (v < n && img[static_cast<std::size_t>(v)] != -1) ++v;
    if (v == n) {
      out.emplace_back(img, sgn);
      return;
    }
    auto vi = static_cast<std::size_t>(v);
    for (int w = v + 1; w < n; ++w) {
      auto wi = static_cast<std::size_t>(w);
      if (img[wi] != -1) continue;
      img[vi] = w, img[wi] = v;
      rec(v + 1);
      img[vi] = -1, img[wi] = -1;
    }
    img[vi] = v;
    if (allow_nloops) {
      sgn[vi] = 1;
      rec(v + 1);
    }
    if (allow_dloops) {
      sgn[vi] = -1;
      rec(v + 1);
    }
    sgn[vi] = 1;
    img[vi] = -1;
  };
  rec(0);
  return out;
}

namespace detail {

inline bool is_identity_canonical(const ColoredGraph& g) {
  std::vector<int> order(static_cast<std::size_t>(g.n()));
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::vector<std::int8_t> bytes;
  emit_relabeled(g, order, bytes);
  return CanonicalKey(std::move(bytes)) == canonical_form(g);
}

// Vertex-colored weighted digraph isomorphism between two L^vc by
// backtracking over color-preserving bijections.
inline bool vc_isomorphic(const VcLineGraph& x, const VcLineGraph& y) {
  const std::size_t m = x.indexing.size();
  if (m != y.indexing.size() || x.indexing.block_sizes() != y.indexing.block_sizes()) return false;
  IntMatrix mx(m, m), my(m, m);
  for (const auto& a : x.adjacency) mx += a;
  for (const auto& a : y.adjacency) my += a;
  std::vector<int> map(m, -1);
  std::vector<bool> used(m, false);
  std::function<bool(std::size_t)> rec = [&](std::size_t e) {
    if (e == m) return true;
    for (std::size_t f = 0; f < m; ++f) {
      if (used[f] || x.vertex_colors[e] != y.vertex_colors[f]) continue;
      bool ok = mx(e, e) == my(f, f);
      for (std::size_t p = 0; p < e && ok; ++p) {
        auto q = static_cast<std::size_t>(map[p]);
        ok = mx(e, p) == my(f, q) && mx(p, e) == my(q, f);
      }
      if (!ok) continue;
      map[e] = static_cast<int>(f);
      used[f] = true;
      if (rec(e + 1)) return true;
      used[f] = false;
      map[e] = -1;
    }
    return false;
  };
  return rec(0);
}

}  // namespace detail

inline bool line_graphs_isomorphic(const ColoredGraph& g, const ColoredGraph& h) {
  return detail::vc_isomorphic(build_vc(g), build_vc(h));
}

// Canonical representatives of all graphs allowed by cfg, one per
// isomorphism class, sorted by canonical key. The first color is restricted
// to structures that are already canonical on their own: the canonical
// representative of any class has that property, since the key compares the
// first color's matrix first.
inline std::vector<ColoredGraph> enumerate(const SearchConfig& cfg) {
  cfg.require_valid();
  const auto structures = color_structures(cfg.n, cfg.allow_nloops, cfg.allow_dloops);
  std::vector<SignedPermutation> first;
  for (const auto& s : structures)
    if (detail::is_identity_canonical(ColoredGraph::from_involutions({s}))) first.push_back(s);

  std::map<CanonicalKey, ColoredGraph> reps;
  std::vector<SignedPermutation> colors(static_cast<std::size_t>(cfg.k));
  std::function<void(int)> rec = [&](int c) {
    if (c == cfg.k) {
      auto g = ColoredGraph::from_involutions(colors);
      if (cfg.trace && trace_vector(g) != *cfg.trace) return;
      VertexPermutation phi;
      auto key = canonical_form(g, &phi);
      if (!reps.count(key)) reps.emplace(key, relabel(g, phi));
      return;
    }
    for (const auto& s : (c == 0 ? first : structures)) {
      colors[static_cast<std::size_t>(c)] = s;
      rec(c + 1);
    }
  };
  rec(0);
  std::vector<ColoredGraph> out;
  out.reserve(reps.size());
  for (auto& [key, g] : reps) out.push_back(std::move(g));
  return out;
}

// Isomorphism-invariant trace data: the trace vector followed by the traces
// of all word classes up to length lfilter.
inline std::vector<long> trace_fingerprint(const ColoredGraph& g, int lfilter) {
  std::vector<long> fp;
  const auto& inv = g.involutions();
  for_each_cyclic_word(g.k(), lfilter, true, [&](const Word& w) {
    SignedPermutation p = inv[static_cast<std::size_t>(w[0])];
    for (std::size_t i = 1; i < w.size(); ++i) p = p * inv[static_cast<std::size_t>(w[i])];
    fp.push_back(p.trace());
    return true;
  });
  return fp;
}

// Non-isomorphic transplantable pairs among the canonical representatives.
// Candidates are bucketed by trace fingerprint, since graphs whose word
// traces differ are never transplantable.
inline std::vector<PairRecord> find_transplantable_pairs(const SearchConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const auto reps = enumerate(cfg);
  std::map<std::vector<long>, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < reps.size(); ++i) buckets[trace_fingerprint(reps[i], cfg.lfilter)].push_back(i);

  DecideOptions opts;
  opts.seed = cfg.seed;
  opts.prefilter_length = std::max(6, cfg.lfilter);
  auto out_of_time = [&] {
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
    return dt.count() > cfg.time_budget_seconds;
  };

  std::vector<PairRecord> records;
  auto scan = [&] {
    for (const auto& [fp, members] : buckets)
      for (std::size_t x = 0; x < members.size(); ++x)
        for (std::size_t y = x + 1; y < members.size(); ++y) {
          if (records.size() >= cfg.max_pairs || out_of_time()) return;
          const auto& a = reps[members[x]];
          const auto& b = reps[members[y]];
          if (isomorphism(a, b)) throw ConsistencyViolated("search: distinct canonical representatives are isomorphic");
          auto cert = decide_transplantable(a, b, opts);
          if (!cert.transplantable()) continue;
          PairRecord rec{canonical_form(a), canonical_form(b), a, b, std::move(cert), std::nullopt, false};
          rec.certificate_verified = verify_line_certificate(*rec.certificate.line_transplantation, a, b);
          if (cfg.check_line_isomorphism) rec.line_graph_isomorphic = line_graphs_isomorphic(a, b);
          records.push_back(std::move(rec));
        }
  };
  scan();
  std::sort(records.begin(), records.end(), [](const PairRecord& p, const PairRecord& q) {
    return std::tie(p.key_a, p.key_b) < std::tie(q.key_a, q.key_b);
  });
  return records;
}

}  // namespace lgt

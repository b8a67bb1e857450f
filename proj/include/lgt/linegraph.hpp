#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lgt/error.hpp"
#include "lgt/graph.hpp"
#include "lgt/matrix.hpp"

// Vertex-colored and edge-colored directed line graphs.
//
// Line-graph vertices are the edges of G with its D-loops removed, grouped by
// color. Inside each color block links come first (by endpoint pair) and
// N-loops after (by vertex). Entry [A]_{e f} is the weight of the directed
// edge e -> f.

namespace lgt {

struct EdgeIndexing {
  std::vector<ColoredEdge> edges;   // line-graph vertex i is edges[i]
  std::vector<std::size_t> offset;  // color c occupies [offset[c], offset[c+1])

  std::size_t size() const noexcept { return edges.size(); }
  int colors() const noexcept { return static_cast<int>(offset.size()) - 1; }
  std::size_t count(int c) const { return offset[static_cast<std::size_t>(c) + 1] - offset[static_cast<std::size_t>(c)]; }
  std::vector<std::size_t> block_sizes() const {
    std::vector<std::size_t> s;
    for (int c = 0; c < colors(); ++c) s.push_back(count(c));
    return s;
  }
};

inline EdgeIndexing index_edges(const ColoredGraph& g) {
  g.require_valid();
  EdgeIndexing idx;
  idx.offset.assign(static_cast<std::size_t>(g.k()) + 1, 0);
  // ColoredGraph keeps its edges sorted by (color, kind, endpoints), which
  // already is the line-graph order once D-loops are dropped.
  for (const auto& e : g.edges()) {
    if (e.kind == EdgeKind::dloop) continue;
    idx.edges.push_back(e);
    ++idx.offset[static_cast<std::size_t>(e.color) + 1];
  }
  for (std::size_t c = 1; c < idx.offset.size(); ++c) idx.offset[c] += idx.offset[c - 1];
  return idx;
}

struct VcLineGraph {
  EdgeIndexing indexing;
  std::vector<int> vertex_colors;
  std::vector<IntMatrix> adjacency;  // one n_L x n_L matrix per color
};

struct EcLineGraph {
  EdgeIndexing indexing;
  std::vector<std::pair<int, int>> colors;  // {c, c~} with c < c~, lexicographic
  std::vector<IntMatrix> adjacency;         // one matrix per color pair
};

struct IncidenceData {
  std::int64_t weight = 1;
  IntMatrix b;                      // n x n_L
  std::vector<IntMatrix> projector;  // C^c, diagonal n_L x n_L
};

inline IncidenceData incidence(const ColoredGraph& g, std::int64_t w, const EdgeIndexing& idx) {
  const auto n = static_cast<std::size_t>(g.n());
  IncidenceData out;
  out.weight = w;
  out.b = IntMatrix(n, idx.size());
  for (std::size_t e = 0; e < idx.size(); ++e) {
    const auto& edge = idx.edges[e];
    if (edge.kind == EdgeKind::nloop) {
      out.b(static_cast<std::size_t>(edge.u), e) = w;
    } else {
      out.b(static_cast<std::size_t>(edge.u), e) = 1;
      out.b(static_cast<std::size_t>(edge.v), e) = 1;
    }
  }
  for (int c = 0; c < g.k(); ++c) {
    IntMatrix proj(idx.size(), idx.size());
    for (std::size_t e = idx.offset[static_cast<std::size_t>(c)]; e < idx.offset[static_cast<std::size_t>(c) + 1]; ++e)
      proj(e, e) = 1;
    out.projector.push_back(std::move(proj));
  }
  return out;
}

inline IncidenceData incidence(const ColoredGraph& g, std::int64_t w) { return incidence(g, w, index_edges(g)); }

namespace detail {

// The defining case analysis: weight 2 if e shares all its vertices with f,
// weight 1 if e is a link sharing exactly one vertex with f.
inline std::vector<IntMatrix> vc_by_cases(const ColoredGraph& g, const EdgeIndexing& idx) {
  const std::size_t m = idx.size();
  std::vector<IntMatrix> out(static_cast<std::size_t>(g.k()), IntMatrix(m, m));
  auto contains = [](const ColoredEdge& f, int x) { return f.u == x || f.v == x; };
  for (std::size_t e = 0; e < m; ++e) {
    const auto& ee = idx.edges[e];
    auto& a = out[static_cast<std::size_t>(ee.color)];
    for (std::size_t f = 0; f < m; ++f) {
      if (f == e) continue;
      const auto& ff = idx.edges[f];
      int shared = 0, total = 0;
      if (ee.kind == EdgeKind::link) {
        total = 2;
        shared = int(contains(ff, ee.u)) + int(contains(ff, ee.v));
      } else {
        total = 1;
        shared = int(contains(ff, ee.u));
      }
      if (shared == total)
        a(e, f) = 2;
      else if (ee.kind == EdgeKind::link && shared == 1)
        a(e, f) = 1;
    }
  }
  return out;
}

// C^c (B_2^T B_1 - 2 I).
inline std::vector<IntMatrix> vc_by_incidence(const IncidenceData& b1, const IncidenceData& b2) {
  const std::size_t m = b1.b.cols();
  IntMatrix core = b2.b.transpose() * b1.b - IntMatrix::identity(m) * std::int64_t{2};
  std::vector<IntMatrix> out;
  for (const auto& proj : b1.projector) out.push_back(proj * core);
  return out;
}

}  // namespace detail

// Builds L^vc(G). The case-analysis matrices are cross-checked against the
// incidence factorization; a disagreement raises ConsistencyViolated.
inline VcLineGraph build_vc(const ColoredGraph& g) {
  VcLineGraph lg;
  lg.indexing = index_edges(g);
  for (const auto& e : lg.indexing.edges) lg.vertex_colors.push_back(e.color);
  lg.adjacency = detail::vc_by_cases(g, lg.indexing);
  auto via_incidence = detail::vc_by_incidence(incidence(g, 1, lg.indexing), incidence(g, 2, lg.indexing));
  if (via_incidence != lg.adjacency) throw ConsistencyViolated("build_vc: case formula and incidence factorization disagree");
  return lg;
}

inline EcLineGraph build_ec(const VcLineGraph& vc) {
  EcLineGraph lg;
  lg.indexing = vc.indexing;
  const int k = vc.indexing.colors();
  const std::size_t m = vc.indexing.size();
  for (int c = 0; c < k; ++c)
    for (int d = c + 1; d < k; ++d) {
      IntMatrix a(m, m);
      for (std::size_t e = 0; e < m; ++e)
        for (std::size_t f = 0; f < m; ++f) {
          int ce = vc.vertex_colors[e], cf = vc.vertex_colors[f];
          bool pair = (ce == c && cf == d) || (ce == d && cf == c);
          if (pair)
            a(e, f) = vc.adjacency[static_cast<std::size_t>(c)](e, f) + vc.adjacency[static_cast<std::size_t>(d)](e, f);
        }
      lg.colors.emplace_back(c, d);
      lg.adjacency.push_back(std::move(a));
    }
  return lg;
}

inline EcLineGraph build_ec(const ColoredGraph& g) { return build_ec(build_vc(g)); }

// Index of the pair {c, d} in EcLineGraph::colors.
inline std::size_t pair_index(int k, int c, int d) {
  if (c > d) std::swap(c, d);
  if (c < 0 || d >= k || c == d) throw InvalidColor("invalid color pair");
  std::size_t idx = 0;
  for (int a = 0; a < c; ++a) idx += static_cast<std::size_t>(k - 1 - a);
  return idx + static_cast<std::size_t>(d - c - 1);
}

// Checks A^c_G = B_1 C^c B_2^T - I and A^c_{L^vc} = C^c (B_2^T B_1 - 2 I).
inline bool verify_decomposition(const ColoredGraph& g) {
  g.require_valid();
  const auto idx = index_edges(g);
  const auto b1 = incidence(g, 1, idx);
  const auto b2 = incidence(g, 2, idx);
  const auto n = static_cast<std::size_t>(g.n());
  const auto by_cases = detail::vc_by_cases(g, idx);
  const auto by_incidence = detail::vc_by_incidence(b1, b2);
  const IntMatrix b2t = b2.b.transpose();
  for (int c = 0; c < g.k(); ++c) {
    IntMatrix lhs = adjacency_matrix(g, c);
    IntMatrix rhs = b1.b * b1.projector[static_cast<std::size_t>(c)] * b2t - IntMatrix::identity(n);
    if (lhs != rhs) return false;
    if (by_cases[static_cast<std::size_t>(c)] != by_incidence[static_cast<std::size_t>(c)]) return false;
  }
  return true;
}

}  // namespace lgt

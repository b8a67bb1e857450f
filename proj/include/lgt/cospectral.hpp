#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "lgt/error.hpp"
#include "lgt/graph.hpp"
#include "lgt/linalg.hpp"
#include "lgt/linegraph.hpp"
#include "lgt/transplant.hpp"

namespace lgt {

enum class Flavor { vc, ec };

inline const char* to_string(Flavor f) { return f == Flavor::vc ? "vc" : "ec"; }

// One rational weight per line-graph color: per color of G for the
// vertex-colored flavor, per color pair (EcLineGraph::colors order) for the
// edge-colored one.
struct WeightAssignment {
  Flavor flavor = Flavor::vc;
  std::vector<Rational> weights;
};

struct WeightedDigraph {
  std::size_t vertices = 0;
  ExactMatrix adjacency;
  std::string source_fingerprint;
  WeightAssignment weights;
  Polynomial char_poly;
};

inline ExactMatrix weighted_matrix(const std::vector<IntMatrix>& color_matrices, const std::vector<Rational>& weights) {
  if (weights.size() != color_matrices.size())
    throw MissingWeight("weighted_matrix: expected " + std::to_string(color_matrices.size()) + " weights, got " +
                        std::to_string(weights.size()));
  const std::size_t m = color_matrices.empty() ? 0 : color_matrices.front().rows();
  ExactMatrix out(m, m);
  for (std::size_t c = 0; c < color_matrices.size(); ++c) {
    if (weights[c] == 0) continue;
    const auto& a = color_matrices[c];
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (a(i, j) != 0) out(i, j) += weights[c] * Rational(static_cast<long>(a(i, j)));
  }
  return out;
}

inline ExactMatrix weighted_matrix(const VcLineGraph& lg, const std::vector<Rational>& weights) {
  return weighted_matrix(lg.adjacency, weights);
}
inline ExactMatrix weighted_matrix(const EcLineGraph& lg, const std::vector<Rational>& weights) {
  return weighted_matrix(lg.adjacency, weights);
}

inline WeightedDigraph make_weighted_digraph(const ColoredGraph& g, const WeightAssignment& wts) {
  auto vc = build_vc(g);
  WeightedDigraph d;
  d.adjacency = wts.flavor == Flavor::vc ? weighted_matrix(vc, wts.weights) : weighted_matrix(build_ec(vc), wts.weights);
  d.vertices = d.adjacency.rows();
  d.source_fingerprint = labeled_fingerprint(g);
  d.weights = wts;
  d.char_poly = char_poly(d.adjacency);
  return d;
}

struct CospectralPair {
  WeightedDigraph first;
  WeightedDigraph second;
  ExactMatrix line_transplantation;  // T_L: first.adjacency * T_L = T_L * second.adjacency
};

// Weighted line graphs of a transplantable pair together with the
// block-diagonal T_L that makes them similar for every choice of weights.
inline CospectralPair generate_cospectral_pair(const ColoredGraph& g, const ColoredGraph& h, const WeightAssignment& wts,
                                               const DecideOptions& opts = {}) {
  auto cert = decide_transplantable(g, h, opts);
  if (!cert.transplantable()) throw NotTransplantable("generate_cospectral_pair: graphs are not transplantable");
  CospectralPair out{make_weighted_digraph(g, wts), make_weighted_digraph(h, wts),
                     cert.line_transplantation ? *cert.line_transplantation
                                               : build_line_transplantation(*cert.witness, g, h)};
  if (out.first.adjacency * out.line_transplantation != out.line_transplantation * out.second.adjacency)
    throw ConsistencyViolated("generate_cospectral_pair: T_L does not intertwine the weighted matrices");
  return out;
}

inline bool verify_cospectral(const WeightedDigraph& a, const WeightedDigraph& b) {
  if (a.vertices != b.vertices) throw DimensionMismatch("verify_cospectral: digraphs differ in size");
  return char_poly(a.adjacency) == char_poly(b.adjacency);
}

}  // namespace lgt

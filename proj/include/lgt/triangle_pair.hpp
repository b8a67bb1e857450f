#pragma once

// Reference data for the four-triangle tiled pair with colors s, w, z: the
// source graph G, the printed transplantation matrix T (with T^T = 3 T^{-1}),
// and the printed line-graph matrices. Line-graph vertex order is
// 1s 2s 3w 4w 5z 6z.

#include <vector>

#include "lgt/graph.hpp"
#include "lgt/matrix.hpp"

namespace lgt::triangle_pair {

// s: link 1-2, D-loop 3, N-loop 4
// w: link 1-3, N-loop 2, D-loop 4
// z: link 1-4, D-loop 2, N-loop 3
inline ColoredGraph source_graph() {
  return ColoredGraph(4, 3,
                      {
                          ColoredEdge::link(0, 0, 1), ColoredEdge::dloop(0, 2), ColoredEdge::nloop(0, 3),
                          ColoredEdge::link(1, 0, 2), ColoredEdge::nloop(1, 1), ColoredEdge::dloop(1, 3),
                          ColoredEdge::link(2, 0, 3), ColoredEdge::dloop(2, 1), ColoredEdge::nloop(2, 2),
                      },
                      {"s", "w", "z"});
}

inline ExactMatrix transplantation() {
  return ExactMatrix{{0, 1, 1, 1}, {1, 0, 1, -1}, {1, -1, 0, 1}, {1, 1, -1, 0}};
}

// s*A^s + w*A^w + z*A^z, one matrix per color.
inline std::vector<IntMatrix> adjacency() {
  return {
      IntMatrix{{0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, 1}},
      IntMatrix{{0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, -1}},
      IntMatrix{{0, 0, 0, 1}, {0, -1, 0, 0}, {0, 0, 1, 0}, {1, 0, 0, 0}},
  };
}

// Vertex-colored line graph, per color s, w, z.
inline std::vector<IntMatrix> vc_adjacency() {
  return {
      IntMatrix{{0, 0, 1, 1, 1, 0}, {0, 0, 0, 0, 2, 0}, {0, 0, 0, 0, 0, 0},
                {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}},
      IntMatrix{{0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {1, 0, 0, 0, 1, 1},
                {2, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}},
      IntMatrix{{0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0},
                {0, 0, 0, 0, 0, 0}, {1, 1, 1, 0, 0, 0}, {0, 0, 2, 0, 0, 0}},
  };
}

// Edge-colored line graph, per printed label a = {s,w}, b = {w,z}, c = {s,z}.
struct EcLabel {
  const char* name;
  int first;
  int second;
};
inline std::vector<EcLabel> ec_labels() { return {{"a", 0, 1}, {"b", 1, 2}, {"c", 0, 2}}; }

inline std::vector<IntMatrix> ec_adjacency() {
  return {
      IntMatrix{{0, 0, 1, 1, 0, 0}, {0, 0, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0},
                {2, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}},
      IntMatrix{{0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 1, 1},
                {0, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0}, {0, 0, 2, 0, 0, 0}},
      IntMatrix{{0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 2, 0}, {0, 0, 0, 0, 0, 0},
                {0, 0, 0, 0, 0, 0}, {1, 1, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}},
  };
}

inline ExactMatrix line_transplantation() {
  return ExactMatrix{{1, 1, 0, 0, 0, 0},  {2, -1, 0, 0, 0, 0}, {0, 0, 1, 1, 0, 0},
                     {0, 0, 2, -1, 0, 0}, {0, 0, 0, 0, 1, 1},  {0, 0, 0, 0, 2, -1}};
}

}  // namespace lgt::triangle_pair

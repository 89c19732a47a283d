#ifndef SOLSPACE_EXPANDER_HPP
#define SOLSPACE_EXPANDER_HPP

#include <utility>
#include <vector>

namespace solspace {

// 8-regular multigraph on Z_m x Z_m. Vertex (x, y) has id x*m + y.
// Self-loops and parallel edges are kept as distinct edge slots; a
// self-loop contributes 2 to its vertex's degree.
struct ExpanderGraph {
  int side = 0;                              // m
  std::vector<std::pair<int, int>> edges;    // one entry per edge slot

  int num_vertices() const { return side * side; }
  int num_edges() const { return static_cast<int>(edges.size()); }

  std::vector<int> degrees() const;
  bool connected() const;

  // Dense adjacency with multiplicities; a self-loop adds 2 to A[v][v],
  // so every row sums to the degree.
  std::vector<std::vector<double>> adjacency_matrix() const;
};

// Gabber-Galil construction: each vertex (x, y) is joined to
// (x+y, y), (x, y+x), (x+y+1, y), (x, y+x+1)  (mod m),
// which together with the inverse maps makes the graph 8-regular with
// 4*m^2 edge slots.
ExpanderGraph margulis_expander(int m);

}  // namespace solspace

#endif

#include "solspace/expander.hpp"

#include <numeric>

#include "solspace/errors.hpp"

namespace solspace {

std::vector<int> ExpanderGraph::degrees() const {
  std::vector<int> deg(num_vertices(), 0);
  for (const auto& [u, v] : edges) {
    deg[u] += 1;
    deg[v] += 1;  // a self-loop (u == v) adds 2 in total
  }
  return deg;
}

bool ExpanderGraph::connected() const {
  int n = num_vertices();
  if (n == 0) return true;
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n;
  for (const auto& [u, v] : edges) {
    int ru = find(u), rv = find(v);
    if (ru != rv) {
      parent[ru] = rv;
      --components;
    }
  }
  return components == 1;
}

std::vector<std::vector<double>> ExpanderGraph::adjacency_matrix() const {
  int n = num_vertices();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (const auto& [u, v] : edges) {
    if (u == v) {
      a[u][u] += 2.0;
    } else {
      a[u][v] += 1.0;
      a[v][u] += 1.0;
    }
  }
  return a;
}

ExpanderGraph margulis_expander(int m) {
  if (m < 2) throw InvalidParameter("expander side must be >= 2");
  ExpanderGraph g;
  g.side = m;
  g.edges.reserve(static_cast<size_t>(4) * m * m);
  auto id = [m](int x, int y) { return x * m + y; };
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      int v = id(x, y);
      g.edges.emplace_back(v, id((x + y) % m, y));
      g.edges.emplace_back(v, id(x, (y + x) % m));
      g.edges.emplace_back(v, id((x + y + 1) % m, y));
      g.edges.emplace_back(v, id(x, (y + x + 1) % m));
    }
  }
  return g;
}

}  // namespace solspace

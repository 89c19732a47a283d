#include "solspace/tseitin.hpp"

#include <bit>

#include "solspace/errors.hpp"
#include "solspace/rng.hpp"

namespace solspace {

TseitinInstance tseitin(const ExpanderGraph& graph,
                        const std::vector<bool>& charges) {
  if (static_cast<int>(charges.size()) != graph.num_vertices())
    throw InvalidParameter("charge vector size must match vertex count");
  if (!graph.connected())
    throw UnsupportedInput("tseitin requires a connected graph");

  TseitinInstance inst;
  inst.graph = graph;
  inst.charges = charges;
  inst.cnf.num_vars = graph.num_edges();
  inst.cnf.family = Family::tseitin;

  // Incident non-loop edge variables per vertex (loop variables cancel).
  std::vector<std::vector<int>> incident(graph.num_vertices());
  for (int e = 0; e < graph.num_edges(); ++e) {
    auto [u, v] = graph.edges[e];
    if (u == v) continue;
    incident[u].push_back(e + 1);
    incident[v].push_back(e + 1);
  }

  for (int v = 0; v < graph.num_vertices(); ++v) {
    const std::vector<int>& vars = incident[v];
    int k = static_cast<int>(vars.size());
    bool charge = charges[v];
    if (k == 0) {
      if (charge) {
        // parity of nothing is 0: an odd charge here is the trivially
        // false instance
        inst.cnf.clauses.assign(1, Clause{});
        return inst;
      }
      continue;
    }
    for (unsigned pattern = 0; pattern < (1u << k); ++pattern) {
      bool parity = (std::popcount(pattern) & 1) != 0;
      if (parity == charge) continue;
      Clause c;
      c.reserve(k);
      for (int j = 0; j < k; ++j) {
        bool bit = (pattern >> j) & 1;
        c.push_back(bit ? -vars[j] : vars[j]);
      }
      inst.cnf.clauses.push_back(std::move(c));
    }
  }
  return inst;
}

std::vector<bool> random_charges(int num_vertices, bool odd_total,
                                 uint64_t seed) {
  Rng rng(seed);
  std::vector<bool> charges(num_vertices);
  bool total = false;
  for (int v = 0; v < num_vertices; ++v) {
    charges[v] = rng.coin();
    total = total != charges[v];
  }
  if (total != odd_total && num_vertices > 0) charges[0] = !charges[0];
  return charges;
}

}  // namespace solspace

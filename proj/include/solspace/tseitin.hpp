#ifndef SOLSPACE_TSEITIN_HPP
#define SOLSPACE_TSEITIN_HPP

#include <cstdint>
#include <vector>

#include "solspace/cnf.hpp"
#include "solspace/expander.hpp"

namespace solspace {

// Parity (charge) constraints on the edges of a graph, expanded directly to
// CNF: one Boolean variable per edge slot, and for each vertex the
// 2^(k-1) clauses ruling out every incident-edge assignment of the wrong
// parity (k = number of incident non-loop edge slots).
//
// A self-loop's variable enters its vertex's parity twice and cancels, so
// loop variables end up unconstrained; they are still allocated so that
// variable count equals edge-slot count. Summing all vertex constraints
// therefore cancels every variable, which gives the classic criterion:
// on a connected graph the instance is unsatisfiable iff the total charge
// is odd.
struct TseitinInstance {
  ExpanderGraph graph;
  std::vector<bool> charges;  // one parity bit per vertex
  CnfFormula cnf;             // variable e+1 <-> edge slot e
};

TseitinInstance tseitin(const ExpanderGraph& graph,
                        const std::vector<bool>& charges);

// Random charge vector with the requested total parity (deterministic in
// seed): uniform bits, then vertex 0 adjusted.
std::vector<bool> random_charges(int num_vertices, bool odd_total,
                                 uint64_t seed);

}  // namespace solspace

#endif

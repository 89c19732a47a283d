#ifndef SOLSPACE_LINEARTEST_HPP
#define SOLSPACE_LINEARTEST_HPP

#include <cstdint>
#include <string>

#include "solspace/cnf.hpp"
#include "solspace/solver.hpp"

namespace solspace {

// Outcome of testing a solution set for closure under affine XOR.
struct XorReport {
  long long triples_tested = 0;
  long long violations = 0;
  double violation_rate = 0.0;  // violations / triples_tested
  std::string sampling;         // how the solution pool was gathered
};

// Samples triples (x, y, z) of distinct known solutions and counts how
// often x ^ y ^ z fails to satisfy f. Affine solution sets (xorsat)
// never violate; a high rate certifies the set is not a coset of a
// linear code. The affine form is used rather than x ^ y because the
// solution set need not contain the zero vector.
//
// The pool is the full solution set when num_vars <= 16 and the
// distinct witnesses of a forced-probe sample above that. Triples are
// drawn uniformly without replacement, so each unordered triple is
// tested at most once and degenerate triples (with a repeated member,
// which can never violate) are excluded. Throws InsufficientSample
// when fewer than 3 distinct solutions are found.
XorReport xor_closure_test(const CnfFormula& f, long long triples,
                           uint64_t seed, const SolverOptions& opts = {});

}  // namespace solspace

#endif

#ifndef SOLSPACE_ENUMERATE_HPP
#define SOLSPACE_ENUMERATE_HPP

#include <cstdint>

#include "solspace/cnf.hpp"
#include "solspace/solution_set.hpp"
#include "solspace/solver.hpp"

namespace solspace {

// Collect satisfying assignments by repeated solving with blocking
// clauses. Stops when the formula is exhausted (complete=true) or when
// `cap` models have been found (complete=false). A budget-exhausted
// solver call raises BudgetExhaustedError.
SolutionSet enumerate_solutions(const CnfFormula& f, uint64_t cap,
                                SolverOptions opts = {});

// Direct evaluation over all 2^n assignments. Guarded to num_vars <= 30.
SolutionSet brute_force(const CnfFormula& f);

}  // namespace solspace

#endif

#ifndef SOLSPACE_EXTERNAL_HPP
#define SOLSPACE_EXTERNAL_HPP

#include <string>

#include "solspace/cnf.hpp"
#include "solspace/solver.hpp"

namespace solspace {

// Solve via an external SAT solver invoked as `solver_cmd <dimacs-file>`.
// The solver must print SAT-competition style output ("s SATISFIABLE" /
// "s UNSATISFIABLE", model on "v" lines) and exit with 0, 10, or 20.
// Witnesses are re-verified here; anything off-contract raises BridgeError.
// Only wall_seconds is populated in the stats (counters_valid=false).
SolveResult external_solve(const CnfFormula& f, const std::string& solver_cmd);

// Resolves the solver command from SOLSPACE_SOLVER; empty if unset.
std::string external_solver_from_env();

}  // namespace solspace

#endif

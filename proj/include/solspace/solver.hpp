#ifndef SOLSPACE_SOLVER_HPP
#define SOLSPACE_SOLVER_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "solspace/assignment.hpp"
#include "solspace/cnf.hpp"

namespace solspace {

enum class Status { sat, unsat, budget_exhausted };

const char* status_name(Status s);

struct SolveStats {
  uint64_t conflicts = 0;
  uint64_t decisions = 0;
  uint64_t propagations = 0;
  uint64_t restarts = 0;
  double wall_seconds = 0.0;
  // false for bridge results, whose search counters are unavailable
  bool counters_valid = true;
};

struct SolveResult {
  Status status = Status::unsat;
  std::optional<Assignment> witness;
  SolveStats stats;
};

struct SolverOptions {
  uint64_t seed = 0;
  // initialize branching phases with fair coins instead of all-false
  bool random_polarity = false;
  // conflicts allowed per solve() call before giving up
  int64_t conflict_budget = 50'000'000;
  double var_decay = 0.95;
  double clause_decay = 0.999;
  // Luby restart sequence unit, in conflicts
  int luby_unit = 64;
};

// Conflict-driven clause learning solver: two watched literals,
// activity-based branching, first-UIP learning, phase saving, Luby
// restarts, incremental clause addition, and solving under assumptions.
//
// Every satisfiable call re-verifies its model against the plain clause
// checker before returning; a mismatch aborts rather than returning a bad
// witness. Runs are deterministic in (formula, assumptions, options).
class Solver {
 public:
  explicit Solver(const CnfFormula& f, SolverOptions opts = {});
  ~Solver();
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  // Add a clause (DIMACS literals over the existing variables) between
  // solve() calls. Used for model blocking.
  void add_clause(const Clause& c);

  SolveResult solve(const std::vector<int>& assumptions = {});

  // Cumulative counters over the instance's lifetime.
  const SolveStats& stats() const;

  // The formula as currently loaded (construction input + added clauses).
  const CnfFormula& loaded_formula() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// One-shot convenience wrapper.
SolveResult solve(const CnfFormula& f, const std::vector<int>& assumptions = {},
                  SolverOptions opts = {});

}  // namespace solspace

#endif

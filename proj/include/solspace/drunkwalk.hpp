#ifndef SOLSPACE_DRUNKWALK_HPP
#define SOLSPACE_DRUNKWALK_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "solspace/assignment.hpp"
#include "solspace/cnf.hpp"
#include "solspace/solver.hpp"

namespace solspace {

// Four ways of trying to reach a designated solution cluster:
//   S1 pins 5% of variables per step and re-solves (forced probing)
//   S2 random single-bit flips, kept only if still satisfying
//   S3 fresh randomized CDCL per step, previous witnesses blocked
//   S4 greedy bit flips toward a known target assignment
enum class WalkStrategy { s1, s2, s3, s4 };

const char* strategy_name(WalkStrategy s);
WalkStrategy strategy_from_name(const std::string& name);

struct WalkStep {
  int step_index = 0;
  Assignment assignment;
  bool satisfies = false;
  bool hit_target = false;
};

// steps[k] is the state after move k+1; the pre-walk state sits in
// `start` as index 0, so hit_step = 0 means the walk began on target.
struct WalkTrace {
  WalkStrategy strategy = WalkStrategy::s1;
  std::optional<WalkStep> start;
  std::vector<WalkStep> steps;
  std::optional<int> hit_step;
  int budget = 0;
};

// A verified solution plus the Hamming radius that counts as reaching
// its cluster.
struct TargetSpec {
  Assignment target;
  int tau = 0;
};

// Probe the solution space and aim at the witness farthest from an
// unconstrained reference solve (ties: first probe wins). Falls back
// to the reference itself when no probe returns a witness. The radius
// is the shattering module's default threshold.
TargetSpec select_target(const CnfFormula& f, double fraction, int probes,
                         uint64_t seed, const SolverOptions& opts = {});

// Walk up to `budget` moves; a step hits iff its assignment satisfies
// f and lies within tau of the target. The walk stops at the first
// hit, and for S3 when blocking has exhausted the solution set. A
// budget-exhausted solver call inside a step leaves the walker in
// place and the walk continues. Deterministic given seed.
WalkTrace run_walk(const CnfFormula& f, WalkStrategy strategy,
                   const TargetSpec& target, int budget, uint64_t seed,
                   const SolverOptions& opts = {});

// Fraction of trials whose trace hit; trial i runs with a stream
// derived from (seed, i), so the estimate is worker-count independent.
double hit_rate(const CnfFormula& f, WalkStrategy strategy,
                const TargetSpec& target, int budget, int trials,
                uint64_t seed, const SolverOptions& opts = {});

}  // namespace solspace

#endif

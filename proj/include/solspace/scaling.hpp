#ifndef SOLSPACE_SCALING_HPP
#define SOLSPACE_SCALING_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "solspace/cnf.hpp"
#include "solspace/solver.hpp"

namespace solspace {

// One solver run inside a scaling sweep. `n` is the family's size axis
// (the value passed in `sizes`), which for conjoined runs is the core
// size, not the combined variable count.
struct ScalingPoint {
  int n = 0;
  long long conflicts = 0;
  Status status = Status::unsat;
  uint64_t seed = 0;
};

// log2(conflicts) = coefficient * x + intercept, where x is n for
// exp_linear and n^(2/3) for exp_two_thirds.
enum class ScalingModel { exp_linear, exp_two_thirds };

const char* scaling_model_name(ScalingModel m);
ScalingModel scaling_model_from_name(const std::string& name);

struct ScalingFit {
  ScalingModel model = ScalingModel::exp_linear;
  double coefficient = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int points_used = 0;  // non-censored points that entered the fit
};

// A named instance family: make(size, seed) builds one member. Sizes are
// variable counts; the Tseitin family only accepts sizes of the form
// 4*m^2 (its edge-slot count) and rejects others.
struct ScalingFamily {
  std::string name;
  std::function<CnfFormula(int size, uint64_t seed)> make;
};

// Odd-charge Tseitin contradictions on the Gabber-Galil expander; every
// instance is unsatisfiable, with charge placement drawn from the seed.
ScalingFamily tseitin_margulis_family();

// Uniform random k-SAT at fixed clause density.
ScalingFamily random_ksat_family(double alpha, int k = 3);

// Solves seeds_per_size instances at each size with the internal CDCL
// under the given conflict budget and records every run. Budget-exhausted
// runs are recorded and flagged, never dropped; the batch continues.
// Instance seeds are derive_seed(master_seed, size, index), so reruns and
// differently-ordered workers reproduce identical points.
std::vector<ScalingPoint> run_scaling(const ScalingFamily& family,
                                      const std::vector<int>& sizes,
                                      int seeds_per_size, long long budget,
                                      uint64_t master_seed,
                                      const SolverOptions& opts = {});

// Least squares of log2(conflicts) against the model's size transform.
// Conflict counts are aggregated to a median per size first (the
// distributions are heavy-tailed), and budget-exhausted points never
// enter. Requires >= 3 usable points across >= 3 distinct sizes, else
// throws FitRefused. Zero-conflict runs count as 1 so the log is finite;
// if every size has the same median the fit is the horizontal line
// (coefficient 0, r_squared 1).
ScalingFit fit_scaling(const std::vector<ScalingPoint>& points,
                       ScalingModel model);

// run_scaling over conjoin(core instance, payload). The payload must be
// satisfiable (checked up front), so each point keeps the core's status.
// With equal master_seed the instance seeds match a bare run's.
std::vector<ScalingPoint> conjoined_scaling(const ScalingFamily& core,
                                            const CnfFormula& payload,
                                            const std::vector<int>& sizes,
                                            int seeds_per_size,
                                            long long budget,
                                            uint64_t master_seed,
                                            const SolverOptions& opts = {});

}  // namespace solspace

#endif

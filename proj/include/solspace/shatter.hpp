#ifndef SOLSPACE_SHATTER_HPP
#define SOLSPACE_SHATTER_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "solspace/assignment.hpp"
#include "solspace/cnf.hpp"
#include "solspace/solver.hpp"

namespace solspace {

// One solver call with a random subset of variables pinned to random
// values, used to sample solutions outside the neighborhood previous
// calls landed in.
struct ProbeRecord {
  int probe_id = 0;
  // (zero-based variable index, pinned value), distinct variables
  std::vector<std::pair<int, bool>> fixed_vars;
  Status status = Status::unsat;
  std::optional<Assignment> witness;
};

// Distance statistics over the clustered sample. Fields that need at
// least one within-cluster pair (intra) or two clusters (inter, ratio)
// stay empty rather than reporting zero.
struct ClusterReport {
  int n = 0;
  int probes_run = 0;
  int solutions_found = 0;  // distinct witnesses after dedup
  int cluster_count_lower_bound = 0;
  std::optional<double> intra_mean;
  std::optional<double> intra_diameter;
  std::optional<double> inter_mean;
  std::optional<double> ratio;
  std::optional<double> inter_over_n;
  int linkage_threshold = 0;
};

// Clustering threshold used across experiments: wide enough to absorb
// the observed O(1) intra-cluster spread, far below the Omega(n)
// inter-cluster separation.
int default_tau(int n);

// Runs `probes` independent pinned solves. Each probe fixes
// round(fraction * n) distinct variables (half-to-even) to fair-coin
// values and solves under those assumptions. Budget exhaustion is
// recorded on the probe; the batch always completes. Probe i draws from
// a stream derived from (seed, i), so results do not depend on
// execution order.
std::vector<ProbeRecord> forced_probe_sample(const CnfFormula& f,
                                             double fraction, int probes,
                                             uint64_t seed,
                                             const SolverOptions& opts = {});

// Single-linkage partition: transitive closure of "Hamming distance
// <= tau". Returns clusters as ascending index lists into `solutions`,
// ordered by smallest member index. The partition itself does not
// depend on input order.
std::vector<std::vector<int>> cluster_assign(
    const std::vector<Assignment>& solutions, int tau);

// Distance statistics from already-collected probes: dedupe witnesses,
// cluster them, and measure intra-cluster pair distances and distances
// between cluster medoids (the member minimizing its max distance
// within the cluster, lowest index on ties).
ClusterReport report_from_probes(const std::vector<ProbeRecord>& records,
                                 int n, int tau);

ClusterReport shatter_report(const CnfFormula& f, double fraction, int probes,
                             int tau, uint64_t seed,
                             const SolverOptions& opts = {});

}  // namespace solspace

#endif

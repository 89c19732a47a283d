#ifndef SOLSPACE_HARNESS_HPP
#define SOLSPACE_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "solspace/scaling.hpp"

namespace solspace {

inline constexpr const char* kToolVersion = "0.1.0";

// Random 3-SAT SAT/UNSAT threshold density, kept in one place so reports
// can annotate which side of the transition a configuration sits on.
inline constexpr double kAlphaCritical = 4.267;

// One experiment run, loadable from JSON (schema_version 1). Fields not
// relevant to the chosen experiment keep their defaults and are ignored.
// For the tseitin family, m is the expander side and the variable count
// is 4*m^2; for the control families m is the constraint count.
struct ExperimentConfig {
  int schema_version = 1;
  std::string experiment;  // gen|solve|homology|shatter|drunkwalk|xortest|scaling
  std::string family = "random";  // random|twosat|hornsat|xorsat|tseitin
  int n = 0;
  double alpha = 4.0;
  int k = 3;
  int m = 0;
  std::string charge = "odd";  // tseitin charge parity
  double fraction = 0.05;      // forced-probe pin fraction
  int probes = 200;
  int tau = -1;  // single-linkage threshold; -1 selects default_tau(n)
  long long budget = 50'000'000;  // solver conflict budget
  int steps = 40;                 // walk move budget
  int trials = 50;
  long long triples = 200;
  std::vector<int> sizes;  // scaling sweep; optional batch axis elsewhere
  int seeds_per_size = 5;
  uint64_t master_seed = 0;
  int workers = 1;
  std::string output_dir = "runs";

  bool operator==(const ExperimentConfig&) const = default;
};

// Strict parser: unknown keys, wrong types, or a missing/unsupported
// schema_version are rejected with the offending field named.
ExperimentConfig parse_config(const std::string& json_text);

// Canonical full-form JSON; parse_config(emit_config(c)) == c.
std::string emit_config(const ExperimentConfig& c);

// Checks every precondition of the target module before any work starts
// and throws InvalidParameter listing each offending field.
void validate_config(const ExperimentConfig& c);

struct ItemOutcome {
  int index = 0;
  bool ok = false;
  std::string error;  // empty when ok
};

struct RunRecord {
  ExperimentConfig config;
  std::string tool_version;
  std::string solver_fingerprint;
  std::string run_dir;    // directory this run's files were written into
  std::string data_csv;   // exact bytes of data.csv
  std::string data_json;  // exact bytes of data.json
  std::vector<ItemOutcome> items;
  double wall_seconds = 0.0;
};

// Validates the config, executes its items on a bounded worker pool, and
// writes data.csv, data.json, run.json, and chart.svg under
// output_dir/<experiment>/<timestamp>-<seed>/. Items draw from streams
// derived from (master_seed, item index) and results merge in index
// order, so every worker count produces identical data bytes; timing
// lives only in run.json. Per-item failures are recorded and the batch
// completes.
RunRecord run(const ExperimentConfig& config);

// Chart geometry, fixed so emitted coordinates are predictable.
inline constexpr int kChartWidth = 640;
inline constexpr int kChartHeight = 420;
inline constexpr int kChartMargin = 60;

struct ChartSeries {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<std::pair<double, double>> points;
  // horizontal reference band [low, high] on the y axis
  std::optional<std::pair<double, double>> band;
};

// Self-contained SVG scatter chart. The optional fit overlays the curve
// y = coefficient * t(x) + intercept across the x range, with t the
// fit model's size transform. Throws InvalidParameter on an empty
// series; a single point renders as a degenerate but valid chart.
std::string emit_chart(const ChartSeries& series,
                       const std::optional<ScalingFit>& fit = {});

}  // namespace solspace

#endif

#include "solspace/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "solspace/errors.hpp"
#include "solspace/gen.hpp"
#include "solspace/rng.hpp"
#include "solspace/tseitin.hpp"

namespace solspace {

const char* scaling_model_name(ScalingModel m) {
  switch (m) {
    case ScalingModel::exp_linear:
      return "exp-linear";
    case ScalingModel::exp_two_thirds:
      return "exp-two-thirds";
  }
  return "?";
}

ScalingModel scaling_model_from_name(const std::string& name) {
  if (name == "exp-linear") return ScalingModel::exp_linear;
  if (name == "exp-two-thirds") return ScalingModel::exp_two_thirds;
  throw InvalidParameter("unknown scaling model: " + name);
}

ScalingFamily tseitin_margulis_family() {
  ScalingFamily fam;
  fam.name = "tseitin-margulis";
  fam.make = [](int size, uint64_t seed) {
    int m = static_cast<int>(std::lround(std::sqrt(size / 4.0)));
    if (m < 1 || 4 * m * m != size)
      throw InvalidParameter(
          "tseitin family size must be an edge-slot count 4*m^2, got " +
          std::to_string(size));
    ExpanderGraph g = margulis_expander(m);
    auto charges = random_charges(g.num_vertices(), true, seed);
    return tseitin(g, charges).cnf;
  };
  return fam;
}

ScalingFamily random_ksat_family(double alpha, int k) {
  ScalingFamily fam;
  fam.name = "random-" + std::to_string(k) + "sat";
  fam.make = [alpha, k](int size, uint64_t seed) {
    return gen_random_ksat(size, alpha, k, seed);
  };
  return fam;
}

std::vector<ScalingPoint> run_scaling(const ScalingFamily& family,
                                      const std::vector<int>& sizes,
                                      int seeds_per_size, long long budget,
                                      uint64_t master_seed,
                                      const SolverOptions& opts) {
  if (sizes.empty()) throw InvalidParameter("run_scaling: sizes are empty");
  for (size_t i = 1; i < sizes.size(); ++i)
    if (sizes[i] <= sizes[i - 1])
      throw InvalidParameter("run_scaling: sizes must be strictly ascending");
  if (seeds_per_size < 1)
    throw InvalidParameter("run_scaling: seeds_per_size must be >= 1");
  if (budget < 1) throw InvalidParameter("run_scaling: budget must be >= 1");

  std::vector<ScalingPoint> points;
  points.reserve(sizes.size() * static_cast<size_t>(seeds_per_size));
  for (int size : sizes) {
    for (int i = 0; i < seeds_per_size; ++i) {
      uint64_t inst_seed = derive_seed(master_seed, static_cast<uint64_t>(size),
                                       static_cast<uint64_t>(i));
      CnfFormula f = family.make(size, inst_seed);
      SolverOptions o = opts;
      o.conflict_budget = budget;
      SolveResult r = solve(f, {}, o);
      points.push_back({size, static_cast<long long>(r.stats.conflicts),
                        r.status, inst_seed});
    }
  }
  return points;
}

ScalingFit fit_scaling(const std::vector<ScalingPoint>& points,
                       ScalingModel model) {
  std::map<int, std::vector<long long>> by_size;
  int usable = 0;
  for (const auto& p : points) {
    if (p.status == Status::budget_exhausted) continue;
    by_size[p.n].push_back(p.conflicts);
    usable++;
  }
  if (usable < 3 || by_size.size() < 3)
    throw FitRefused("fit_scaling: need >= 3 non-censored points across >= 3 "
                     "distinct sizes, have " +
                     std::to_string(usable) + " across " +
                     std::to_string(by_size.size()));

  std::vector<double> xs, ys;
  for (auto& [n, counts] : by_size) {
    std::sort(counts.begin(), counts.end());
    size_t k = counts.size();
    double median = (k % 2 == 1)
                        ? static_cast<double>(counts[k / 2])
                        : (static_cast<double>(counts[k / 2 - 1]) +
                           static_cast<double>(counts[k / 2])) /
                              2.0;
    double x = (model == ScalingModel::exp_linear)
                   ? static_cast<double>(n)
                   : std::pow(static_cast<double>(n), 2.0 / 3.0);
    xs.push_back(x);
    ys.push_back(std::log2(std::max(median, 1.0)));
  }

  size_t k = xs.size();
  double xbar = 0, ybar = 0;
  for (size_t i = 0; i < k; ++i) {
    xbar += xs[i];
    ybar += ys[i];
  }
  xbar /= static_cast<double>(k);
  ybar /= static_cast<double>(k);
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < k; ++i) {
    sxx += (xs[i] - xbar) * (xs[i] - xbar);
    sxy += (xs[i] - xbar) * (ys[i] - ybar);
  }
  double slope = sxy / sxx;
  double intercept = ybar - slope * xbar;

  double ss_res = 0, ss_tot = 0;
  for (size_t i = 0; i < k; ++i) {
    double e = ys[i] - (slope * xs[i] + intercept);
    ss_res += e * e;
    ss_tot += (ys[i] - ybar) * (ys[i] - ybar);
  }
  double r2 = (ss_tot <= 1e-12) ? 1.0 : 1.0 - ss_res / ss_tot;
  r2 = std::clamp(r2, 0.0, 1.0);

  ScalingFit fit;
  fit.model = model;
  fit.coefficient = slope;
  fit.intercept = intercept;
  fit.r_squared = r2;
  fit.points_used = usable;
  return fit;
}

std::vector<ScalingPoint> conjoined_scaling(const ScalingFamily& core,
                                            const CnfFormula& payload,
                                            const std::vector<int>& sizes,
                                            int seeds_per_size,
                                            long long budget,
                                            uint64_t master_seed,
                                            const SolverOptions& opts) {
  payload.check_well_formed();
  bool trivially_empty = payload.num_vars == 0 && payload.clauses.empty();
  if (!trivially_empty) {
    SolveResult r = solve(payload, {}, opts);
    if (r.status != Status::sat)
      throw InvalidParameter(
          "conjoined_scaling: payload must be verifiably satisfiable, got " +
          std::string(status_name(r.status)));
  }
  ScalingFamily wrapped;
  wrapped.name = core.name + "+payload";
  wrapped.make = [&core, &payload](int size, uint64_t seed) {
    return conjoin(core.make(size, seed), payload);
  };
  return run_scaling(wrapped, sizes, seeds_per_size, budget, master_seed,
                     opts);
}

}  // namespace solspace

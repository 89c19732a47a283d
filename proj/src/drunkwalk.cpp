#include "solspace/drunkwalk.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "solspace/errors.hpp"
#include "solspace/rng.hpp"
#include "solspace/shatter.hpp"

namespace solspace {

namespace {

constexpr double kProbeFraction = 0.05;

int count_satisfied(const CnfFormula& f, const Assignment& a) {
  int count = 0;
  for (const Clause& c : f.clauses) {
    for (int lit : c) {
      int v = std::abs(lit) - 1;
      if (a.get(v) == (lit > 0)) {
        ++count;
        break;
      }
    }
  }
  return count;
}

Clause blocking_clause(const Assignment& a) {
  Clause c;
  c.reserve(a.size());
  for (int v = 0; v < a.size(); ++v)
    c.push_back(a.get(v) ? -(v + 1) : v + 1);
  return c;
}

struct WalkState {
  const CnfFormula& f;
  const TargetSpec& target;
  WalkTrace& trace;

  WalkStep record(int index, const Assignment& a) {
    WalkStep step;
    step.step_index = index;
    step.assignment = a;
    step.satisfies = satisfies(f, a);
    step.hit_target =
        step.satisfies && a.hamming(target.target) <= target.tau;
    if (step.hit_target && !trace.hit_step) trace.hit_step = index;
    return step;
  }
};

}  // namespace

const char* strategy_name(WalkStrategy s) {
  switch (s) {
    case WalkStrategy::s1: return "S1";
    case WalkStrategy::s2: return "S2";
    case WalkStrategy::s3: return "S3";
    case WalkStrategy::s4: return "S4";
  }
  return "?";
}

WalkStrategy strategy_from_name(const std::string& name) {
  std::string up = name;
  for (char& c : up) c = static_cast<char>(std::toupper(c));
  if (up == "S1") return WalkStrategy::s1;
  if (up == "S2") return WalkStrategy::s2;
  if (up == "S3") return WalkStrategy::s3;
  if (up == "S4") return WalkStrategy::s4;
  throw InvalidParameter("unknown strategy '" + name + "'");
}

TargetSpec select_target(const CnfFormula& f, double fraction, int probes,
                         uint64_t seed, const SolverOptions& opts) {
  SolveResult ref = solve(f, {}, opts);
  if (!ref.witness)
    throw InsufficientSample("no reference solution for target selection");

  TargetSpec spec;
  spec.target = *ref.witness;
  spec.tau = default_tau(f.num_vars);
  int best = -1;
  for (const ProbeRecord& r :
       forced_probe_sample(f, fraction, probes, seed, opts)) {
    if (!r.witness) continue;
    int d = r.witness->hamming(*ref.witness);
    if (d > best) {
      best = d;
      spec.target = *r.witness;
    }
  }
  return spec;
}

WalkTrace run_walk(const CnfFormula& f, WalkStrategy strategy,
                   const TargetSpec& target, int budget, uint64_t seed,
                   const SolverOptions& opts) {
  f.check_well_formed();
  if (budget < 0) throw InvalidParameter("budget must be >= 0");
  if (target.tau < 0) throw InvalidParameter("tau must be >= 0");
  if (!satisfies(f, target.target))
    throw InvalidParameter("target must satisfy the formula");

  WalkTrace trace;
  trace.strategy = strategy;
  trace.budget = budget;

  SolverOptions start_opts = opts;
  start_opts.random_polarity = true;
  start_opts.seed = derive_seed(seed, 0);
  SolveResult first = solve(f, {}, start_opts);
  if (!first.witness) return trace;

  Assignment current = *first.witness;
  WalkState state{f, target, trace};
  trace.start = state.record(0, current);
  if (trace.hit_step) return trace;

  Rng flip_rng(derive_seed(seed, 1));
  std::vector<Assignment> visited = {current};

  for (int step = 1; step <= budget; ++step) {
    switch (strategy) {
      case WalkStrategy::s1: {
        auto probe = forced_probe_sample(f, kProbeFraction, 1,
                                         derive_seed(seed, step), opts);
        if (probe[0].witness) current = *probe[0].witness;
        break;
      }
      case WalkStrategy::s2: {
        int v = static_cast<int>(flip_rng.below(f.num_vars));
        Assignment cand = current;
        cand.flip(v);
        if (satisfies(f, cand)) current = cand;
        break;
      }
      case WalkStrategy::s3: {
        SolverOptions step_opts = opts;
        step_opts.random_polarity = true;
        step_opts.seed = derive_seed(seed, step);
        Solver solver(f, step_opts);
        for (const Assignment& w : visited)
          solver.add_clause(blocking_clause(w));
        SolveResult r = solver.solve();
        if (r.status == Status::unsat) {
          trace.steps.push_back(state.record(step, current));
          return trace;  // every solution visited and blocked
        }
        if (r.witness) {
          current = *r.witness;
          visited.push_back(current);
        }
        break;
      }
      case WalkStrategy::s4: {
        int best_var = -1;
        int best_count = -1;
        for (int v = 0; v < f.num_vars; ++v) {
          if (current.get(v) == target.target.get(v)) continue;
          Assignment cand = current;
          cand.flip(v);
          int count = count_satisfied(f, cand);
          if (count > best_count) {
            best_count = count;
            best_var = v;
          }
        }
        if (best_var >= 0) current.flip(best_var);
        break;
      }
    }
    trace.steps.push_back(state.record(step, current));
    if (trace.hit_step) return trace;
  }
  return trace;
}

double hit_rate(const CnfFormula& f, WalkStrategy strategy,
                const TargetSpec& target, int budget, int trials,
                uint64_t seed, const SolverOptions& opts) {
  if (trials < 1) throw InvalidParameter("trials must be >= 1");
  int hits = 0;
  for (int trial = 0; trial < trials; ++trial) {
    WalkTrace t = run_walk(f, strategy, target, budget,
                           derive_seed(seed, static_cast<uint64_t>(trial)),
                           opts);
    if (t.hit_step) ++hits;
  }
  return static_cast<double>(hits) / trials;
}

}  // namespace solspace

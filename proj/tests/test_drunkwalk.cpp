#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>

#include "doctest.h"
#include "solspace/drunkwalk.hpp"
#include "solspace/enumerate.hpp"
#include "solspace/errors.hpp"
#include "solspace/gen.hpp"
#include "solspace/rng.hpp"
#include "solspace/shatter.hpp"

using namespace solspace;

namespace {

// implication cycle x1 -> x2 -> ... -> xn -> x1: the only solutions
// are all-false and all-true, Hamming distance n apart
CnfFormula implication_cycle(int n) {
  CnfFormula f;
  f.num_vars = n;
  for (int v = 1; v <= n; ++v) f.clauses.push_back({-v, v % n + 1});
  return f;
}

CnfFormula two_point_instance() {
  // x1 free, everything else pinned false: solutions 0000000000, 1000000000
  CnfFormula f;
  f.num_vars = 10;
  for (int v = 2; v <= 10; ++v) f.clauses.push_back({-v});
  return f;
}

Assignment all_ones(int n) {
  Assignment a(n);
  for (int v = 0; v < n; ++v) a.set(v, true);
  return a;
}

std::vector<const WalkStep*> all_steps(const WalkTrace& t) {
  std::vector<const WalkStep*> out;
  if (t.start) out.push_back(&*t.start);
  for (const WalkStep& s : t.steps) out.push_back(&s);
  return out;
}

}  // namespace

TEST_CASE("strategy names round-trip") {
  for (WalkStrategy s : {WalkStrategy::s1, WalkStrategy::s2, WalkStrategy::s3,
                         WalkStrategy::s4})
    CHECK(strategy_from_name(strategy_name(s)) == s);
  CHECK(strategy_from_name("s2") == WalkStrategy::s2);
  CHECK_THROWS_AS(strategy_from_name("S5"), InvalidParameter);
}

TEST_CASE("walk preconditions") {
  CnfFormula f = two_point_instance();
  TargetSpec bad{all_ones(10), 4};  // violates the pinned-false clauses
  CHECK_THROWS_AS(run_walk(f, WalkStrategy::s1, bad, 5, 1), InvalidParameter);
  TargetSpec ok{Assignment(10), 4};
  CHECK_THROWS_AS(run_walk(f, WalkStrategy::s1, ok, -1, 1), InvalidParameter);
  CHECK_THROWS_AS(hit_rate(f, WalkStrategy::s1, ok, 5, 0, 1),
                  InvalidParameter);
}

TEST_CASE("target equal to the starting solution hits at step zero") {
  CnfFormula f = gen_random_ksat(30, 3.5, 3, 2);
  for (WalkStrategy s : {WalkStrategy::s1, WalkStrategy::s2, WalkStrategy::s3,
                         WalkStrategy::s4}) {
    SolverOptions start_opts;
    start_opts.random_polarity = true;
    start_opts.seed = derive_seed(7, 0);
    SolveResult start = solve(f, {}, start_opts);
    REQUIRE(start.status == Status::sat);
    TargetSpec spec{*start.witness, 0};
    WalkTrace t = run_walk(f, s, spec, 10, 7);
    REQUIRE(t.hit_step.has_value());
    CHECK(*t.hit_step == 0);
    CHECK(t.steps.empty());
  }
}

TEST_CASE("every hit satisfies and hit_step is the first hit") {
  CnfFormula f = gen_random_ksat(25, 4.0, 3, 14);
  REQUIRE(solve(f).status == Status::sat);
  TargetSpec spec = select_target(f, 0.1, 20, 31);
  for (WalkStrategy s : {WalkStrategy::s1, WalkStrategy::s2, WalkStrategy::s3,
                         WalkStrategy::s4}) {
    for (uint64_t seed = 0; seed < 6; ++seed) {
      WalkTrace t = run_walk(f, s, spec, 15, derive_seed(seed, 99));
      CHECK(t.steps.size() <= 15);
      int first_hit = -1;
      int expected_index = 0;
      for (const WalkStep* step : all_steps(t)) {
        CHECK(step->step_index == expected_index++);
        CHECK(step->satisfies == satisfies(f, step->assignment));
        if (step->hit_target) {
          CHECK(step->satisfies);
          CHECK(step->assignment.hamming(spec.target) <= spec.tau);
          if (first_hit < 0) first_hit = step->step_index;
        }
      }
      if (first_hit >= 0) {
        REQUIRE(t.hit_step.has_value());
        CHECK(*t.hit_step == first_hit);
      } else {
        CHECK(!t.hit_step.has_value());
      }
    }
  }
}

TEST_CASE("walks are deterministic in the seed") {
  CnfFormula f = gen_random_ksat(25, 4.0, 3, 14);
  TargetSpec spec = select_target(f, 0.1, 20, 31);
  for (WalkStrategy s : {WalkStrategy::s1, WalkStrategy::s2, WalkStrategy::s3,
                         WalkStrategy::s4}) {
    WalkTrace a = run_walk(f, s, spec, 12, 5);
    WalkTrace b = run_walk(f, s, spec, 12, 5);
    CHECK(a.hit_step == b.hit_step);
    REQUIRE(a.steps.size() == b.steps.size());
    for (size_t i = 0; i < a.steps.size(); ++i)
      CHECK(a.steps[i].assignment == b.steps[i].assignment);
  }
}

TEST_CASE("s1 hits immediately when every solution is in the target cluster") {
  CnfFormula f = two_point_instance();
  SolutionSet all = brute_force(f);
  TargetSpec spec{Assignment(10), default_tau(10)};
  for (const Assignment& a : all.members)
    REQUIRE(a.hamming(spec.target) <= spec.tau);

  // single cluster: the start already hits, and every SAT probe would
  REQUIRE(hit_rate(f, WalkStrategy::s1, spec, 5, 20, 77) == 1.0);
  for (const ProbeRecord& r : forced_probe_sample(f, 0.1, 40, 123))
    if (r.witness) CHECK(r.witness->hamming(spec.target) <= spec.tau);
}

TEST_CASE("s2 is confined to the start cluster of the implication cycle") {
  CnfFormula f = implication_cycle(20);
  TargetSpec spec{all_ones(20), 4};

  int start_hits = 0;
  const int trials = 30;
  for (int trial = 0; trial < trials; ++trial) {
    WalkTrace t =
        run_walk(f, WalkStrategy::s2, spec, 40, derive_seed(400, trial));
    REQUIRE(t.start.has_value());
    // one bit flipped off either solution breaks the cycle
    for (const WalkStep& s : t.steps)
      CHECK(s.assignment == t.start->assignment);
    if (t.hit_step) {
      CHECK(*t.hit_step == 0);
      ++start_hits;
    }
  }
  CHECK(start_hits > 0);
  CHECK(start_hits < trials);

  // budget 0 counts exactly the step-0 hits, so S2 adds nothing to it
  double rate0 = hit_rate(f, WalkStrategy::s2, spec, 0, trials, 400);
  double rate40 = hit_rate(f, WalkStrategy::s2, spec, 40, trials, 400);
  CHECK(rate0 == doctest::Approx(static_cast<double>(start_hits) / trials));
  CHECK(rate40 == rate0);
}

TEST_CASE("s3 blocking escapes the start cluster of the implication cycle") {
  CnfFormula f = implication_cycle(20);
  TargetSpec spec{all_ones(20), 4};
  double rate = hit_rate(f, WalkStrategy::s3, spec, 40, 30, 500);
  CHECK(rate == 1.0);
}

TEST_CASE("s4 descends monotonically through non-satisfying states") {
  CnfFormula f = implication_cycle(20);
  TargetSpec spec{all_ones(20), 0};
  int crossings = 0;
  for (int trial = 0; trial < 10; ++trial) {
    WalkTrace t =
        run_walk(f, WalkStrategy::s4, spec, 20, derive_seed(600, trial));
    REQUIRE(t.start.has_value());
    REQUIRE(t.hit_step.has_value());
    int d0 = t.start->assignment.hamming(spec.target);
    CHECK(*t.hit_step == d0);
    int prev = d0;
    bool saw_unsat_state = false;
    for (const WalkStep& s : t.steps) {
      int d = s.assignment.hamming(spec.target);
      CHECK(d == prev - 1);
      prev = d;
      if (!s.satisfies) saw_unsat_state = true;
    }
    if (d0 > 1) CHECK(saw_unsat_state);
    if (d0 > 0) ++crossings;
  }
  CHECK(crossings > 0);
}

TEST_CASE("s4 reaches a probed target on a random instance within n steps") {
  CnfFormula f = gen_random_ksat(50, 4.0, 3, 13);
  REQUIRE(solve(f).status == Status::sat);
  TargetSpec spec = select_target(f, 0.05, 30, 8);
  WalkTrace t = run_walk(f, WalkStrategy::s4, spec, 50, 21);
  REQUIRE(t.start.has_value());
  REQUIRE(t.hit_step.has_value());
  CHECK(*t.hit_step <= t.start->assignment.hamming(spec.target));
  int prev = t.start->assignment.hamming(spec.target);
  for (const WalkStep& s : t.steps) {
    int d = s.assignment.hamming(spec.target);
    CHECK(d < prev);
    prev = d;
  }
}

TEST_CASE("target selection aims at the farthest probe witness") {
  CnfFormula f = gen_random_ksat(30, 4.0, 3, 2);
  SolveResult ref = solve(f);
  REQUIRE(ref.status == Status::sat);
  TargetSpec spec = select_target(f, 0.1, 25, 9);
  CHECK(spec.tau == default_tau(30));
  CHECK(satisfies(f, spec.target));

  int best = 0;
  for (const ProbeRecord& r : forced_probe_sample(f, 0.1, 25, 9))
    if (r.witness) best = std::max(best, r.witness->hamming(*ref.witness));
  CHECK(spec.target.hamming(*ref.witness) == best);

  CnfFormula dead;
  dead.num_vars = 3;
  dead.clauses = {{1}, {-1}};
  CHECK_THROWS_AS(select_target(dead, 0.1, 5, 1), InsufficientSample);
}

TEST_CASE("budget exhaustion inside a step leaves the walker in place") {
  CnfFormula f = gen_random_ksat(40, 4.2, 3, 33);
  REQUIRE(solve(f).status == Status::sat);
  TargetSpec spec = select_target(f, 0.1, 10, 3);
  SolverOptions starved;
  starved.conflict_budget = 1;
  WalkTrace t = run_walk(f, WalkStrategy::s1, spec, 6, 11, starved);
  // the start solve itself may fail under a one-conflict budget
  if (t.start) {
    for (const WalkStep& s : t.steps) CHECK(s.satisfies);
    CHECK(t.steps.size() <= 6);
  } else {
    CHECK(t.steps.empty());
    CHECK(!t.hit_step.has_value());
  }
}

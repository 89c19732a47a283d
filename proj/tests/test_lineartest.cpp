#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "solspace/enumerate.hpp"
#include "solspace/errors.hpp"
#include "solspace/gen.hpp"
#include "solspace/lineartest.hpp"
#include "solspace/rng.hpp"
#include "solspace/solver.hpp"

using namespace solspace;

namespace {

// n=4 formula whose solution set is exactly the given strings, built by
// blocking every other assignment.
CnfFormula keep_only(const std::vector<std::string>& keep) {
  CnfFormula f;
  f.num_vars = 4;
  std::vector<Assignment> kept;
  for (const auto& s : keep) kept.push_back(Assignment::from_string(s));
  for (uint64_t w = 0; w < 16; ++w) {
    Assignment a = Assignment::from_word(4, w);
    bool keep_it = false;
    for (const auto& k : kept)
      if (a == k) keep_it = true;
    if (keep_it) continue;
    Clause c;
    for (int v = 0; v < 4; ++v) c.push_back(a.get(v) ? -(v + 1) : v + 1);
    f.clauses.push_back(c);
  }
  return f;
}

void check_report_invariants(const XorReport& r) {
  CHECK(r.triples_tested >= 1);
  CHECK(r.violations >= 0);
  CHECK(r.violations <= r.triples_tested);
  CHECK(r.violation_rate ==
        doctest::Approx(static_cast<double>(r.violations) /
                        static_cast<double>(r.triples_tested)));
  CHECK(r.violation_rate >= 0.0);
  CHECK(r.violation_rate <= 1.0);
  CHECK(!r.sampling.empty());
}

}  // namespace

TEST_CASE("xorsat controls never violate affine closure") {
  // Parity systems have affine solution sets, so x^y^z of three solutions
  // is always a solution. A random system can be inconsistent or too
  // small to sample; those runs must throw, and only when the instance
  // really has fewer than 3 solutions.
  int ran = 0;
  for (uint64_t s = 1; s <= 50; ++s) {
    int n = (s <= 30) ? 10 + static_cast<int>(s % 7)
                      : 17 + static_cast<int>(s % 4);
    int m = n / 2;
    CnfFormula f = gen_control_family(ControlFamily::xorsat, n, m, s);
    try {
      XorReport r = xor_closure_test(f, 100, derive_seed(50, s));
      CHECK(r.violations == 0);
      CHECK(r.violation_rate == 0.0);
      check_report_invariants(r);
      ran++;
    } catch (const InsufficientSample&) {
      if (n <= 16) {
        CHECK(brute_force(f).size() < 3);
      } else {
        CHECK(solve(f).status == Status::unsat);
      }
    }
  }
  CHECK(ran >= 45);
}

TEST_CASE("random 3-SAT near the threshold violates closure") {
  CnfFormula f = gen_random_ksat(50, 4.0, 3, 4);
  XorReport r = xor_closure_test(f, 200, 77);
  CHECK(r.triples_tested == 200);
  CHECK(r.violation_rate >= 0.99);
  check_report_invariants(r);
  CHECK(r.sampling.find("affine") != std::string::npos);
}

TEST_CASE("solution pool source switches at 16 variables") {
  // Same generator family either side of the cutoff; the report says
  // which source was used.
  CnfFormula small = gen_random_ksat(16, 4.0, 3, 2);
  XorReport rs = xor_closure_test(small, 50, 9);
  CHECK(rs.sampling.find("enumeration") != std::string::npos);
  check_report_invariants(rs);

  CnfFormula big = gen_random_ksat(17, 4.0, 3, 2);
  XorReport rb = xor_closure_test(big, 50, 9);
  CHECK(rb.sampling.find("forced probes") != std::string::npos);
  check_report_invariants(rb);
}

TEST_CASE("probe fraction ladder reaches sparse near-threshold instances") {
  // At n=200, alpha=4.25 almost every probe with 10 pins is unsatisfiable;
  // the gatherer must descend to smaller pin counts to build a pool.
  CnfFormula f = gen_random_ksat(200, 4.25, 3, 7);
  XorReport r = xor_closure_test(f, 200, 77);
  CHECK(r.triples_tested == 200);
  CHECK(r.violation_rate >= 0.99);
  check_report_invariants(r);
}

TEST_CASE("triples are distinct unordered sets of distinct solutions") {
  // Exactly three solutions leave exactly one triple, however many are
  // requested. 0000 ^ 0011 ^ 0101 = 0110, which is not a solution.
  CnfFormula f = keep_only({"0000", "0011", "0101"});
  XorReport r = xor_closure_test(f, 200, 5);
  CHECK(r.triples_tested == 1);
  CHECK(r.violations == 1);
  CHECK(r.violation_rate == 1.0);

  // A repeated member would cancel: x ^ x ^ y = y, never a violation.
  // Distinct-triple sampling is what keeps such trivial passes out.
  Assignment x = Assignment::from_string("0011");
  Assignment y = Assignment::from_string("0101");
  CHECK((x ^ x ^ y) == y);
}

TEST_CASE("the affine combination is symmetric in its arguments") {
  Assignment a = Assignment::from_string("0000");
  Assignment b = Assignment::from_string("0011");
  Assignment c = Assignment::from_string("0101");
  Assignment w = a ^ b ^ c;
  CHECK((b ^ c ^ a) == w);
  CHECK((c ^ a ^ b) == w);
  CHECK((c ^ b ^ a) == w);
}

TEST_CASE("a closed triple is counted as a non-violation") {
  // {0000, 0011, 0101, 0110} is a 2-dimensional affine patch: any three
  // members XOR to the fourth.
  CnfFormula f = keep_only({"0000", "0011", "0101", "0110"});
  XorReport r = xor_closure_test(f, 200, 5);
  CHECK(r.triples_tested == 4);
  CHECK(r.violations == 0);
  CHECK(r.violation_rate == 0.0);
}

TEST_CASE("insufficient pools and bad parameters are refused") {
  CnfFormula two = keep_only({"0000", "1111"});
  CHECK_THROWS_AS(xor_closure_test(two, 10, 1), InsufficientSample);

  CnfFormula unsat_small;
  unsat_small.num_vars = 8;
  unsat_small.clauses = {{1}, {-1}};
  CHECK_THROWS_AS(xor_closure_test(unsat_small, 10, 1), InsufficientSample);

  CnfFormula unsat_big;
  unsat_big.num_vars = 20;
  unsat_big.clauses = {{1}, {-1}};
  CHECK_THROWS_AS(xor_closure_test(unsat_big, 10, 1), InsufficientSample);

  CnfFormula ok = keep_only({"0000", "0011", "0101"});
  CHECK_THROWS_AS(xor_closure_test(ok, 0, 1), InvalidParameter);
  CHECK_THROWS_AS(xor_closure_test(ok, -5, 1), InvalidParameter);
}

TEST_CASE("reports are deterministic given the seed") {
  CnfFormula f = gen_random_ksat(50, 4.0, 3, 4);
  XorReport a = xor_closure_test(f, 150, 123);
  XorReport b = xor_closure_test(f, 150, 123);
  CHECK(a.triples_tested == b.triples_tested);
  CHECK(a.violations == b.violations);
  CHECK(a.violation_rate == b.violation_rate);
  CHECK(a.sampling == b.sampling);

  XorReport c = xor_closure_test(f, 150, 124);
  check_report_invariants(c);
}

#ifndef SOLSPACE_GEN_HPP
#define SOLSPACE_GEN_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "solspace/cnf.hpp"

namespace solspace {

// Uniform random k-SAT: m = round(alpha * n) clauses (half-to-even), each
// over k distinct variables with independent fair-coin signs. Duplicate
// clauses across the formula are allowed. Deterministic in seed.
CnfFormula gen_random_ksat(int n, double alpha, int k, uint64_t seed);

enum class ControlFamily { twosat, hornsat, xorsat };

ControlFamily control_family_from_name(const std::string& name);

// x_a ^ x_b ^ x_c = parity (variables 1-based)
struct XorConstraint {
  std::array<int, 3> vars;
  bool parity;
};

struct XorSystem {
  int num_vars = 0;
  std::vector<XorConstraint> rows;

  size_t rank() const;        // rank of the coefficient matrix
  bool consistent() const;    // rank of [A] equals rank of [A|b]
  bool satisfied_by(const Assignment& a) const;
};

// A 3-XOR system together with its 4-clauses-per-constraint CNF encoding.
struct XorsatInstance {
  CnfFormula cnf;
  XorSystem system;
};

XorsatInstance gen_xorsat(int n, int m, uint64_t seed);

// twosat: m random width-2 clauses. hornsat: m random width-<=3 clauses
// with at most one positive literal. xorsat: the CNF side of gen_xorsat.
CnfFormula gen_control_family(ControlFamily family, int n, int m,
                              uint64_t seed);

}  // namespace solspace

#endif

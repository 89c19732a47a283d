#include "solspace/gen.hpp"

#include <algorithm>
#include <bit>

#include "solspace/errors.hpp"
#include "solspace/gf2.hpp"
#include "solspace/rng.hpp"

namespace solspace {

CnfFormula gen_random_ksat(int n, double alpha, int k, uint64_t seed) {
  if (k < 1) throw InvalidParameter("clause width must be >= 1");
  if (n < k)
    throw InvalidParameter("need at least k variables, got n=" +
                           std::to_string(n) + ", k=" + std::to_string(k));
  if (alpha < 0) throw InvalidParameter("clause density must be >= 0");

  long long m = round_half_even(alpha * n);
  CnfFormula f;
  f.num_vars = n;
  f.family = Family::random_ksat;
  f.clauses.reserve(static_cast<size_t>(m));

  Rng rng(seed);
  for (long long i = 0; i < m; ++i) {
    std::vector<int> vars = rng.sample_distinct(n, k);
    Clause c;
    c.reserve(k);
    for (int v : vars) c.push_back(rng.coin() ? (v + 1) : -(v + 1));
    f.clauses.push_back(std::move(c));
  }
  return f;
}

ControlFamily control_family_from_name(const std::string& name) {
  if (name == "twosat") return ControlFamily::twosat;
  if (name == "hornsat") return ControlFamily::hornsat;
  if (name == "xorsat") return ControlFamily::xorsat;
  throw InvalidParameter("unknown control family: " + name);
}

size_t XorSystem::rank() const {
  BitMatrix m(rows.size(), num_vars);
  for (size_t r = 0; r < rows.size(); ++r)
    for (int v : rows[r].vars) m.set(r, static_cast<size_t>(v - 1));
  return m.rank_destructive();
}

bool XorSystem::consistent() const {
  BitMatrix m(rows.size(), num_vars + 1);
  for (size_t r = 0; r < rows.size(); ++r) {
    for (int v : rows[r].vars) m.set(r, static_cast<size_t>(v - 1));
    if (rows[r].parity) m.set(r, static_cast<size_t>(num_vars));
  }
  return gf2_rank(m) == rank();
}

bool XorSystem::satisfied_by(const Assignment& a) const {
  for (const XorConstraint& c : rows) {
    bool p = false;
    for (int v : c.vars) p ^= a.get(v - 1);
    if (p != c.parity) return false;
  }
  return true;
}

XorsatInstance gen_xorsat(int n, int m, uint64_t seed) {
  if (n < 3) throw InvalidParameter("xorsat needs at least 3 variables");
  XorsatInstance inst;
  inst.system.num_vars = n;
  inst.cnf.num_vars = n;
  inst.cnf.family = Family::xorsat_cnf;

  Rng rng(seed);
  for (int i = 0; i < m; ++i) {
    std::vector<int> picked = rng.sample_distinct(n, 3);
    XorConstraint row;
    for (int j = 0; j < 3; ++j) row.vars[j] = picked[j] + 1;
    std::sort(row.vars.begin(), row.vars.end());
    row.parity = rng.coin();
    inst.system.rows.push_back(row);

    // Forbid the 4 assignments of wrong parity: one clause per violator.
    for (int pattern = 0; pattern < 8; ++pattern) {
      bool parity = (std::popcount(static_cast<unsigned>(pattern)) & 1) != 0;
      if (parity == row.parity) continue;
      Clause c;
      for (int j = 0; j < 3; ++j) {
        bool bit = (pattern >> j) & 1;
        c.push_back(bit ? -row.vars[j] : row.vars[j]);
      }
      inst.cnf.clauses.push_back(std::move(c));
    }
  }
  return inst;
}

CnfFormula gen_control_family(ControlFamily family, int n, int m,
                              uint64_t seed) {
  if (n < 2) throw InvalidParameter("control families need n >= 2");
  if (m < 0) throw InvalidParameter("clause count must be >= 0");

  Rng rng(seed);
  CnfFormula f;
  f.num_vars = n;

  switch (family) {
    case ControlFamily::twosat: {
      f.family = Family::twosat;
      for (int i = 0; i < m; ++i) {
        std::vector<int> vars = rng.sample_distinct(n, 2);
        Clause c;
        for (int v : vars) c.push_back(rng.coin() ? (v + 1) : -(v + 1));
        f.clauses.push_back(std::move(c));
      }
      break;
    }
    case ControlFamily::hornsat: {
      f.family = Family::hornsat;
      int width = std::min(3, n);
      for (int i = 0; i < m; ++i) {
        std::vector<int> vars = rng.sample_distinct(n, width);
        std::sort(vars.begin(), vars.end());
        Clause c;
        for (int v : vars) c.push_back(-(v + 1));
        // at most one positive literal: none, or one at a random position
        if (rng.coin()) {
          int pos = static_cast<int>(rng.below(static_cast<uint64_t>(width)));
          c[pos] = -c[pos];
        }
        f.clauses.push_back(std::move(c));
      }
      break;
    }
    case ControlFamily::xorsat: {
      f = gen_xorsat(n, m, seed).cnf;
      break;
    }
  }
  return f;
}

}  // namespace solspace

#include "solspace/enumerate.hpp"

#include <cstdlib>

#include "solspace/errors.hpp"

namespace solspace {

SolutionSet enumerate_solutions(const CnfFormula& f, uint64_t cap,
                                SolverOptions opts) {
  if (cap < 1) throw InvalidParameter("enumeration cap must be at least 1");
  SolutionSet out;
  out.num_vars = f.num_vars;
  Solver solver(f, opts);
  for (;;) {
    SolveResult res = solver.solve();
    if (res.status == Status::budget_exhausted)
      throw BudgetExhaustedError("conflict budget exhausted while enumerating");
    if (res.status == Status::unsat) {
      out.complete = true;
      break;
    }
    const Assignment& w = *res.witness;
    out.members.push_back(w);
    if (out.members.size() >= cap) break;
    Clause block(f.num_vars);
    for (int v = 0; v < f.num_vars; v++)
      block[v] = w.get(v) ? -(v + 1) : (v + 1);
    solver.add_clause(block);
  }
  out.normalize();
  return out;
}

SolutionSet brute_force(const CnfFormula& f) {
  f.check_well_formed();
  if (f.num_vars > 30)
    throw GuardRefused("brute force is limited to 30 variables");

  struct Masks {
    uint64_t pos = 0;
    uint64_t neg = 0;
  };
  std::vector<Masks> masks(f.clauses.size());
  bool has_empty = false;
  for (size_t i = 0; i < f.clauses.size(); i++) {
    if (f.clauses[i].empty()) has_empty = true;
    for (int dl : f.clauses[i]) {
      uint64_t bit = 1ull << (std::abs(dl) - 1);
      if (dl > 0)
        masks[i].pos |= bit;
      else
        masks[i].neg |= bit;
    }
  }

  SolutionSet out;
  out.num_vars = f.num_vars;
  out.complete = true;
  if (has_empty) return out;

  uint64_t total = 1ull << f.num_vars;
  uint64_t full = total - 1;
  for (uint64_t x = 0; x < total; x++) {
    bool sat = true;
    for (const Masks& m : masks) {
      if ((x & m.pos) == 0 && ((~x & full) & m.neg) == 0) {
        sat = false;
        break;
      }
    }
    if (sat) out.members.push_back(Assignment::from_word(f.num_vars, x));
  }
  // ascending scan of the value order needs no sort
  return out;
}

}  // namespace solspace

#ifndef SOLSPACE_CNF_HPP
#define SOLSPACE_CNF_HPP

#include <string>
#include <vector>

#include "solspace/assignment.hpp"

namespace solspace {

// Literals are DIMACS-signed ints: +v asserts variable v, -v its negation.
// Variables are numbered 1..num_vars.
using Clause = std::vector<int>;

enum class Family {
  random_ksat,
  twosat,
  hornsat,
  xorsat_cnf,
  tseitin,
  conjoined,
  custom,
};

const char* family_name(Family f);
Family family_from_name(const std::string& name);

struct CnfFormula {
  int num_vars = 0;
  std::vector<Clause> clauses;
  Family family = Family::custom;

  int num_clauses() const { return static_cast<int>(clauses.size()); }

  double density() const {
    return num_vars == 0 ? 0.0
                         : static_cast<double>(clauses.size()) / num_vars;
  }

  // Checks literal ranges, distinct variables within each clause, and that
  // an empty clause only appears as the lone clause of the canonical
  // trivially-false formula. Throws InvalidParameter.
  void check_well_formed() const;
};

// Plain clause-by-clause evaluation. This is the one checker every witness
// in the project is re-verified against; it never shares code with the
// solver's propagation.
bool satisfies(const CnfFormula& f, const Assignment& a);

// Index of the first falsified clause, or -1 if a satisfies f.
int first_falsified_clause(const CnfFormula& f, const Assignment& a);

// Disjoint-variable conjunction: b's variables are renumbered to live above
// a's, clause lists are concatenated.
CnfFormula conjoin(const CnfFormula& a, const CnfFormula& b);

}  // namespace solspace

#endif

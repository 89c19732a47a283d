#include "solspace/cnf.hpp"

#include <cstdlib>
#include <unordered_set>

#include "solspace/errors.hpp"

namespace solspace {

const char* family_name(Family f) {
  switch (f) {
    case Family::random_ksat: return "random-ksat";
    case Family::twosat: return "twosat";
    case Family::hornsat: return "hornsat";
    case Family::xorsat_cnf: return "xorsat-cnf";
    case Family::tseitin: return "tseitin";
    case Family::conjoined: return "conjoined";
    case Family::custom: return "custom";
  }
  return "custom";
}

Family family_from_name(const std::string& name) {
  for (Family f : {Family::random_ksat, Family::twosat, Family::hornsat,
                   Family::xorsat_cnf, Family::tseitin, Family::conjoined,
                   Family::custom}) {
    if (name == family_name(f)) return f;
  }
  throw InvalidParameter("unknown formula family: " + name);
}

void CnfFormula::check_well_formed() const {
  if (num_vars < 0) throw InvalidParameter("negative variable count");
  for (const Clause& c : clauses) {
    if (c.empty()) {
      if (clauses.size() != 1)
        throw InvalidParameter(
            "empty clause outside the canonical trivially-false formula");
      continue;
    }
    std::unordered_set<int> vars;
    for (int lit : c) {
      int v = std::abs(lit);
      if (lit == 0 || v > num_vars)
        throw InvalidParameter("literal out of range: " +
                               std::to_string(lit));
      if (!vars.insert(v).second)
        throw InvalidParameter("repeated variable in clause: " +
                               std::to_string(v));
    }
  }
}

bool satisfies(const CnfFormula& f, const Assignment& a) {
  return first_falsified_clause(f, a) < 0;
}

int first_falsified_clause(const CnfFormula& f, const Assignment& a) {
  for (size_t i = 0; i < f.clauses.size(); ++i) {
    bool sat = false;
    for (int lit : f.clauses[i]) {
      bool val = a.get(std::abs(lit) - 1);
      if ((lit > 0) == val) {
        sat = true;
        break;
      }
    }
    if (!sat) return static_cast<int>(i);
  }
  return -1;
}

CnfFormula conjoin(const CnfFormula& a, const CnfFormula& b) {
  CnfFormula out;
  out.num_vars = a.num_vars + b.num_vars;
  out.family = Family::conjoined;
  out.clauses.reserve(a.clauses.size() + b.clauses.size());
  out.clauses = a.clauses;
  for (const Clause& c : b.clauses) {
    Clause shifted;
    shifted.reserve(c.size());
    for (int lit : c) {
      int v = std::abs(lit) + a.num_vars;
      shifted.push_back(lit > 0 ? v : -v);
    }
    out.clauses.push_back(std::move(shifted));
  }
  return out;
}

}  // namespace solspace

#ifndef SOLSPACE_DIMACS_HPP
#define SOLSPACE_DIMACS_HPP

#include <iosfwd>
#include <string>

#include "solspace/cnf.hpp"

namespace solspace {

// "p cnf N M" header, one 0-terminated clause per line.
std::string dimacs_emit(const CnfFormula& f);
void dimacs_emit(const CnfFormula& f, std::ostream& out);

// Accepts comment lines ("c ...") anywhere before/between clauses and
// clauses spanning multiple lines. Throws ParseError with a line number on
// malformed input. family of the result is Family::custom.
CnfFormula dimacs_parse(const std::string& text);
CnfFormula dimacs_parse_file(const std::string& path);

void write_dimacs_file(const CnfFormula& f, const std::string& path);

}  // namespace solspace

#endif

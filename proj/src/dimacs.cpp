#include "solspace/dimacs.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "solspace/errors.hpp"

namespace solspace {

std::string dimacs_emit(const CnfFormula& f) {
  std::ostringstream out;
  dimacs_emit(f, out);
  return out.str();
}

void dimacs_emit(const CnfFormula& f, std::ostream& out) {
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const Clause& c : f.clauses) {
    for (int lit : c) out << lit << ' ';
    out << "0\n";
  }
}

namespace {

bool is_integer_token(const std::string& tok) {
  size_t i = (tok[0] == '-') ? 1 : 0;
  if (i == tok.size()) return false;
  for (; i < tok.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(tok[i]))) return false;
  return true;
}

}  // namespace

CnfFormula dimacs_parse(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  CnfFormula f;
  long declared_clauses = -1;
  bool header_seen = false;
  Clause current;
  bool in_clause = false;
  int clause_start_line = 0;

  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      if (tok == "c" || tok[0] == 'c') {
        break;  // comment: rest of line ignored
      }
      if (tok == "p") {
        if (header_seen) throw ParseError("duplicate header", line_no);
        std::string fmt;
        long nv = -1, nc = -1;
        if (!(ls >> fmt >> nv >> nc) || fmt != "cnf" || nv < 0 || nc < 0)
          throw ParseError("malformed header, expected 'p cnf N M'", line_no);
        std::string extra;
        if (ls >> extra) throw ParseError("trailing tokens in header", line_no);
        f.num_vars = static_cast<int>(nv);
        declared_clauses = nc;
        header_seen = true;
        break;
      }
      if (!header_seen)
        throw ParseError("clause data before 'p cnf' header", line_no);
      if (!is_integer_token(tok))
        throw ParseError("unexpected token '" + tok + "'", line_no);
      long lit = std::strtol(tok.c_str(), nullptr, 10);
      if (lit == 0) {
        f.clauses.push_back(current);
        current.clear();
        in_clause = false;
        continue;
      }
      if (std::labs(lit) > f.num_vars)
        throw ParseError("literal index " + std::to_string(std::labs(lit)) +
                             " exceeds declared variable count " +
                             std::to_string(f.num_vars),
                         line_no);
      if (!in_clause) {
        in_clause = true;
        clause_start_line = line_no;
      }
      current.push_back(static_cast<int>(lit));
    }
  }

  if (!header_seen) throw ParseError("missing 'p cnf' header", line_no);
  if (in_clause)
    throw ParseError("clause missing 0 terminator", clause_start_line);
  if (declared_clauses != static_cast<long>(f.clauses.size()))
    throw ParseError("header declares " + std::to_string(declared_clauses) +
                         " clauses but " + std::to_string(f.clauses.size()) +
                         " were read",
                     line_no);
  return f;
}

CnfFormula dimacs_parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return dimacs_parse(buf.str());
}

void write_dimacs_file(const CnfFormula& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  dimacs_emit(f, out);
}

}  // namespace solspace

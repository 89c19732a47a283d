#include "solspace/external.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "solspace/dimacs.hpp"
#include "solspace/errors.hpp"

namespace solspace {

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& pattern) {
    std::string tmpl = pattern;
    int fd = mkstemp(tmpl.data());
    if (fd < 0) throw BridgeError("could not create a temporary DIMACS file");
    close(fd);
    path = tmpl;
  }
  ~TempFile() { unlink(path.c_str()); }
};

}  // namespace

std::string external_solver_from_env() {
  const char* v = std::getenv("SOLSPACE_SOLVER");
  return v ? v : "";
}

SolveResult external_solve(const CnfFormula& f, const std::string& solver_cmd) {
  if (solver_cmd.empty())
    throw BridgeError("no external solver command given");
  f.check_well_formed();

  const char* tmpdir = std::getenv("TMPDIR");
  TempFile tmp(std::string(tmpdir ? tmpdir : "/tmp") + "/solspace-XXXXXX");
  write_dimacs_file(f, tmp.path);

  auto t0 = std::chrono::steady_clock::now();
  std::string cmd = solver_cmd + " " + tmp.path;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw BridgeError("could not launch: " + cmd);
  std::string output;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
  int rc = pclose(pipe);
  auto t1 = std::chrono::steady_clock::now();

  if (!WIFEXITED(rc))
    throw BridgeError("external solver did not exit normally");
  int code = WEXITSTATUS(rc);
  if (code != 0 && code != 10 && code != 20)
    throw BridgeError("external solver exited with unexpected code " +
                      std::to_string(code));

  bool saw_sat = false, saw_unsat = false, in_model = false;
  std::vector<int> model_lits;
  std::istringstream lines(output);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.rfind("s ", 0) == 0) {
      if (line.find("UNSATISFIABLE") != std::string::npos)
        saw_unsat = true;
      else if (line.find("SATISFIABLE") != std::string::npos)
        saw_sat = true;
    } else if (line.rfind("v", 0) == 0 &&
               (line.size() == 1 || line[1] == ' ')) {
      std::istringstream toks(line.substr(1));
      int lit;
      while (toks >> lit) {
        if (lit == 0) {
          in_model = false;
          break;
        }
        model_lits.push_back(lit);
        in_model = true;
      }
    }
  }
  (void)in_model;

  SolveResult res;
  res.stats.counters_valid = false;
  res.stats.wall_seconds = std::chrono::duration<double>(t1 - t0).count();

  if (saw_unsat) {
    res.status = Status::unsat;
    return res;
  }
  if (!saw_sat)
    throw BridgeError("external solver printed no status line");

  Assignment w(f.num_vars);
  std::vector<bool> fixed(static_cast<size_t>(f.num_vars), false);
  for (int lit : model_lits) {
    int v = std::abs(lit);
    if (v < 1 || v > f.num_vars)
      throw BridgeError("external model names variable " + std::to_string(v) +
                        " outside the formula");
    w.set(v - 1, lit > 0);
    fixed[static_cast<size_t>(v - 1)] = true;
  }
  for (int v = 0; v < f.num_vars; v++)
    if (!fixed[static_cast<size_t>(v)])
      throw BridgeError("external model leaves variable " +
                        std::to_string(v + 1) + " unassigned");
  if (!satisfies(f, w))
    throw BridgeError("external model fails verification");
  res.status = Status::sat;
  res.witness = w;
  return res;
}

}  // namespace solspace

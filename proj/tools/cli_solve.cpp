#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "cli_commands.hpp"
#include "solspace/dimacs.hpp"
#include "solspace/external.hpp"
#include "solspace/solver.hpp"

namespace solspace::cli {

namespace {

struct SolveArgs {
  std::string file;
  std::vector<int> assumptions;
  int64_t budget = 50'000'000;
  uint64_t seed = 0;
  bool random_polarity = false;
  std::string solver_path;
};

void print_model(const Assignment& w) {
  std::string line = "v";
  for (int i = 0; i < w.size(); i++) {
    line += ' ';
    line += std::to_string(w.get(i) ? i + 1 : -(i + 1));
    if (line.size() > 72) {
      std::puts(line.c_str());
      line = "v";
    }
  }
  line += " 0";
  std::puts(line.c_str());
}

}  // namespace

void register_solve(CLI::App& app) {
  auto args = std::make_shared<SolveArgs>();
  CLI::App* cmd = app.add_subcommand("solve", "solve a DIMACS file");
  cmd->add_option("file", args->file, "DIMACS CNF path")->required();
  cmd->add_option("--assume", args->assumptions,
                  "assumption literals (DIMACS-signed)");
  cmd->add_option("--budget", args->budget, "conflict budget")
      ->capture_default_str();
  cmd->add_option("--seed", args->seed, "solver seed")->capture_default_str();
  cmd->add_flag("--random-polarity", args->random_polarity,
                "randomize initial branching phases");
  cmd->add_option("--solver-path", args->solver_path,
                  "external solver command (overrides SOLSPACE_SOLVER)");

  cmd->callback([args]() {
    CnfFormula f = dimacs_parse_file(args->file);
    std::string bridge = args->solver_path.empty() ? external_solver_from_env()
                                                   : args->solver_path;
    SolveResult res;
    if (!bridge.empty()) {
      res = external_solve(f, bridge);
    } else {
      SolverOptions opts;
      opts.seed = args->seed;
      opts.random_polarity = args->random_polarity;
      opts.conflict_budget = args->budget;
      res = solve(f, args->assumptions, opts);
    }
    switch (res.status) {
      case Status::sat:
        std::puts("s SATISFIABLE");
        print_model(*res.witness);
        break;
      case Status::unsat:
        std::puts("s UNSATISFIABLE");
        break;
      case Status::budget_exhausted:
        std::puts("s UNKNOWN");
        break;
    }
    if (res.stats.counters_valid)
      std::printf("c conflicts %llu decisions %llu propagations %llu restarts %llu wall %.3f\n",
                  static_cast<unsigned long long>(res.stats.conflicts),
                  static_cast<unsigned long long>(res.stats.decisions),
                  static_cast<unsigned long long>(res.stats.propagations),
                  static_cast<unsigned long long>(res.stats.restarts),
                  res.stats.wall_seconds);
    else
      std::printf("c wall %.3f (external solver, no counters)\n",
                  res.stats.wall_seconds);
  });
}

}  // namespace solspace::cli

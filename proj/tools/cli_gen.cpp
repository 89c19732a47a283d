#include <cstdio>
#include <memory>
#include <string>

#include "cli_commands.hpp"
#include "solspace/dimacs.hpp"
#include "solspace/errors.hpp"
#include "solspace/gen.hpp"
#include "solspace/tseitin.hpp"

namespace solspace::cli {

namespace {

struct GenArgs {
  std::string family = "random";
  int n = 0;
  double alpha = 4.0;
  int k = 3;
  int m = 0;
  int side = 0;
  std::string charge = "odd";
  uint64_t seed = 0;
  std::string out;
};

CnfFormula make_formula(const GenArgs& a) {
  if (a.family == "random") return gen_random_ksat(a.n, a.alpha, a.k, a.seed);
  if (a.family == "twosat")
    return gen_control_family(ControlFamily::twosat, a.n, a.m, a.seed);
  if (a.family == "hornsat")
    return gen_control_family(ControlFamily::hornsat, a.n, a.m, a.seed);
  if (a.family == "xorsat")
    return gen_control_family(ControlFamily::xorsat, a.n, a.m, a.seed);
  if (a.family == "tseitin") {
    ExpanderGraph g = margulis_expander(a.side);
    bool odd;
    if (a.charge == "odd")
      odd = true;
    else if (a.charge == "even")
      odd = false;
    else
      throw InvalidParameter("charge must be odd or even");
    auto charges = random_charges(g.num_vertices(), odd, a.seed);
    return tseitin(g, charges).cnf;
  }
  throw InvalidParameter("unknown family: " + a.family);
}

}  // namespace

void register_gen(CLI::App& app) {
  auto args = std::make_shared<GenArgs>();
  CLI::App* cmd = app.add_subcommand("gen", "generate a formula as DIMACS");
  cmd->add_option("--family", args->family,
                  "random | twosat | hornsat | xorsat | tseitin")
      ->capture_default_str();
  cmd->add_option("-n,--n", args->n, "variable count");
  cmd->add_option("--alpha", args->alpha, "clause density (random family)")
      ->capture_default_str();
  cmd->add_option("-k,--k", args->k, "clause width (random family)")
      ->capture_default_str();
  cmd->add_option("-m,--m", args->m, "clause/constraint count (control families)");
  cmd->add_option("--side", args->side, "expander side (tseitin family)");
  cmd->add_option("--charge", args->charge, "odd | even (tseitin family)")
      ->capture_default_str();
  cmd->add_option("--seed", args->seed, "generator seed")->capture_default_str();
  cmd->add_option("-o,--out", args->out, "output path (default stdout)");

  cmd->callback([args]() {
    CnfFormula f = make_formula(*args);
    if (args->out.empty())
      std::fputs(dimacs_emit(f).c_str(), stdout);
    else
      write_dimacs_file(f, args->out);
  });
}

}  // namespace solspace::cli

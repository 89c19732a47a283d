#include <cstdio>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "cli_commands.hpp"
#include "json.hpp"
#include "solspace/errors.hpp"
#include "solspace/harness.hpp"

namespace solspace::cli {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidParameter("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Flag values land in `flags`; the callback starts from the config file (or
// defaults) and copies over only the flags the user actually passed, so a
// flag always wins over the file.
struct ExpCmd {
  std::string name;
  std::string config_path;
  ExperimentConfig flags;
  std::vector<std::pair<CLI::Option*, std::function<void(ExperimentConfig&)>>>
      overrides;
};

void run_and_report(const ExpCmd& cmd) {
  ExperimentConfig c;
  if (!cmd.config_path.empty()) c = parse_config(slurp(cmd.config_path));
  c.experiment = cmd.name;
  for (const auto& [opt, apply] : cmd.overrides)
    if (opt->count() > 0) apply(c);

  RunRecord rec = run(c);

  int failed = 0;
  for (const auto& it : rec.items)
    if (!it.ok) ++failed;
  std::printf("run dir: %s\n", rec.run_dir.c_str());
  std::printf("items: %zu ok, %d failed, %.1fs\n", rec.items.size() - failed,
              failed, rec.wall_seconds);
  for (const auto& it : rec.items)
    if (!it.ok) std::printf("  item %d: %s\n", it.index, it.error.c_str());

  auto data = nlohmann::json::parse(rec.data_json);
  for (const auto& [key, value] : data["summary"].items())
    std::printf("%s: %s\n", key.c_str(), value.dump().c_str());
}

ExpCmd* make_cmd(CLI::App& app, const std::string& name,
                 const std::string& desc, CLI::App** sub_out) {
  auto cmd = std::make_shared<ExpCmd>();
  cmd->name = name;
  CLI::App* sub = app.add_subcommand(name, desc);
  sub->add_option("--config", cmd->config_path,
                  "JSON config file; explicit flags override its fields");

  auto& ov = cmd->overrides;
  ExperimentConfig& f = cmd->flags;
  ov.push_back({sub->add_option("--family", f.family,
                                "random | twosat | hornsat | xorsat | tseitin"),
                [cmd](ExperimentConfig& c) { c.family = cmd->flags.family; }});
  ov.push_back({sub->add_option("-n,--n", f.n, "variable count"),
                [cmd](ExperimentConfig& c) { c.n = cmd->flags.n; }});
  ov.push_back({sub->add_option("--alpha", f.alpha, "clause density"),
                [cmd](ExperimentConfig& c) { c.alpha = cmd->flags.alpha; }});
  ov.push_back({sub->add_option("--k", f.k, "clause width"),
                [cmd](ExperimentConfig& c) { c.k = cmd->flags.k; }});
  ov.push_back(
      {sub->add_option("--m", f.m,
                       "constraint count, or expander side for tseitin"),
       [cmd](ExperimentConfig& c) { c.m = cmd->flags.m; }});
  ov.push_back({sub->add_option("--charge", f.charge,
                                "tseitin charge total: odd | even"),
                [cmd](ExperimentConfig& c) { c.charge = cmd->flags.charge; }});
  ov.push_back({sub->add_option("--budget", f.budget,
                                "conflict budget per solver call"),
                [cmd](ExperimentConfig& c) { c.budget = cmd->flags.budget; }});
  ov.push_back(
      {sub->add_option("--seed", f.master_seed, "master seed"),
       [cmd](ExperimentConfig& c) { c.master_seed = cmd->flags.master_seed; }});
  ov.push_back(
      {sub->add_option("--workers", f.workers, "worker thread count"),
       [cmd](ExperimentConfig& c) { c.workers = cmd->flags.workers; }});
  ov.push_back(
      {sub->add_option("--output-dir", f.output_dir, "where run dirs go"),
       [cmd](ExperimentConfig& c) { c.output_dir = cmd->flags.output_dir; }});

  sub->callback([cmd]() { run_and_report(*cmd); });
  *sub_out = sub;
  return cmd.get();
}

void add_seeds_flag(CLI::App* sub, ExpCmd* cmd) {
  cmd->overrides.push_back(
      {sub->add_option("--seeds", cmd->flags.seeds_per_size,
                       "instances per size"),
       [cmd](ExperimentConfig& c) {
         c.seeds_per_size = cmd->flags.seeds_per_size;
       }});
}

void add_probe_flags(CLI::App* sub, ExpCmd* cmd) {
  auto& ov = cmd->overrides;
  ov.push_back(
      {sub->add_option("--fraction", cmd->flags.fraction,
                       "fraction of variables pinned per probe"),
       [cmd](ExperimentConfig& c) { c.fraction = cmd->flags.fraction; }});
  ov.push_back({sub->add_option("--probes", cmd->flags.probes,
                                "forced probes per instance"),
                [cmd](ExperimentConfig& c) { c.probes = cmd->flags.probes; }});
  ov.push_back({sub->add_option("--tau", cmd->flags.tau,
                                "linkage threshold; -1 picks the default"),
                [cmd](ExperimentConfig& c) { c.tau = cmd->flags.tau; }});
}

}  // namespace

void register_homology(CLI::App& app) {
  CLI::App* sub = nullptr;
  ExpCmd* cmd = make_cmd(app, "homology",
                         "Betti numbers of solution-space cube complexes",
                         &sub);
  add_seeds_flag(sub, cmd);
}

void register_shatter(CLI::App& app) {
  CLI::App* sub = nullptr;
  ExpCmd* cmd = make_cmd(
      app, "shatter", "cluster structure from forced-probe samples", &sub);
  add_seeds_flag(sub, cmd);
  add_probe_flags(sub, cmd);
}

void register_drunkwalk(CLI::App& app) {
  CLI::App* sub = nullptr;
  ExpCmd* cmd = make_cmd(app, "drunkwalk",
                         "hit rates of four local-move strategies", &sub);
  add_probe_flags(sub, cmd);
  cmd->overrides.push_back(
      {sub->add_option("--steps", cmd->flags.steps, "walk step budget"),
       [cmd](ExperimentConfig& c) { c.steps = cmd->flags.steps; }});
  cmd->overrides.push_back(
      {sub->add_option("--trials", cmd->flags.trials, "walks per strategy"),
       [cmd](ExperimentConfig& c) { c.trials = cmd->flags.trials; }});
}

void register_xortest(CLI::App& app) {
  CLI::App* sub = nullptr;
  ExpCmd* cmd = make_cmd(app, "xortest",
                         "XOR-closure violation rate over solution triples",
                         &sub);
  add_seeds_flag(sub, cmd);
  cmd->overrides.push_back(
      {sub->add_option("--triples", cmd->flags.triples,
                       "solution triples to test per instance"),
       [cmd](ExperimentConfig& c) { c.triples = cmd->flags.triples; }});
}

void register_scaling(CLI::App& app) {
  CLI::App* sub = nullptr;
  ExpCmd* cmd = make_cmd(app, "scaling",
                         "refutation cost versus instance size", &sub);
  add_seeds_flag(sub, cmd);
  cmd->overrides.push_back(
      {sub->add_option("--sizes", cmd->flags.sizes,
                       "instance sizes, ascending")
           ->delimiter(','),
       [cmd](ExperimentConfig& c) { c.sizes = cmd->flags.sizes; }});
}

}  // namespace solspace::cli

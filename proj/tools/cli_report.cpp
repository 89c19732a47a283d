#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>

#include "cli_commands.hpp"
#include "json.hpp"
#include "solspace/errors.hpp"

namespace solspace::cli {

namespace {

nlohmann::json load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidParameter("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return nlohmann::json::parse(ss.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidParameter(path + ": not valid JSON: " + e.what());
  }
}

void print_report(const std::string& run_dir) {
  nlohmann::json runj = load(run_dir + "/run.json");
  nlohmann::json data = load(run_dir + "/data.json");

  const auto& cfg = runj["config"];
  std::printf("experiment: %s\n",
              cfg.value("experiment", std::string("?")).c_str());
  std::printf("family: %s  n=%d  alpha=%.3f  master_seed=%llu\n",
              cfg.value("family", std::string("?")).c_str(),
              cfg.value("n", 0), cfg.value("alpha", 0.0),
              static_cast<unsigned long long>(cfg.value("master_seed", 0ull)));
  std::printf("tool: %s  solver: %s\n",
              runj.value("tool_version", std::string("?")).c_str(),
              runj.value("solver_fingerprint", std::string("?")).c_str());
  std::printf("finished: %s UTC in %.1fs\n",
              runj.value("timestamp_utc", std::string("?")).c_str(),
              runj.value("wall_seconds", 0.0));

  int ok = 0, failed = 0;
  for (const auto& it : runj["items"]) {
    if (it.value("ok", false))
      ++ok;
    else
      ++failed;
  }
  std::printf("items: %d ok, %d failed\n", ok, failed);
  for (const auto& it : runj["items"])
    if (!it.value("ok", false))
      std::printf("  item %d: %s\n", it.value("index", -1),
                  it.value("error", std::string()).c_str());

  if (data.contains("regime"))
    std::printf("regime: %s (alpha_c = %.3f)\n",
                data.value("regime", std::string()).c_str(),
                data.value("alpha_critical", 0.0));
  std::printf("rows: %zu\n", data["rows"].size());
  for (const auto& [key, value] : data["summary"].items())
    std::printf("%s: %s\n", key.c_str(), value.dump().c_str());
}

}  // namespace

void register_report(CLI::App& app) {
  auto dir = std::make_shared<std::string>();
  CLI::App* cmd =
      app.add_subcommand("report", "summarize a finished run directory");
  cmd->add_option("dir", *dir, "run directory holding run.json and data.json")
      ->required();
  cmd->callback([dir]() { print_report(*dir); });
}

}  // namespace solspace::cli

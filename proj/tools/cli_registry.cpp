#include "cli_commands.hpp"

namespace solspace::cli {

void register_all(CLI::App& app) {
  register_gen(app);
  register_solve(app);
  register_homology(app);
  register_shatter(app);
  register_drunkwalk(app);
  register_xortest(app);
  register_scaling(app);
  register_report(app);
}

}  // namespace solspace::cli

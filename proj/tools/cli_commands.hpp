#ifndef SOLSPACE_CLI_COMMANDS_HPP
#define SOLSPACE_CLI_COMMANDS_HPP

#include "CLI11.hpp"

namespace solspace::cli {

void register_gen(CLI::App& app);
void register_solve(CLI::App& app);
void register_homology(CLI::App& app);
void register_shatter(CLI::App& app);
void register_drunkwalk(CLI::App& app);
void register_xortest(CLI::App& app);
void register_scaling(CLI::App& app);
void register_report(CLI::App& app);

void register_all(CLI::App& app);

}  // namespace solspace::cli

#endif

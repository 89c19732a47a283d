#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"
#include "cli_commands.hpp"
#include "solspace/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"solution-space laboratory for CNF formulas"};
  app.require_subcommand(1);

  solspace::cli::register_all(app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const solspace::InvalidParameter& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const solspace::GuardRefused& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const solspace::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}

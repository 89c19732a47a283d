#ifndef SOLSPACE_ERRORS_HPP
#define SOLSPACE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace solspace {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad argument caught before any work starts.
struct InvalidParameter : Error {
  using Error::Error;
};

// Input exceeds a hard feasibility guard (e.g. brute force above 30 vars).
struct GuardRefused : Error {
  using Error::Error;
};

// Well-formed input that this tool deliberately does not handle.
struct UnsupportedInput : Error {
  using Error::Error;
};

// DIMACS (or config) text rejected; carries the 1-based line number.
struct ParseError : Error {
  ParseError(const std::string& msg, int line)
      : Error(msg + " (line " + std::to_string(line) + ")"), line(line) {}
  int line;
};

// External solver subprocess misbehaved.
struct BridgeError : Error {
  using Error::Error;
};

// Solver hit its conflict budget where a definite answer was required.
struct BudgetExhaustedError : Error {
  using Error::Error;
};

// Not enough distinct solutions to run a sampling protocol.
struct InsufficientSample : Error {
  using Error::Error;
};

// Too few usable points to fit a scaling model.
struct FitRefused : Error {
  using Error::Error;
};

// Complex exceeds the dense GF(2) elimination size bound.
struct ComplexTooLarge : Error {
  using Error::Error;
};

}  // namespace solspace

#endif

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace etpa {

// Root bracketing failed: the function does not change sign on the interval.
struct BracketError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Regression input is degenerate (e.g. all abscissae equal).
struct SingularFitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A ratio against a vanishing reference value was requested.
struct UndefinedRatioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input file; `line` is 1-based.
struct ParseError : std::runtime_error {
  ParseError(const std::string& what, std::size_t line_no)
      : std::runtime_error(what + " (line " + std::to_string(line_no) + ")"),
        line(line_no) {}
  std::size_t line;
};

}  // namespace etpa

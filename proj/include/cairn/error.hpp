#pragma once

#include <stdexcept>
#include <string>

namespace cairn {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed scene input; carries a line number when one is known.
struct ParseError : Error {
  ParseError(const std::string& what, int line_number = -1)
      : Error(line_number >= 0 ? what + " (line " + std::to_string(line_number) + ")"
                               : what),
        line(line_number) {}
  int line;
};

// The observed scene admits no static-equilibrium explanation even after the
// relaxation ladder; maps to exit code 2 in the CLI.
struct SceneNotExplained : Error {
  using Error::Error;
};

}  // namespace cairn

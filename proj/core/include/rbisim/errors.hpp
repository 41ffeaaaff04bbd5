#pragma once

#include <stdexcept>
#include <string>

namespace rbisim {

// Budget overruns are always hard errors, never silent approximations.
struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

// A pair/quad universe handed to a fixpoint routine was not closed under
// the relevant successor maps.
struct NotClosed : std::runtime_error {
  explicit NotClosed(const std::string& what) : std::runtime_error(what) {}
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& what, int line, int col)
      : std::runtime_error(what + " at " + std::to_string(line) + ":" +
                           std::to_string(col)),
        line(line), col(col) {}
  int line;
  int col;
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rbisim

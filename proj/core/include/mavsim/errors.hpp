#pragma once

#include <stdexcept>
#include <string>

namespace mavsim {

// Raised for bad user input: non-exact unit conversion, infeasible density,
// violated parameter constraints. Message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Raised when a model invariant breaks mid-run (overlap, train geometry,
// conservation). Indicates a rule bug; the run must abort.
class InternalFault : public std::logic_error {
 public:
  explicit InternalFault(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace mavsim

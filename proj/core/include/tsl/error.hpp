#pragma once

#include <stdexcept>
#include <string>

namespace tsl {

/// Malformed or contract-violating input (maps to CLI exit code 2).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A configured resource cap was exceeded (maps to CLI exit code 2).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Resource caps. Each can be overridden through the TSL_MAX_LEVEL
/// environment variable, which raises both level caps to its value.
struct Caps {
  int generator_dimension = 10;
  int ts_level = 16;
  std::size_t max_generators = 200000;

  static Caps from_env();
};

}  // namespace tsl

#include "tsl/error.hpp"

#include <cstdlib>
#include <string>

namespace tsl {

Caps Caps::from_env() {
  Caps caps;
  if (const char* env = std::getenv("TSL_MAX_LEVEL"); env != nullptr && *env != '\0') {
    int level = 0;
    try {
      level = std::stoi(env);
    } catch (const std::exception&) {
      throw InputError(std::string("TSL_MAX_LEVEL: not an integer: ") + env);
    }
    if (level < 1 || level > 62) throw InputError("TSL_MAX_LEVEL must lie in [1, 62]");
    caps.generator_dimension = level;
    caps.ts_level = level;
  }
  return caps;
}

}  // namespace tsl

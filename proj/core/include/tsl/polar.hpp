#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tsl/gauge.hpp"

namespace tsl {

struct PolarViolation {
  std::string kind;
  RationalVector functional;
  Rational ts_value;
  Rational support;
};

struct PolarReport {
  int level = 0;
  std::size_t generators = 0;
  std::size_t vertices = 0;
  std::size_t samples = 0;
  std::vector<PolarViolation> violations;

  [[nodiscard]] bool ok() const { return violations.empty(); }
};

/// Brute-force check, at level <= 5, that the polar of the generated unit
/// ball coincides with the unit ball of the implicit norm:
///  (a) every vertex of {f >= 0 : <f, g> <= 1 for all generators g} with a
///      tight generator constraint has implicit norm exactly 1;
///  (b) on the grid {-1, -1/2, 0, 1/2, 1}^level and on seeded random
///      functionals, max_g <|f|, g> equals the implicit norm of f.
PolarReport polar_oracle(const AdmissibilitySystem& system, int level, const Theta& theta = Theta::half(),
                         std::uint64_t seed = 1, std::size_t random_samples = 200,
                         const Caps& caps = Caps::from_env());

/// Vertices of {f >= 0 : <f, g> <= 1 for every g} in dimension `dim`
/// (coordinates 1..dim), by brute-force basis enumeration.
std::vector<RationalVector> polar_vertices(const std::vector<RationalVector>& generators, int dim);

}  // namespace tsl

#pragma once

#include <vector>

#include "tsl/error.hpp"
#include "tsl/families.hpp"
#include "tsl/theta.hpp"
#include "tsl/vector.hpp"

namespace tsl {

/// How a generator was produced: either a basis vector e_i, or
/// θ·Σ restrict(B_k, parent_k) for an admissible block family B_1 < ... < B_n
/// witnessed by `witness`. Parents are archive ids; -1 stands for 0.
struct GeneratorDerivation {
  Index basis = 0;
  Mask witness = 0;
  std::vector<std::vector<Index>> blocks;
  std::vector<int> parents;

  [[nodiscard]] bool is_basis() const { return basis != 0; }
};

struct GeneratorRecord {
  RationalVector vector;
  GeneratorDerivation derivation;
};

/// Nonnegative generators of the unit ball restricted to span{e_i : i ∈ window}:
/// its absolutely convex, solid hull is exactly that restriction.
struct GeneratorSet {
  std::vector<Index> window;
  Rational theta;
  /// Canonical antichain under coordinatewise domination, sorted
  /// lexicographically (descending) on the window coordinates.
  std::vector<RationalVector> generators;
  /// Archive id of each generator.
  std::vector<int> ids;
  /// Every vector accepted during the closure, in acceptance order. Parents
  /// always precede children.
  std::vector<GeneratorRecord> archive;

  [[nodiscard]] Index level() const { return window.empty() ? 0 : window.back(); }
  [[nodiscard]] std::size_t size() const { return generators.size(); }
};

/// Generators on the window {1, ..., level}.
GeneratorSet enumerate_generators(const AdmissibilitySystem& system, int level, const Theta& theta = Theta::half(),
                                  const Caps& caps = Caps::from_env());

/// Generators on an arbitrary finite window. The cap applies to the window
/// size. Closure runs over block families induced by the witness sets of
/// the restriction at level max(window).
GeneratorSet enumerate_generators_on(const AdmissibilitySystem& system, std::vector<Index> window,
                                     const Theta& theta = Theta::half(), const Caps& caps = Caps::from_env());

/// Same, against an explicit restriction at level >= max(window).
GeneratorSet enumerate_generators_on(std::span<const Mask> restriction, std::vector<Index> window,
                                     const Theta& theta = Theta::half(), const Caps& caps = Caps::from_env());

/// Verifies a derivation record against the system: admissible blocks, and
/// vector == θ·Σ restrict(B_k, parent_k). `parents` holds the already
/// verified parent vectors aligned with derivation.parents (nullptr for -1).
/// Returns an error description, or an empty string.
std::string check_derivation(const GeneratorRecord& record, const AdmissibilitySystem& system, const Theta& theta,
                             const std::vector<const RationalVector*>& parents);

}  // namespace tsl

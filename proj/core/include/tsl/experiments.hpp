#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tsl/gauge.hpp"
#include "tsl/treespace.hpp"

namespace tsl {

/// Two-sided block inequality along a branch with partial sums m1 < m2 < ...:
/// blocks E0 = [1, m1-1], Ek = [mk, m(k+1)-1], and
///   max_k |Ek x| <= |x| <= |E0 x| + (1/θ)·max_k |Ek x|   (k >= 1),
/// all norms being tss gauges.
struct C0BlocksResult {
  std::vector<Index> m;
  /// E0 first (possibly empty, i.e. lo > hi), then E1, E2, ...
  std::vector<std::pair<Index, Index>> blocks;
  std::vector<Rational> block_values;
  Rational value;
  Rational lower;
  Rational upper;

  [[nodiscard]] bool holds() const { return lower <= value && value <= upper; }
  [[nodiscard]] nlohmann::json to_json() const;
};

/// Throws InputError when the branch has non-positive entries, when a finite
/// branch's partial sums stop short of max supp x, or when {m1, ..., mr} is
/// not in the restriction of the system.
C0BlocksResult experiment_c0_blocks(const AdmissibilitySystem& system, const PeriodicSequence& branch,
                                    const RationalVector& x, const Theta& theta = Theta::half(),
                                    const Caps& caps = Caps::from_env());

struct DichotomyRow {
  std::string series;
  int n = 0;
  Rational value;
  Rational bound;
  /// The certificate of `value` passed the independent checker.
  bool certified = false;
  bool holds = false;
};

struct DichotomyTable {
  std::vector<DichotomyRow> rows;

  [[nodiscard]] bool ok() const;
  /// Columns: series,n,value,value_approx,bound,bound_approx,certified,holds.
  [[nodiscard]] std::string csv() const;
};

/// Series "well_founded": gauge(e_{n+1} + ... + e_{2n}) against the lower
/// bound θ·n, n = 1..nmax. Series "branch": gauge(e_{m1} + ... + e_{mk})
/// along the first designated branch of `branch_tree` under M_T, against the
/// block-inequality upper bound, k = 1..kmax.
DichotomyTable experiment_dichotomy(const AdmissibilitySystem& well_founded, const TreeSpec& branch_tree, int nmax,
                                    int kmax, const Theta& theta = Theta::half(), const Caps& caps = Caps::from_env());

struct L1ConstantRow {
  int k = 0;
  Rational c;
  std::size_t patterns = 0;
};

struct L1ConstantResult {
  /// Dual tree norm of each input functional before normalization.
  std::vector<Rational> scales;
  std::vector<L1ConstantRow> rows;

  /// Every constant lies in (0, 1].
  [[nodiscard]] bool ok() const;
  /// Columns: k,c,c_approx,patterns.
  [[nodiscard]] std::string csv() const;
};

/// For k = 1..K: the minimum over sign patterns of the dual tree norm of
/// Σ_{j<=k} ε_j f_j, divided by k, after normalizing every f_j to dual norm 1.
/// The first sign is fixed to +1. Exhaustive mode visits all 2^(k-1)
/// patterns; otherwise `samples` seeded random patterns per k.
/// Throws InputError on zero or overlapping functionals.
L1ConstantResult experiment_l1_constant(const Tree2Spec& tree, const std::vector<TreeVector>& functionals,
                                        bool exhaustive, std::uint64_t seed = 1, std::size_t samples = 32,
                                        const Theta& theta = Theta::half(), const Caps& caps = Caps::from_env());

/// Fixed-point decimal rendering used in CSV approximation columns.
std::string decimal(const Rational& r);

}  // namespace tsl

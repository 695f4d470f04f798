#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tsl/rational.hpp"
#include "tsl/vector.hpp"

namespace tsl {

/// minimize objective . y  subject to  constraints * y = rhs,
/// y_j >= 0 wherever nonnegative[j] is set (other variables are free).
struct LPProblem {
  std::vector<Rational> objective;
  std::vector<std::vector<Rational>> constraints;
  std::vector<Rational> rhs;
  std::vector<bool> nonnegative;

  [[nodiscard]] std::size_t num_variables() const { return objective.size(); }
  [[nodiscard]] std::size_t num_constraints() const { return rhs.size(); }
  /// Throws InputError when the dimensions disagree.
  void validate() const;
};

enum class LPStatus { optimal, infeasible, unbounded };

std::string to_string(LPStatus status);

struct LPSolution {
  LPStatus status = LPStatus::infeasible;
  Rational value;
  std::vector<Rational> primal;
  /// One multiplier per equality constraint.
  std::vector<Rational> dual;
};

/// Exact two-phase primal simplex with Bland's rule. On an optimal result the
/// primal and dual assignments have already passed `verify_optimality`.
LPSolution lp_solve(const LPProblem& problem);

/// Re-substitution check of an optimal solution: exact primal feasibility,
/// exact dual feasibility, equal objectives. Returns a description of the
/// first violated condition, or nullopt.
std::optional<std::string> verify_optimality(const LPProblem& problem, const LPSolution& solution);

struct L1Combination {
  Rational value;
  /// Coefficient per generator position; zero coefficients are omitted.
  std::map<std::size_t, Rational> coefficients;
};

/// Minimal sum of |c_v| with sum c_v v = x over the given generators, or
/// nullopt when x is outside their span.
std::optional<L1Combination> min_l1_combination(const RationalVector& x,
                                                const std::vector<RationalVector>& generators);

}  // namespace tsl

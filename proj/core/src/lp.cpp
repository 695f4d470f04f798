#include "tsl/lp.hpp"

#include <set>

#include "tsl/error.hpp"

namespace tsl {

void LPProblem::validate() const {
  const std::size_t n = objective.size();
  if (nonnegative.size() != n) throw InputError("LP: nonnegativity flags do not match variable count");
  if (constraints.size() != rhs.size()) throw InputError("LP: constraint rows do not match right-hand side");
  for (const auto& row : constraints) {
    if (row.size() != n) throw InputError("LP: constraint row has wrong length");
  }
}

std::string to_string(LPStatus status) {
  switch (status) {
    case LPStatus::optimal: return "optimal";
    case LPStatus::infeasible: return "infeasible";
    case LPStatus::unbounded: return "unbounded";
  }
  return "unknown";
}

namespace {

// Dense tableau over mpq. Columns: structural, then one artificial per row,
// then the right-hand side. The reduced-cost row is kept explicitly.
class Tableau {
 public:
  Tableau(const LPProblem& p) : rows_(p.num_constraints()) {
    for (std::size_t j = 0; j < p.num_variables(); ++j) {
      column_of_.push_back(structural_cost_.size());
      structural_cost_.push_back(p.objective[j].raw());
      origin_.push_back({j, +1});
      if (!p.nonnegative[j]) {
        structural_cost_.push_back(-p.objective[j].raw());
        origin_.push_back({j, -1});
      }
    }
    structurals_ = structural_cost_.size();
    width_ = structurals_ + rows_ + 1;
    table_.assign(rows_, std::vector<mpq_class>(width_, 0));
    flip_.assign(rows_, 1);
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      flip_[i] = p.rhs[i].sign() < 0 ? -1 : 1;
      for (std::size_t k = 0; k < structurals_; ++k) {
        const auto [j, s] = origin_[k];
        table_[i][k] = p.constraints[i][j].raw() * (s * flip_[i]);
      }
      table_[i][structurals_ + i] = 1;
      table_[i][width_ - 1] = p.rhs[i].raw() * flip_[i];
      basis_[i] = structurals_ + i;
    }
  }

  LPSolution solve(std::size_t num_variables) {
    LPSolution out;
    // Phase 1: minimise the sum of artificials.
    std::vector<mpq_class> cost(width_ - 1, 0);
    for (std::size_t i = 0; i < rows_; ++i) cost[structurals_ + i] = 1;
    set_costs(cost);
    run(/*allow_artificial=*/true);
    if (sgn(reduced_[width_ - 1]) != 0) {
      out.status = LPStatus::infeasible;
      return out;
    }
    drive_out_artificials();

    std::fill(cost.begin(), cost.end(), 0);
    for (std::size_t k = 0; k < structurals_; ++k) cost[k] = structural_cost_[k];
    set_costs(cost);
    if (!run(/*allow_artificial=*/false)) {
      out.status = LPStatus::unbounded;
      return out;
    }

    out.status = LPStatus::optimal;
    std::vector<mpq_class> values(structurals_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < structurals_) values[basis_[i]] = table_[i][width_ - 1];
    }
    out.primal.assign(num_variables, Rational(0));
    for (std::size_t k = 0; k < structurals_; ++k) {
      const auto [j, s] = origin_[k];
      out.primal[j] += Rational(mpq_class(values[k] * s));
    }
    // Reduced cost of artificial i is -y'_i; undo the row flip.
    out.dual.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      out.dual[i] = Rational(mpq_class(-reduced_[structurals_ + i] * flip_[i]));
    }
    out.value = Rational(mpq_class(-reduced_[width_ - 1]));
    return out;
  }

 private:
  void set_costs(const std::vector<mpq_class>& cost) {
    reduced_.assign(width_, 0);
    for (std::size_t k = 0; k + 1 < width_; ++k) reduced_[k] = cost[k];
    for (std::size_t i = 0; i < rows_; ++i) {
      const mpq_class& cb = cost[basis_[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t k = 0; k < width_; ++k) reduced_[k] -= cb * table_[i][k];
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const mpq_class inv = 1 / table_[r][c];
    for (auto& v : table_[r]) v *= inv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || sgn(table_[i][c]) == 0) continue;
      const mpq_class factor = table_[i][c];
      for (std::size_t k = 0; k < width_; ++k) {
        if (sgn(table_[r][k]) != 0) table_[i][k] -= factor * table_[r][k];
      }
    }
    if (sgn(reduced_[c]) != 0) {
      const mpq_class factor = reduced_[c];
      for (std::size_t k = 0; k < width_; ++k) {
        if (sgn(table_[r][k]) != 0) reduced_[k] -= factor * table_[r][k];
      }
    }
    basis_[r] = c;
  }

  // Returns false on unboundedness.
  bool run(bool allow_artificial) {
    const std::size_t limit = allow_artificial ? width_ - 1 : structurals_;
    for (;;) {
      std::size_t entering = limit;
      for (std::size_t k = 0; k < limit; ++k) {
        if (sgn(reduced_[k]) < 0) {
          entering = k;
          break;
        }
      }
      if (entering == limit) return true;
      std::size_t leaving = rows_;
      mpq_class best_ratio;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (sgn(table_[i][entering]) <= 0) continue;
        mpq_class ratio = table_[i][width_ - 1] / table_[i][entering];
        if (leaving == rows_ || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[leaving])) {
          leaving = i;
          best_ratio = std::move(ratio);
        }
      }
      if (leaving == rows_) return false;
      pivot(leaving, entering);
    }
  }

  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (basis_[i] < structurals_) continue;
      for (std::size_t k = 0; k < structurals_; ++k) {
        if (sgn(table_[i][k]) != 0) {
          pivot(i, k);
          break;
        }
      }
      // Otherwise the row is redundant; its artificial stays basic at zero
      // and can never leave because no structural column touches the row.
    }
  }

  struct Origin {
    std::size_t variable;
    int sign;
  };

  std::size_t rows_;
  std::size_t structurals_ = 0;
  std::size_t width_ = 0;
  std::vector<std::size_t> column_of_;
  std::vector<mpq_class> structural_cost_;
  std::vector<Origin> origin_;
  std::vector<std::vector<mpq_class>> table_;
  std::vector<mpq_class> reduced_;
  std::vector<int> flip_;
  std::vector<std::size_t> basis_;
};

}  // namespace

LPSolution lp_solve(const LPProblem& problem) {
  problem.validate();
  Tableau tableau(problem);
  LPSolution solution = tableau.solve(problem.num_variables());
  if (solution.status == LPStatus::optimal) {
    if (auto failure = verify_optimality(problem, solution)) {
      throw std::logic_error("lp_solve produced an invalid certificate: " + *failure);
    }
  }
  return solution;
}

std::optional<std::string> verify_optimality(const LPProblem& p, const LPSolution& s) {
  if (s.status != LPStatus::optimal) return "solution is not optimal";
  const std::size_t n = p.num_variables();
  const std::size_t m = p.num_constraints();
  if (s.primal.size() != n || s.dual.size() != m) return "certificate dimensions";
  for (std::size_t j = 0; j < n; ++j) {
    if (p.nonnegative[j] && s.primal[j].sign() < 0) return "primal variable " + std::to_string(j) + " negative";
  }
  for (std::size_t i = 0; i < m; ++i) {
    Rational lhs(0);
    for (std::size_t j = 0; j < n; ++j) {
      if (!p.constraints[i][j].is_zero() && !s.primal[j].is_zero()) lhs += p.constraints[i][j] * s.primal[j];
    }
    if (lhs != p.rhs[i]) return "primal row " + std::to_string(i) + " violated";
  }
  for (std::size_t j = 0; j < n; ++j) {
    Rational reduced = p.objective[j];
    for (std::size_t i = 0; i < m; ++i) {
      if (!p.constraints[i][j].is_zero()) reduced -= p.constraints[i][j] * s.dual[i];
    }
    if (p.nonnegative[j] ? reduced.sign() < 0 : !reduced.is_zero()) {
      return "dual constraint for variable " + std::to_string(j) + " violated";
    }
  }
  Rational primal_obj(0);
  for (std::size_t j = 0; j < n; ++j) primal_obj += p.objective[j] * s.primal[j];
  Rational dual_obj(0);
  for (std::size_t i = 0; i < m; ++i) dual_obj += p.rhs[i] * s.dual[i];
  if (primal_obj != dual_obj) return "objectives differ: " + primal_obj.str() + " vs " + dual_obj.str();
  if (primal_obj != s.value) return "reported value differs from primal objective";
  return std::nullopt;
}

std::optional<L1Combination> min_l1_combination(const RationalVector& x,
                                                const std::vector<RationalVector>& generators) {
  if (generators.empty()) throw InputError("min_l1_combination: empty generator list");
  std::set<Index> rows_set;
  for (const auto& [i, v] : x) rows_set.insert(i);
  for (const auto& g : generators) {
    for (const auto& [i, v] : g) rows_set.insert(i);
  }
  const std::vector<Index> rows(rows_set.begin(), rows_set.end());
  const std::size_t k = generators.size();

  // Variables: c+_0..c+_{k-1}, c-_0..c-_{k-1}.
  LPProblem p;
  p.objective.assign(2 * k, Rational(1));
  p.nonnegative.assign(2 * k, true);
  for (Index i : rows) {
    std::vector<Rational> row(2 * k, Rational(0));
    for (std::size_t g = 0; g < k; ++g) {
      const Rational v = generators[g][i];
      row[g] = v;
      row[k + g] = -v;
    }
    p.constraints.push_back(std::move(row));
    p.rhs.push_back(x[i]);
  }
  const LPSolution s = lp_solve(p);
  if (s.status != LPStatus::optimal) return std::nullopt;
  L1Combination out;
  out.value = s.value;
  for (std::size_t g = 0; g < k; ++g) {
    const Rational c = s.primal[g] - s.primal[k + g];
    if (!c.is_zero()) out.coefficients.emplace(g, c);
  }
  return out;
}

}  // namespace tsl

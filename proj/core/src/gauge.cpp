#include "tsl/gauge.hpp"

#include <set>

#include "tsl/lp.hpp"

namespace tsl {

GaugeResult tss_gauge(const RationalVector& x, const AdmissibilitySystem& system, const Theta& theta,
                      const Caps& caps) {
  GaugeResult out;
  if (x.is_zero()) return out;
  const auto window = x.support();
  const GeneratorSet gens = enumerate_generators_on(system, window, theta, caps);
  const std::size_t d = window.size();
  const std::size_t k = gens.size();

  // min Σ c_g  s.t.  Σ c_g g_i - s_i = |x_i|,  c, s >= 0.
  LPProblem lp;
  lp.objective.assign(k + d, Rational(0));
  std::fill(lp.objective.begin(), lp.objective.begin() + static_cast<long>(k), Rational(1));
  lp.nonnegative.assign(k + d, true);
  for (std::size_t p = 0; p < d; ++p) {
    std::vector<Rational> row(k + d, Rational(0));
    for (std::size_t g = 0; g < k; ++g) row[g] = gens.generators[g][window[p]];
    row[k + p] = Rational(-1);
    lp.constraints.push_back(std::move(row));
    lp.rhs.push_back(x[window[p]].abs());
  }
  const LPSolution sol = lp_solve(lp);
  if (sol.status != LPStatus::optimal) throw std::logic_error("tss_gauge: covering LP not optimal");

  GaugeCertificate& cert = out.certificate;
  out.value = sol.value;
  cert.value = sol.value;
  cert.window = window;

  // Covered amount per coordinate, then shrink each used generator so the
  // terms sum to x exactly.
  std::vector<Rational> covered(d, Rational(0));
  for (std::size_t g = 0; g < k; ++g) {
    if (sol.primal[g].is_zero()) continue;
    for (std::size_t p = 0; p < d; ++p) covered[p] += sol.primal[g] * gens.generators[g][window[p]];
  }
  std::set<int> needed;
  for (std::size_t g = 0; g < k; ++g) {
    if (sol.primal[g].is_zero()) continue;
    DecompositionTerm term;
    term.coefficient = sol.primal[g];
    term.generator = gens.ids[g];
    for (std::size_t p = 0; p < d; ++p) {
      const Rational xi = x[window[p]];
      const Rational gi = gens.generators[g][window[p]];
      if (gi.is_zero()) continue;
      term.vector.set(window[p], xi / covered[p] * gi);
    }
    cert.decomposition.push_back(std::move(term));
    needed.insert(gens.ids[g]);
  }
  // Close the used set under parents; ids decrease along parent links.
  std::vector<int> stack(needed.begin(), needed.end());
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    cert.derivations.emplace(id, gens.archive[id]);
    for (int parent : gens.archive[id].derivation.parents) {
      if (parent >= 0 && needed.insert(parent).second) stack.push_back(parent);
    }
  }
  for (std::size_t p = 0; p < d; ++p) {
    const Rational& y = sol.dual[p];
    if (!y.is_zero()) cert.dual.set(window[p], x[window[p]].sign() < 0 ? -y : y);
  }
  return out;
}

GaugeCheck check_gauge_certificate(const RationalVector& x, const AdmissibilitySystem& system, const Theta& theta,
                                   const GaugeCertificate& cert, const Caps& caps) {
  GaugeCheck out;
  auto fail = [&](std::string msg) {
    out.message = std::move(msg);
    return out;
  };
  if (x.is_zero()) {
    if (!cert.value.is_zero() || !cert.decomposition.empty()) return fail("zero vector needs value 0");
    out.ok = true;
    return out;
  }
  // Every cited derivation must check out, parents first.
  for (const auto& [id, record] : cert.derivations) {
    std::vector<const RationalVector*> parents;
    for (int parent : record.derivation.parents) {
      if (parent < 0) {
        parents.push_back(nullptr);
        continue;
      }
      const auto it = cert.derivations.find(parent);
      if (it == cert.derivations.end() || parent >= id) {
        return fail("derivation " + std::to_string(id) + " cites missing parent " + std::to_string(parent));
      }
      parents.push_back(&it->second.vector);
    }
    if (auto err = check_derivation(record, system, theta, parents); !err.empty()) {
      return fail("derivation " + std::to_string(id) + ": " + err);
    }
  }
  RationalVector sum;
  Rational total(0);
  for (const auto& term : cert.decomposition) {
    if (term.coefficient.sign() <= 0) return fail("decomposition coefficient must be positive");
    const auto it = cert.derivations.find(term.generator);
    if (it == cert.derivations.end()) return fail("decomposition cites unknown generator");
    if (!dominated_abs(term.vector, it->second.vector)) {
      return fail("decomposition vector not dominated by generator " + std::to_string(term.generator));
    }
    sum += term.coefficient * term.vector;
    total += term.coefficient;
  }
  if (sum != x) return fail("decomposition does not sum to x");
  if (total != cert.value) return fail("decomposition coefficients sum to " + total.str() + ", not the value");
  if (inner(cert.dual, x) != cert.value) return fail("dual functional does not attain the value on x");
  const Rational dual_norm = ts_norm(cert.dual, system, theta, caps).value;
  if (Rational(1) < dual_norm) return fail("dual functional has implicit norm " + dual_norm.str() + " > 1");
  out.ok = true;
  return out;
}

Rational support_value(const RationalVector& f, const GeneratorSet& generators) {
  const RationalVector a = f.abs();
  Rational best(0);
  for (const auto& g : generators.generators) best = max(best, inner(a, g));
  return best;
}

}  // namespace tsl

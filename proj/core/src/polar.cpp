#include "tsl/polar.hpp"

#include <functional>
#include <optional>
#include <random>
#include <set>

namespace tsl {

namespace {

// Solves the square system rows * f = rhs; nullopt when singular.
std::optional<std::vector<mpq_class>> solve_square(std::vector<std::vector<mpq_class>> a, std::vector<mpq_class> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && sgn(a[piv][c]) == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || sgn(a[r][c]) == 0) continue;
      const mpq_class factor = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= factor * a[c][k];
      b[r] -= factor * b[c];
    }
  }
  for (std::size_t r = 0; r < n; ++r) b[r] /= a[r][r];
  return b;
}

}  // namespace

std::vector<RationalVector> polar_vertices(const std::vector<RationalVector>& generators, int dim) {
  // Constraint rows: generators (<= 1), then -e_i (<= 0).
  std::vector<std::vector<mpq_class>> rows;
  std::vector<mpq_class> rhs;
  for (const auto& g : generators) {
    std::vector<mpq_class> row(dim);
    for (int i = 0; i < dim; ++i) row[i] = g[i + 1].raw();
    rows.push_back(std::move(row));
    rhs.emplace_back(1);
  }
  for (int i = 0; i < dim; ++i) {
    std::vector<mpq_class> row(dim, 0);
    row[i] = -1;
    rows.push_back(std::move(row));
    rhs.emplace_back(0);
  }
  std::set<std::vector<mpq_class>> found;
  std::vector<std::size_t> pick;
  auto feasible = [&](const std::vector<mpq_class>& f) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      mpq_class lhs = 0;
      for (int i = 0; i < dim; ++i) lhs += rows[r][i] * f[i];
      if (lhs > rhs[r]) return false;
    }
    return true;
  };
  std::function<void(std::size_t)> choose = [&](std::size_t start) {
    if (pick.size() == static_cast<std::size_t>(dim)) {
      std::vector<std::vector<mpq_class>> a;
      std::vector<mpq_class> b;
      for (std::size_t r : pick) {
        a.push_back(rows[r]);
        b.push_back(rhs[r]);
      }
      if (auto f = solve_square(std::move(a), std::move(b)); f && feasible(*f)) found.insert(*f);
      return;
    }
    for (std::size_t r = start; r < rows.size(); ++r) {
      pick.push_back(r);
      choose(r + 1);
      pick.pop_back();
    }
  };
  choose(0);
  std::vector<RationalVector> out;
  for (const auto& f : found) {
    RationalVector v;
    for (int i = 0; i < dim; ++i) v.set(i + 1, Rational(f[i]));
    out.push_back(std::move(v));
  }
  return out;
}

PolarReport polar_oracle(const AdmissibilitySystem& system, int level, const Theta& theta, std::uint64_t seed,
                         std::size_t random_samples, const Caps& caps) {
  if (level < 1 || level > 5) throw InputError("polar_oracle: level must lie in [1, 5]");
  PolarReport report;
  report.level = level;
  const GeneratorSet gens = enumerate_generators(system, level, theta, caps);
  report.generators = gens.size();

  auto check = [&](const RationalVector& f, const char* kind) {
    const Rational ts = ts_norm(f, system, theta, caps).value;
    const Rational support = support_value(f, gens);
    if (ts != support) report.violations.push_back({kind, f, ts, support});
  };

  for (const auto& v : polar_vertices(gens.generators, level)) {
    const Rational support = support_value(v, gens);
    if (support.is_zero()) continue;  // the origin
    ++report.vertices;
    const Rational ts = ts_norm(v, system, theta, caps).value;
    if (ts != Rational(1)) report.violations.push_back({"vertex", v, ts, support});
  }

  const std::vector<Rational> grid{Rational(-1), Rational(-1, 2), Rational(0), Rational(1, 2), Rational(1)};
  std::vector<std::size_t> digits(level, 0);
  for (;;) {
    RationalVector f;
    for (int i = 0; i < level; ++i) f.set(i + 1, grid[digits[i]]);
    ++report.samples;
    check(f, "grid");
    int k = 0;
    while (k < level && ++digits[k] == grid.size()) digits[k++] = 0;
    if (k == level) break;
  }

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-7, 7);
  std::uniform_int_distribution<int> den_pick(0, 3);
  const long dens[] = {1, 2, 3, 8};
  for (std::size_t s = 0; s < random_samples; ++s) {
    RationalVector f;
    for (int i = 1; i <= level; ++i) f.set(i, Rational(num(rng), dens[den_pick(rng)]));
    ++report.samples;
    check(f, "random");
  }
  return report;
}

}  // namespace tsl

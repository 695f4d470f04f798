#include <numeric>
#include <random>

#include <benchmark/benchmark.h>

#include "tsl/gauge.hpp"
#include "tsl/generators.hpp"
#include "tsl/lp.hpp"
#include "tsl/ts_norm.hpp"

namespace {

using tsl::AdmissibilitySystem;
using tsl::Rational;
using tsl::RationalVector;

RationalVector random_vector(int level, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RationalVector x;
  for (int i = 1; i <= level; ++i) x.set(i, Rational(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 4)));
  return x;
}

void BM_TsNormClassic(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const auto sys = AdmissibilitySystem::classic();
  const auto r = sys.restriction(level);
  const auto x = random_vector(level, 7);
  for (auto _ : state) benchmark::DoNotOptimize(tsl::ts_norm(x, r).value);
}
BENCHMARK(BM_TsNormClassic)->DenseRange(4, 12, 4);

void BM_GeneratorsClassic(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const auto r = AdmissibilitySystem::classic().restriction(level);
  std::vector<tsl::Index> window(static_cast<std::size_t>(level));
  std::iota(window.begin(), window.end(), 1);
  for (auto _ : state) benchmark::DoNotOptimize(tsl::enumerate_generators_on(r, window).size());
}
BENCHMARK(BM_GeneratorsClassic)->DenseRange(3, 7);

void BM_GaugeClassic(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const auto sys = AdmissibilitySystem::classic();
  const auto x = random_vector(level, 11);
  (void)tsl::tss_gauge(x, sys);
  for (auto _ : state) benchmark::DoNotOptimize(tsl::tss_gauge(x, sys).value);
}
BENCHMARK(BM_GaugeClassic)->DenseRange(3, 7);

void BM_LpRandom(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(3);
  tsl::LPProblem p;
  const std::size_t n = 2 * m;
  for (std::size_t j = 0; j < n; ++j) p.objective.emplace_back(static_cast<long>(rng() % 9) - 2);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<Rational> row;
    for (std::size_t j = 0; j < n; ++j) row.emplace_back(static_cast<long>(rng() % 5));
    row[i] = Rational(1);
    p.constraints.push_back(row);
    p.rhs.emplace_back(static_cast<long>(1 + rng() % 10));
  }
  p.nonnegative.assign(n, true);
  for (auto _ : state) benchmark::DoNotOptimize(tsl::lp_solve(p).value);
}
BENCHMARK(BM_LpRandom)->RangeMultiplier(2)->Range(4, 32);

}  // namespace

BENCHMARK_MAIN();

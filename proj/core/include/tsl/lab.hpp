#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "tsl/families.hpp"
#include "tsl/theta.hpp"
#include "tsl/treespace.hpp"

namespace tsl {

/// Random coefficients are n/d with |n| <= max_numerator and d drawn from
/// `denominators`.
struct CoefficientPool {
  int max_numerator = 3;
  std::vector<int> denominators{1, 2, 4};
};

struct TrialConfig {
  std::uint64_t seed = 1;
  int trials = 200;
  int lmax = 7;
  Theta theta;
  CoefficientPool pool;
};

struct CheckRecord {
  std::string check;
  int trial = -1;
  bool pass = true;
  /// Reproducing input and the computed values, as JSON.
  nlohmann::json inputs;
  nlohmann::json values;
};

struct CheckSummary {
  std::string check;
  int passed = 0;
  int failed = 0;
};

/// Outcome of a verification suite or experiment. Records keep trial order.
struct Report {
  std::string suite;
  std::vector<CheckRecord> records;

  void add(CheckRecord record) { records.push_back(std::move(record)); }
  [[nodiscard]] bool ok() const;
  [[nodiscard]] std::size_t failures() const;
  /// Per-check counts in first-appearance order.
  [[nodiscard]] std::vector<CheckSummary> summary() const;
  /// Summary plus every failing record; `verbose` adds passing records.
  [[nodiscard]] nlohmann::json to_json(bool verbose = false) const;
};

/// Deterministic random source for the harness.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t stream);

  /// Uniform in [lo, hi].
  int uniform(int lo, int hi);
  bool coin() { return uniform(0, 1) == 1; }
  Rational coefficient(const CoefficientPool& pool);
  /// Random vector on {1..level}; each coordinate is drawn from the pool.
  RationalVector vector(int level, const CoefficientPool& pool);
  BinaryString binary(std::size_t length);

 private:
  std::mt19937_64 engine_;
};

/// Tree on 2 x N used for branch-equivalence checks: its sections differ
/// along different sigmas and include an infinite branch.
Tree2Spec default_tree2();

/// Randomized invariant suite for both norms under `system`, plus the
/// branch-equivalence suite on `tree`. Failures become report entries.
Report verify_facts(const TrialConfig& cfg, const AdmissibilitySystem& system, const Tree2Spec& tree = default_tree2());

}  // namespace tsl

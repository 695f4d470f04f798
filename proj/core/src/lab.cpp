#include "tsl/lab.hpp"

#include <algorithm>
#include <map>

#include "tsl/gauge.hpp"
#include "tsl/json_io.hpp"
#include "tsl/ts_norm.hpp"

namespace tsl {

using nlohmann::json;

bool Report::ok() const { return failures() == 0; }

std::size_t Report::failures() const {
  return static_cast<std::size_t>(std::count_if(records.begin(), records.end(), [](const auto& r) { return !r.pass; }));
}

std::vector<CheckSummary> Report::summary() const {
  std::vector<CheckSummary> out;
  std::map<std::string, std::size_t> slot;
  for (const auto& r : records) {
    auto [it, inserted] = slot.emplace(r.check, out.size());
    if (inserted) out.push_back({r.check, 0, 0});
    (r.pass ? out[it->second].passed : out[it->second].failed) += 1;
  }
  return out;
}

json Report::to_json(bool verbose) const {
  json checks = json::array();
  for (const auto& s : summary()) checks.push_back({{"check", s.check}, {"passed", s.passed}, {"failed", s.failed}});
  json listed = json::array();
  for (const auto& r : records) {
    if (r.pass && !verbose) continue;
    listed.push_back({{"check", r.check}, {"trial", r.trial}, {"pass", r.pass}, {"inputs", r.inputs}, {"values", r.values}});
  }
  return {{"suite", suite},
          {"ok", ok()},
          {"checks", checks},
          {"failures", failures()},
          {verbose ? "records" : "failing_records", listed}};
}

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  engine_.seed(seq);
}

int TrialRng::uniform(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

Rational TrialRng::coefficient(const CoefficientPool& pool) {
  const int num = uniform(-pool.max_numerator, pool.max_numerator);
  const int den = pool.denominators.empty()
                      ? 1
                      : pool.denominators[static_cast<std::size_t>(uniform(0, static_cast<int>(pool.denominators.size()) - 1))];
  return Rational(num, den);
}

RationalVector TrialRng::vector(int level, const CoefficientPool& pool) {
  RationalVector v;
  for (Index i = 1; i <= level; ++i) v.set(i, coefficient(pool));
  return v;
}

BinaryString TrialRng::binary(std::size_t length) {
  BinaryString out(length);
  for (auto& bit : out) bit = static_cast<std::uint8_t>(uniform(0, 1));
  return out;
}

Tree2Spec default_tree2() {
  std::vector<Tree2Spec::Node> nodes{
      {BinaryString{0, 1}, {2, 3}},
      {BinaryString{1, 1, 0}, {1, 1, 2}},
      {std::nullopt, {1, 2}},
  };
  std::vector<Tree2Spec::Branch> branches{
      {PeriodicSequence{{}, {0}}, PeriodicSequence{{}, {1}}},
      {std::nullopt, PeriodicSequence{{}, {3}}},
  };
  return Tree2Spec(std::move(nodes), std::move(branches));
}

namespace {

class Suite {
 public:
  Suite(Report& report, int trial, json inputs) : report_(report), trial_(trial), inputs_(std::move(inputs)) {}

  void check(const std::string& name, bool pass, json values, json extra_inputs = json::object()) {
    json inputs = inputs_;
    inputs.update(extra_inputs);
    report_.add({name, trial_, pass, std::move(inputs), std::move(values)});
  }

 private:
  Report& report_;
  int trial_;
  json inputs_;
};

json str(const Rational& r) { return r.str(); }

// A random admissible family inside {1..level}: a random sub-selection of
// a random member of the restriction, with random nonempty blocks.
std::optional<SuccessiveFamily> random_family(TrialRng& rng, const std::vector<Mask>& restriction, int level) {
  std::vector<Mask> members;
  for (Mask m : restriction) {
    if (m != 0) members.push_back(m);
  }
  if (members.empty()) return std::nullopt;
  const auto all = elements_of(members[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(members.size()) - 1))]);
  std::vector<Index> picks;
  for (Index a : all) {
    if (rng.coin()) picks.push_back(a);
  }
  if (picks.empty()) picks.push_back(all.front());
  std::vector<std::vector<Index>> blocks;
  for (std::size_t k = 0; k < picks.size(); ++k) {
    const Index hi = k + 1 < picks.size() ? picks[k + 1] - 1 : level;
    std::vector<Index> block;
    for (Index i = picks[k]; i <= hi; ++i) {
      if (rng.coin()) block.push_back(i);
    }
    if (block.empty()) block.push_back(picks[k]);
    blocks.push_back(std::move(block));
  }
  return SuccessiveFamily(std::move(blocks));
}

void run_trial(Report& report, int trial, const TrialConfig& cfg, const AdmissibilitySystem& system,
               const AdmissibilitySystem& bigger, const Tree2Spec& tree) {
  TrialRng rng(cfg.seed, static_cast<std::uint64_t>(trial));
  const Theta& theta = cfg.theta;
  const int level = rng.uniform(1, cfg.lmax);
  const RationalVector x = rng.vector(level, cfg.pool);
  const RationalVector y = rng.vector(level, cfg.pool);
  Suite suite(report, trial, {{"level", level}, {"x", io::to_json(x)}});

  const auto restriction = system.restriction(level);
  const auto ts = [&](const RationalVector& v) { return ts_norm(v, system, theta).value; };
  const auto gauge = [&](const RationalVector& v) { return tss_gauge(v, system, theta).value; };

  const TsResult tx = ts_norm(x, system, theta);
  const GaugeResult gx = tss_gauge(x, system, theta);
  const Rational sup = x.sup_norm();
  const Rational l1 = x.l1_norm();

  suite.check("sandwich_ts", sup <= tx.value && tx.value <= l1,
              {{"sup", str(sup)}, {"ts", str(tx.value)}, {"l1", str(l1)}});
  suite.check("sandwich_tss", sup <= gx.value && gx.value <= l1,
              {{"sup", str(sup)}, {"tss", str(gx.value)}, {"l1", str(l1)}});

  const Rational s = rng.coefficient(cfg.pool);
  const RationalVector sx = s * x;
  const Rational ts_sx = ts(sx);
  const Rational g_sx = gauge(sx);
  suite.check("homogeneity_ts", ts_sx == s.abs() * tx.value, {{"ts(s*x)", str(ts_sx)}, {"ts(x)", str(tx.value)}},
              {{"s", str(s)}});
  suite.check("homogeneity_tss", g_sx == s.abs() * gx.value, {{"tss(s*x)", str(g_sx)}, {"tss(x)", str(gx.value)}},
              {{"s", str(s)}});

  const Rational ts_y = ts(y);
  const Rational g_y = gauge(y);
  const Rational ts_xy = ts(x + y);
  const Rational g_xy = gauge(x + y);
  suite.check("triangle_ts", ts_xy <= tx.value + ts_y,
              {{"ts(x+y)", str(ts_xy)}, {"ts(x)", str(tx.value)}, {"ts(y)", str(ts_y)}}, {{"y", io::to_json(y)}});
  suite.check("triangle_tss", g_xy <= gx.value + g_y,
              {{"tss(x+y)", str(g_xy)}, {"tss(x)", str(gx.value)}, {"tss(y)", str(g_y)}}, {{"y", io::to_json(y)}});

  RationalVector z;
  const Rational shrink[] = {Rational(0), Rational(1, 2), Rational(-1, 2), Rational(1), Rational(-1)};
  for (const auto& [i, v] : x) z.set(i, v * shrink[rng.uniform(0, 4)]);
  const Rational ts_z = ts(z);
  const Rational g_z = gauge(z);
  suite.check("solidity_ts", ts_z <= tx.value, {{"ts(z)", str(ts_z)}, {"ts(x)", str(tx.value)}},
              {{"z", io::to_json(z)}});
  suite.check("solidity_tss", g_z <= gx.value, {{"tss(z)", str(g_z)}, {"tss(x)", str(gx.value)}},
              {{"z", io::to_json(z)}});

  if (const auto family = random_family(rng, restriction, level)) {
    const json fam = io::to_json(*family);
    const bool admissible = is_admissible(restriction, *family).admissible;
    suite.check("random_family_admissible", admissible, json::object(), {{"family", fam}});
    RationalVector sum;
    Rational worst(0);
    json parts = json::array();
    for (const auto& block : family->sets()) {
      const RationalVector part = rng.vector(level, cfg.pool);
      worst = max(worst, gauge(part));
      sum += restrict(block, part);
      parts.push_back(io::to_json(part));
    }
    const Rational g_sum = gauge(sum);
    suite.check("block_upper_tss", g_sum <= theta.inverse() * worst,
                {{"tss(sum)", str(g_sum)}, {"max tss(x_k)", str(worst)}}, {{"family", fam}, {"x_k", parts}});
    Rational lower(0);
    for (const auto& block : family->sets()) lower += ts(restrict(block, sum));
    lower *= theta.value();
    const Rational ts_sum = ts(sum);
    suite.check("block_lower_ts", ts_sum >= lower, {{"ts(sum)", str(ts_sum)}, {"theta*sum ts(E_k sum)", str(lower)}},
                {{"family", fam}, {"sum", io::to_json(sum)}});
  }

  std::vector<std::vector<Index>> sets;
  for (Mask m : restriction) sets.push_back(elements_of(m));
  const auto copy = AdmissibilitySystem::explicit_sets(std::move(sets));
  const Rational ts_copy = ts_norm(x, copy, theta).value;
  const Rational g_copy = tss_gauge(x, copy, theta).value;
  suite.check("restriction_equality", ts_copy == tx.value && g_copy == gx.value,
              {{"ts", str(tx.value)}, {"ts_copy", str(ts_copy)}, {"tss", str(gx.value)}, {"tss_copy", str(g_copy)}});

  const Rational ts_big = ts_norm(x, bigger, theta).value;
  const Rational g_big = tss_gauge(x, bigger, theta).value;
  suite.check("monotonicity", tx.value <= ts_big && gx.value >= g_big,
              {{"ts", str(tx.value)}, {"ts_bigger", str(ts_big)}, {"tss", str(gx.value)}, {"tss_bigger", str(g_big)}});

  if (maximal_members(restriction, 2).empty()) {
    suite.check("degenerate_base", tx.value == sup && gx.value == l1,
                {{"ts", str(tx.value)}, {"tss", str(gx.value)}});
  }

  const TsCheck tcheck = check_ts_certificate(x, system, theta, tx.certificate);
  suite.check("ts_certificate", tcheck.ok && tcheck.value == tx.value,
              {{"ts", str(tx.value)}, {"proved", str(tcheck.value)}, {"message", tcheck.message}});
  const GaugeCheck gcheck = check_gauge_certificate(x, system, theta, gx.certificate);
  suite.check("tss_certificate", gcheck.ok, {{"tss", str(gx.value)}, {"message", gcheck.message}});

  const RationalVector& f = gx.certificate.dual;
  const Rational ts_f = ts(f);
  const Rational pairing = inner(f, x);
  suite.check("duality", ts_f <= Rational(1) && pairing == gx.value,
              {{"ts(dual)", str(ts_f)}, {"inner(dual,x)", str(pairing)}, {"tss", str(gx.value)}},
              {{"dual", io::to_json(f)}});

  const BinaryString sigma = rng.binary(static_cast<std::size_t>(level));
  std::vector<Rational> lambda;
  for (int l = 0; l < level; ++l) lambda.push_back(rng.coefficient(cfg.pool));
  RationalVector flat;
  for (std::size_t l = 0; l < lambda.size(); ++l) flat.set(static_cast<Index>(l + 1), lambda[l]);
  const Rational tree_value = tree_norm(branch_embed(lambda, sigma), tree, theta).value;
  const Rational branch_value = tss_gauge(flat, section_system(tree, sigma), theta).value;
  suite.check("branch_equivalence", tree_value == branch_value,
              {{"tree_norm", str(tree_value)}, {"section_tss", str(branch_value)}},
              {{"sigma", io::to_json(sigma)}, {"lambda", io::to_json(flat)}});
}

}  // namespace

Report verify_facts(const TrialConfig& cfg, const AdmissibilitySystem& system, const Tree2Spec& tree) {
  if (cfg.lmax < 1 || cfg.lmax > kMaxLevel) throw InputError("lmax must lie in [1, 62]");
  if (cfg.trials < 0) throw InputError("trials must be non-negative");
  if (cfg.pool.max_numerator < 0) throw InputError("coefficient pool needs a non-negative numerator bound");
  for (int d : cfg.pool.denominators) {
    if (d < 1) throw InputError("coefficient denominators must be positive");
  }
  Report report{"verify-facts", {}};
  const auto bigger = AdmissibilitySystem::union_of({system, AdmissibilitySystem::size_cap(2, false)});
  for (int t = 0; t < cfg.trials; ++t) run_trial(report, t, cfg, system, bigger, tree);
  return report;
}

}  // namespace tsl

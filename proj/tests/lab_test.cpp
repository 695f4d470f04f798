#include <gtest/gtest.h>

#include "tsl/experiments.hpp"
#include "tsl/lab.hpp"
#include "tsl/ts_norm.hpp"

namespace {

using tsl::AdmissibilitySystem;
using tsl::BinaryString;
using tsl::PeriodicSequence;
using tsl::Rational;
using tsl::RationalVector;
using tsl::TreeSpec;
using tsl::TreeVector;

TreeVector node(const BinaryString& key) {
  TreeVector t;
  t.set(key, Rational(1));
  return t;
}

TEST(VerifyFacts, ClassicPasses) {
  tsl::TrialConfig cfg;
  cfg.trials = 40;
  cfg.lmax = 6;
  const auto report = tsl::verify_facts(cfg, AdmissibilitySystem::classic());
  EXPECT_TRUE(report.ok()) << report.to_json().dump(2);
  EXPECT_GE(report.summary().size(), 18U);
}

TEST(VerifyFacts, DegenerateSystem) {
  tsl::TrialConfig cfg;
  cfg.trials = 30;
  cfg.lmax = 5;
  const auto report = tsl::verify_facts(cfg, AdmissibilitySystem::explicit_sets({{}}));
  EXPECT_TRUE(report.ok()) << report.to_json().dump(2);
  const auto summary = report.summary();
  const auto base = std::find_if(summary.begin(), summary.end(), [](const auto& s) { return s.check == "degenerate_base"; });
  ASSERT_NE(base, summary.end());
  EXPECT_EQ(base->passed, 30);
}

TEST(VerifyFacts, OtherSystemsAndTheta) {
  tsl::TrialConfig cfg;
  cfg.trials = 15;
  cfg.lmax = 6;
  cfg.theta = tsl::Theta(Rational(2, 3));
  EXPECT_TRUE(tsl::verify_facts(cfg, AdmissibilitySystem::size_cap(3, false)).ok());
  const auto tree = AdmissibilitySystem::from_tree(TreeSpec({{2, 2}}, {PeriodicSequence{{}, {1}}}));
  EXPECT_TRUE(tsl::verify_facts(cfg, tree).ok());
}

TEST(VerifyFacts, Deterministic) {
  tsl::TrialConfig cfg;
  cfg.trials = 10;
  cfg.lmax = 5;
  cfg.seed = 99;
  const auto a = tsl::verify_facts(cfg, AdmissibilitySystem::classic()).to_json(true).dump();
  const auto b = tsl::verify_facts(cfg, AdmissibilitySystem::classic()).to_json(true).dump();
  EXPECT_EQ(a, b);
  cfg.seed = 100;
  EXPECT_NE(tsl::verify_facts(cfg, AdmissibilitySystem::classic()).to_json(true).dump(), a);
}

TEST(VerifyFacts, EqualRestrictionsGiveEqualNorms) {
  // Two different descriptions of the same restriction at level 5.
  const auto a = AdmissibilitySystem::size_cap(2, false);
  const auto b = AdmissibilitySystem::union_of({AdmissibilitySystem::size_cap(1, false),
                                                AdmissibilitySystem::size_cap(2, true),
                                                AdmissibilitySystem::size_cap(2, false)});
  ASSERT_EQ(a.restriction(5), b.restriction(5));
  tsl::TrialRng rng(1, 0);
  for (int k = 0; k < 10; ++k) {
    const auto x = rng.vector(5, {});
    EXPECT_EQ(tsl::ts_norm(x, a).value, tsl::ts_norm(x, b).value);
    EXPECT_EQ(tsl::tss_gauge(x, a).value, tsl::tss_gauge(x, b).value);
  }
}

TEST(Report, SerializesFailures) {
  tsl::Report r{"demo", {}};
  r.add({"a", 0, true, {}, {}});
  r.add({"a", 1, false, {{"x", 1}}, {{"v", "2"}}});
  EXPECT_FALSE(r.ok());
  const auto j = r.to_json();
  EXPECT_EQ(j["failures"], 1);
  EXPECT_EQ(j["failing_records"].size(), 1U);
  EXPECT_EQ(j["failing_records"][0]["inputs"]["x"], 1);
}

TEST(Dichotomy, Rows) {
  const TreeSpec branch({}, {PeriodicSequence{{}, {1}}});
  const auto t = tsl::experiment_dichotomy(AdmissibilitySystem::classic(), branch, 4, 8);
  ASSERT_EQ(t.rows.size(), 12U);
  EXPECT_EQ(t.rows[0].value, Rational(1));
  EXPECT_EQ(t.rows[3].value, Rational(2));
  EXPECT_TRUE(t.ok());
  for (std::size_t k = 4; k < 12; ++k) {
    EXPECT_EQ(t.rows[k].series, "branch");
    EXPECT_EQ(t.rows[k].bound, Rational(2));
    EXPECT_LE(t.rows[k].value, Rational(2));
  }
  Rational prev(0);
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_GE(t.rows[k].value, prev);
    prev = t.rows[k].value;
  }
  EXPECT_EQ(t.csv().substr(0, t.csv().find('\n')), "series,n,value,value_approx,bound,bound_approx,certified,holds");
}

TEST(C0Blocks, Examples) {
  const auto sys = AdmissibilitySystem::from_tree(TreeSpec({}, {PeriodicSequence{{}, {1}}}));
  const PeriodicSequence ones{{}, {1}};
  const auto zero = tsl::experiment_c0_blocks(sys, ones, RationalVector());
  EXPECT_TRUE(zero.holds());
  EXPECT_EQ(zero.upper, Rational(0));
  tsl::TrialRng rng(3, 0);
  for (int k = 0; k < 5; ++k) EXPECT_TRUE(tsl::experiment_c0_blocks(sys, ones, rng.vector(8, {})).holds());
  // A vector inside a single block: both sides collapse.
  const PeriodicSequence wide{{2}, {6}};
  const auto sys_wide = AdmissibilitySystem::from_tree(TreeSpec({}, {wide}));
  const auto inside = tsl::experiment_c0_blocks(sys_wide, wide, RationalVector::indicator({3, 5}));
  EXPECT_EQ(inside.lower, inside.value);
  EXPECT_THROW(tsl::experiment_c0_blocks(sys, PeriodicSequence{{1, 1}, {}}, RationalVector::unit(5)),
               tsl::InputError);
  EXPECT_THROW(tsl::experiment_c0_blocks(AdmissibilitySystem::size_cap(1, false), ones, RationalVector::indicator({1, 2})),
               tsl::InputError);
}

TEST(L1Constant, Examples) {
  const tsl::Tree2Spec trivial;
  const auto single = tsl::experiment_l1_constant(trivial, {node({0, 1})}, true);
  ASSERT_EQ(single.rows.size(), 1U);
  EXPECT_EQ(single.rows[0].c, Rational(1));
  const auto pair = tsl::experiment_l1_constant(trivial, {node({0}), node({1})}, true);
  EXPECT_TRUE(pair.ok());
  EXPECT_THROW(tsl::experiment_l1_constant(trivial, {node({0}), node({0})}, true), tsl::InputError);
  EXPECT_THROW(tsl::experiment_l1_constant(trivial, {TreeVector()}, true), tsl::InputError);
}

TEST(L1Constant, BranchFunctionalsMatchImplicitNorm) {
  // f_k = z*_{σ|3+k} along σ = 0000000 with a trivial section.
  const tsl::Tree2Spec trivial;
  std::vector<TreeVector> fs;
  for (std::size_t k = 1; k <= 4; ++k) fs.push_back(node(BinaryString(3 + k, 0)));
  const auto r = tsl::experiment_l1_constant(trivial, fs, true);
  const auto sys = AdmissibilitySystem::size_cap(3, false);
  for (std::size_t k = 1; k <= 4; ++k) {
    std::vector<tsl::Index> idx;
    for (tsl::Index i = 4; i < static_cast<tsl::Index>(4 + k); ++i) idx.push_back(i);
    const Rational expected = tsl::ts_norm(RationalVector::indicator(idx), sys).value / Rational(static_cast<long>(k));
    EXPECT_EQ(r.rows[k - 1].c, expected) << "k=" << k;
  }
}

TEST(L1Constant, SampledModeIsSeeded) {
  const tsl::Tree2Spec tree = tsl::default_tree2();
  const std::vector<TreeVector> fs{node({0}), node({1}), node({0, 0}), node({1, 1}), node({0, 1, 0})};
  const auto a = tsl::experiment_l1_constant(tree, fs, false, 5, 6).csv();
  const auto b = tsl::experiment_l1_constant(tree, fs, false, 5, 6).csv();
  EXPECT_EQ(a, b);
}

}  // namespace

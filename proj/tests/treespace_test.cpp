#include <random>

#include <gtest/gtest.h>

#include "tsl/lab.hpp"
#include "tsl/treespace.hpp"

namespace {

using tsl::BinaryString;
using tsl::PeriodicSequence;
using tsl::Rational;
using tsl::RationalVector;
using tsl::Tree2Spec;
using tsl::TreeVector;

TreeVector node(const BinaryString& key, const Rational& v = Rational(1)) {
  TreeVector t;
  t.set(key, v);
  return t;
}

const Tree2Spec kTrivial{};

// Every section contains the branch 1,1,1,... so {1..L} is always admissible.
Tree2Spec full_sections() { return Tree2Spec({}, {{std::nullopt, PeriodicSequence{{}, {1}}}}); }

TreeVector random_tree_vector(std::mt19937_64& rng, std::size_t max_len, int keys) {
  TreeVector t;
  for (int k = 0; k < keys; ++k) {
    BinaryString key(1 + rng() % max_len);
    for (auto& b : key) b = static_cast<std::uint8_t>(rng() % 2);
    t.set(key, Rational(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 2)));
  }
  return t;
}

TEST(TreeVector, RejectsBadKeys) {
  TreeVector t;
  EXPECT_THROW(t.set({}, Rational(1)), tsl::InputError);
  EXPECT_THROW(t.set({2}, Rational(1)), tsl::InputError);
  t.set({0, 1}, Rational(0));
  EXPECT_TRUE(t.is_zero());
}

TEST(RelevantBranches, Examples) {
  EXPECT_EQ(tsl::relevant_branches(node({0})), (std::vector<BinaryString>{{0}}));
  EXPECT_EQ(tsl::relevant_branches(node({0}) + node({1})), (std::vector<BinaryString>{{0}, {1}}));
  EXPECT_EQ(tsl::relevant_branches(node({0}) + node({0, 1})), (std::vector<BinaryString>{{0, 1}}));
  EXPECT_EQ(tsl::relevant_branches(node({1}) + node({0, 1})), (std::vector<BinaryString>{{0, 1}, {1, 0}}));
  EXPECT_TRUE(tsl::relevant_branches(TreeVector()).empty());
}

TEST(BranchEmbed, Examples) {
  EXPECT_EQ(tsl::branch_embed({Rational(1)}, {0}), node({0}));
  EXPECT_EQ(tsl::branch_embed({Rational(1), Rational(-2)}, {1, 0}), node({1}) + node({1, 0}, Rational(-2)));
  EXPECT_EQ(tsl::branch_embed({Rational(0), Rational(1)}, {0, 0}), node({0, 0}));
  EXPECT_THROW(tsl::branch_embed({Rational(1), Rational(1)}, {0}), tsl::InputError);
  EXPECT_EQ(tsl::branch_restriction(node({1}) + node({1, 0}, Rational(3)), {1, 0}),
            (RationalVector{{1, Rational(1)}, {2, Rational(3)}}));
}

TEST(TreeNorm, Examples) {
  EXPECT_EQ(tsl::tree_norm(node({0}), kTrivial).value, Rational(1));
  EXPECT_EQ(tsl::tree_norm(node({0}) + node({1}), kTrivial).value, Rational(1));
  const BinaryString zeros(7, 0);
  const auto x = tsl::branch_embed({0, 0, 0, 1, 1, 1, 1}, zeros);
  const auto r = tsl::tree_norm(x, kTrivial);
  EXPECT_EQ(r.value, Rational(8, 3));
  EXPECT_EQ(r.branch, zeros);
}

TEST(TreeNorm, SectionsChangeTheValue) {
  const BinaryString ones(5, 1);
  const auto x = tsl::branch_embed({1, 1, 1, 1, 1}, ones);
  EXPECT_EQ(tsl::tree_norm(x, full_sections()).value, Rational(2));
  EXPECT_EQ(tsl::tree_norm(x, kTrivial).value,
            tsl::tss_gauge(RationalVector::indicator({1, 2, 3, 4, 5}), tsl::AdmissibilitySystem::size_cap(3, false)).value);
}

TEST(TreeNorm, BranchEquivalence) {
  std::mt19937_64 rng(4);
  const Tree2Spec tree = tsl::default_tree2();
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t len = 1 + rng() % 6;
    BinaryString sigma(len);
    for (auto& b : sigma) b = static_cast<std::uint8_t>(rng() % 2);
    std::vector<Rational> lambda;
    RationalVector flat;
    for (std::size_t l = 0; l < len; ++l) {
      lambda.push_back(Rational(static_cast<long>(rng() % 5) - 2));
      flat.set(static_cast<tsl::Index>(l + 1), lambda.back());
    }
    EXPECT_EQ(tsl::tree_norm(tsl::branch_embed(lambda, sigma), tree).value,
              tsl::tss_gauge(flat, tsl::section_system(tree, sigma)).value);
  }
}

TEST(TreeNorm, Solidity) {
  std::mt19937_64 rng(9);
  const Tree2Spec tree = tsl::default_tree2();
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = random_tree_vector(rng, 5, 4);
    TreeVector y;
    for (const auto& [key, v] : x) y.set(key, v * Rational(static_cast<long>(rng() % 3) - 1, 2));
    EXPECT_LE(tsl::tree_norm(y, tree).value, tsl::tree_norm(x, tree).value);
  }
}

TEST(TreeNorm, SectionLocality) {
  // Trees that agree up to length 3 give equal norms on keys of length <= 3.
  const Tree2Spec a({{BinaryString{0, 1, 1}, {1, 1, 1}}}, {});
  const Tree2Spec b({{BinaryString{0, 1, 1}, {1, 1, 1}}, {BinaryString{0, 1, 1, 0}, {1, 1, 1, 1}}},
                    {{PeriodicSequence{{0}, {1}}, PeriodicSequence{{1, 1, 1}, {2}}}});
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 15; ++trial) {
    const auto x = random_tree_vector(rng, 3, 4);
    EXPECT_EQ(tsl::tree_norm(x, a).value, tsl::tree_norm(x, b).value);
  }
}

TEST(TreeDualNorm, Examples) {
  EXPECT_EQ(tsl::tree_dual_norm(node({0, 1}), kTrivial).value, Rational(1));
  EXPECT_EQ(tsl::tree_dual_norm(TreeVector(), kTrivial).value, Rational(0));
  const auto f = tsl::branch_embed({0, 0, 0, 1, 1, 1, 1}, BinaryString(7, 0));
  const auto r = tsl::tree_dual_norm(f, kTrivial);
  EXPECT_EQ(r.value, Rational(3, 2));
  EXPECT_EQ(tsl::inner(f, r.witness), Rational(3, 2));
  EXPECT_EQ(tsl::tree_norm(r.witness, kTrivial).value, Rational(1));
}

TEST(TreeDualNorm, PairingInequality) {
  std::mt19937_64 rng(15);
  const Tree2Spec tree = tsl::default_tree2();
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = random_tree_vector(rng, 4, 3);
    const auto x = random_tree_vector(rng, 4, 3);
    const auto dual = tsl::tree_dual_norm(f, tree);
    EXPECT_LE(tsl::inner(f, x).abs(), dual.value * tsl::tree_norm(x, tree).value);
    EXPECT_EQ(tsl::inner(f, dual.witness), dual.value);
    EXPECT_LE(tsl::tree_norm(dual.witness, tree).value, Rational(1));
  }
}

TEST(TreeDualNorm, DisjointBranchFunctionalsAddUp) {
  // z*_(0) and z*_(1) live on different branches, so no branch sees both.
  const auto r = tsl::tree_dual_norm(node({0}) + node({1}), kTrivial);
  EXPECT_EQ(r.value, Rational(2));
}

}  // namespace

#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tsl/error.hpp"
#include "tsl/lp.hpp"

namespace {

using tsl::LPProblem;
using tsl::LPStatus;
using tsl::Rational;
using tsl::RationalVector;

TEST(Rational, ParsesAndNormalizes) {
  EXPECT_EQ(Rational::parse("6/8"), Rational(3, 4));
  EXPECT_EQ(Rational::parse("-2"), Rational(-2));
  EXPECT_EQ(Rational::parse("-4/6").str(), "-2/3");
  EXPECT_THROW(Rational::parse("4/-6"), tsl::InputError);
  EXPECT_EQ(Rational(0, 5).str(), "0");
  EXPECT_THROW(Rational::parse("1/0"), tsl::InputError);
  EXPECT_THROW(Rational::parse("abc"), tsl::InputError);
  EXPECT_THROW(Rational::parse(""), tsl::InputError);
}

TEST(Rational, ArithmeticIsExact) {
  const Rational third(1, 3);
  EXPECT_EQ(third + third + third, Rational(1));
  EXPECT_EQ(Rational(1, 2) * Rational(2, 3), third);
  EXPECT_EQ(Rational(-3, 4).abs(), Rational(3, 4));
  EXPECT_EQ(Rational(-3, 4).sign(), -1);
  EXPECT_LT(Rational(1, 3), Rational(1, 2));
  EXPECT_EQ(tsl::max(Rational(1, 3), Rational(1, 2)), Rational(1, 2));
}

TEST(RationalVector, DropsZerosAndRejectsBadIndices) {
  RationalVector v;
  v.set(3, Rational(2));
  v.set(5, Rational(0));
  EXPECT_EQ(v.nnz(), 1U);
  v.set(3, Rational(0));
  EXPECT_TRUE(v.is_zero());
  EXPECT_THROW(v.set(0, Rational(1)), tsl::InputError);
}

TEST(RationalVector, Norms) {
  const RationalVector v{{1, Rational(-3, 2)}, {4, Rational(1)}};
  EXPECT_EQ(v.sup_norm(), Rational(3, 2));
  EXPECT_EQ(v.l1_norm(), Rational(5, 2));
  EXPECT_EQ(tsl::inner(v, RationalVector::indicator({1, 4})), Rational(-1, 2));
  EXPECT_EQ(tsl::restrict({4}, v), RationalVector::unit(4));
  EXPECT_EQ(tsl::restrict_interval(2, 9, v), RationalVector::unit(4));
}

// max x1 + x2 s.t. x1 + 2 x2 <= 4, 3 x1 + x2 <= 6 written in equality form.
LPProblem small_lp() {
  LPProblem p;
  p.objective = {Rational(-1), Rational(-1), Rational(0), Rational(0)};
  p.constraints = {{Rational(1), Rational(2), Rational(1), Rational(0)},
                   {Rational(3), Rational(1), Rational(0), Rational(1)}};
  p.rhs = {Rational(4), Rational(6)};
  p.nonnegative = {true, true, true, true};
  return p;
}

TEST(LinearProgram, SolvesWithDualCertificate) {
  const auto p = small_lp();
  const auto s = tsl::lp_solve(p);
  ASSERT_EQ(s.status, LPStatus::optimal);
  EXPECT_EQ(s.value, Rational(-14, 5));
  EXPECT_EQ(s.primal[0], Rational(8, 5));
  EXPECT_EQ(s.primal[1], Rational(6, 5));
  EXPECT_FALSE(tsl::verify_optimality(p, s).has_value());
}

TEST(LinearProgram, DetectsInfeasibleAndUnbounded) {
  LPProblem infeasible;
  infeasible.objective = {Rational(1)};
  infeasible.constraints = {{Rational(1)}};
  infeasible.rhs = {Rational(-1)};
  infeasible.nonnegative = {true};
  EXPECT_EQ(tsl::lp_solve(infeasible).status, LPStatus::infeasible);

  LPProblem unbounded;
  unbounded.objective = {Rational(-1), Rational(0)};
  unbounded.constraints = {{Rational(1), Rational(-1)}};
  unbounded.rhs = {Rational(0)};
  unbounded.nonnegative = {true, true};
  EXPECT_EQ(tsl::lp_solve(unbounded).status, LPStatus::unbounded);
}

TEST(LinearProgram, FreeVariables) {
  LPProblem p;
  p.objective = {Rational(1), Rational(0)};
  p.constraints = {{Rational(1), Rational(1)}, {Rational(0), Rational(1)}};
  p.rhs = {Rational(0), Rational(5)};
  p.nonnegative = {false, true};
  const auto s = tsl::lp_solve(p);
  ASSERT_EQ(s.status, LPStatus::optimal);
  EXPECT_EQ(s.primal[0], Rational(-5));
}

TEST(LinearProgram, RejectsMismatchedDimensions) {
  auto p = small_lp();
  p.rhs.pop_back();
  EXPECT_THROW(tsl::lp_solve(p), tsl::InputError);
}

TEST(LinearProgram, VerifierCatchesTamperedSolutions) {
  const auto p = small_lp();
  auto s = tsl::lp_solve(p);
  s.value -= Rational(1);
  EXPECT_TRUE(tsl::verify_optimality(p, s).has_value());
  s = tsl::lp_solve(p);
  s.dual[0] += Rational(1);
  EXPECT_TRUE(tsl::verify_optimality(p, s).has_value());
}

TEST(LinearProgram, MatchesVertexEnumerationOnRandomInstances) {
  std::mt19937_64 rng(11);
  const auto draw = [&](int lo, int hi) { return lo + static_cast<int>(rng() % static_cast<unsigned>(hi - lo + 1)); };
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(draw(0, 1));
    const std::size_t m = 2 + static_cast<std::size_t>(draw(0, 2));
    std::vector<oracle::Dense> a(m, oracle::Dense(n));
    oracle::Dense b(m), c(n);
    for (auto& row : a) {
      for (auto& v : row) v = Rational(draw(0, 4), draw(1, 2));
    }
    for (auto& row : a) row[static_cast<std::size_t>(draw(0, static_cast<int>(n) - 1))] += Rational(1);
    for (auto& v : b) v = Rational(draw(1, 6));
    for (auto& v : c) v = Rational(draw(-3, 3), draw(1, 2));
    // Boundedness: add the box sum(x) <= 10.
    a.push_back(oracle::Dense(n, Rational(1)));
    b.push_back(Rational(10));

    LPProblem p;
    const std::size_t rows = a.size();
    for (std::size_t j = 0; j < n; ++j) p.objective.push_back(-c[j]);
    for (std::size_t i = 0; i < rows; ++i) p.objective.push_back(Rational(0));
    for (std::size_t i = 0; i < rows; ++i) {
      std::vector<Rational> row = a[i];
      for (std::size_t k = 0; k < rows; ++k) row.push_back(Rational(k == i ? 1 : 0));
      p.constraints.push_back(row);
    }
    p.rhs = b;
    p.nonnegative.assign(n + rows, true);
    const auto s = tsl::lp_solve(p);
    const auto expected = oracle::lp_max_by_vertices(a, b, c);
    ASSERT_TRUE(expected.has_value());
    ASSERT_EQ(s.status, LPStatus::optimal);
    EXPECT_EQ(-s.value, *expected) << "trial " << trial;
  }
}

TEST(MinL1Combination, BasisIsL1) {
  const std::vector<RationalVector> gens{RationalVector::unit(1), RationalVector::unit(2)};
  const auto r = tsl::min_l1_combination(RationalVector{{1, Rational(3)}, {2, Rational(-1, 2)}}, gens);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->value, Rational(7, 2));
}

TEST(MinL1Combination, UsesCheaperGenerators) {
  const std::vector<RationalVector> gens{RationalVector::unit(1), RationalVector::unit(2),
                                         RationalVector{{1, Rational(1)}, {2, Rational(1)}}};
  const auto r = tsl::min_l1_combination(RationalVector{{1, Rational(2)}, {2, Rational(1)}}, gens);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->value, Rational(2));
  EXPECT_EQ(r->coefficients.size(), 2U);
  const auto none = tsl::min_l1_combination(RationalVector::unit(3), gens);
  EXPECT_FALSE(none.has_value());
  EXPECT_THROW(tsl::min_l1_combination(RationalVector::unit(1), {}), tsl::InputError);
}

}  // namespace

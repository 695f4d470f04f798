#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tsl/gauge.hpp"
#include "tsl/polar.hpp"
#include "tsl/ts_norm.hpp"

namespace {

using tsl::AdmissibilitySystem;
using tsl::Caps;
using tsl::Index;
using tsl::Rational;
using tsl::RationalVector;
using tsl::Theta;

const AdmissibilitySystem kClassic = AdmissibilitySystem::classic();

RationalVector ones(Index lo, Index hi) {
  std::vector<Index> idx;
  for (Index i = lo; i <= hi; ++i) idx.push_back(i);
  return RationalVector::indicator(idx);
}

RationalVector random_vector(std::mt19937_64& rng, int level) {
  RationalVector v;
  const int dens[] = {1, 2, 4};
  for (Index i = 1; i <= level; ++i) {
    v.set(i, Rational(static_cast<long>(rng() % 7) - 3, dens[rng() % 3]));
  }
  return v;
}

TEST(TsNorm, BaseCases) {
  EXPECT_EQ(tsl::ts_norm(RationalVector(), kClassic).value, Rational(0));
  EXPECT_EQ(tsl::ts_norm(RationalVector::unit(1), kClassic).value, Rational(1));
  const auto single = AdmissibilitySystem::explicit_sets({{1}});
  EXPECT_EQ(tsl::ts_norm(ones(1, 2), single).value, Rational(1));
}

TEST(TsNorm, ClassicFourToSeven) {
  const auto r = tsl::ts_norm(ones(4, 7), kClassic);
  EXPECT_EQ(r.value, Rational(3, 2));
  ASSERT_EQ(r.certificate.kind, tsl::TsCertificate::Kind::family);
  EXPECT_EQ(r.certificate.intervals.size(), 3U);
  const auto check = tsl::check_ts_certificate(ones(4, 7), kClassic, Theta::half(), r.certificate);
  EXPECT_TRUE(check.ok) << check.message;
  EXPECT_EQ(check.value, Rational(3, 2));
}

TEST(TsNorm, SkippingASmallIndexHelps) {
  // e3 must be dropped so that the witness can start at 4.
  EXPECT_EQ(tsl::ts_norm(ones(3, 7), kClassic).value, Rational(3, 2));
}

TEST(TsNorm, GeneralTheta) {
  const Theta third(Rational(1, 3));
  EXPECT_EQ(tsl::ts_norm(ones(3, 4), kClassic, third).value, Rational(1));
  EXPECT_EQ(tsl::ts_norm(ones(4, 7), kClassic, third).value, Rational(1));
  EXPECT_EQ(tsl::ts_norm(ones(1, 5), AdmissibilitySystem::size_cap(5, false), third).value, Rational(5, 3));
}

TEST(TsNorm, MatchesExhaustiveFamilyOracle) {
  std::mt19937_64 rng(3);
  const std::vector<AdmissibilitySystem> systems{kClassic, AdmissibilitySystem::size_cap(3, false),
                                                 AdmissibilitySystem::explicit_sets({{2, 4, 5}, {1, 6}})};
  for (const auto& sys : systems) {
    for (int trial = 0; trial < 25; ++trial) {
      const int level = 2 + static_cast<int>(rng() % 5);
      const auto x = random_vector(rng, level);
      oracle::ImplicitNorm brute(sys.restriction(level), Rational(1, 2));
      const auto got = tsl::ts_norm(x, sys);
      ASSERT_EQ(got.value, brute(x)) << "trial " << trial;
      const auto check = tsl::check_ts_certificate(x, sys, Theta::half(), got.certificate);
      EXPECT_TRUE(check.ok && check.value == got.value) << check.message;
    }
  }
  oracle::ImplicitNorm brute(kClassic.restriction(7), Rational(1, 2));
  EXPECT_EQ(brute(ones(4, 7)), Rational(3, 2));
}

TEST(TsNorm, CheckerRejectsTamperedCertificates) {
  const auto x = ones(4, 7);
  auto cert = tsl::ts_norm(x, kClassic).certificate;
  auto inflated = cert;
  inflated.value = Rational(2);
  EXPECT_FALSE(tsl::check_ts_certificate(x, kClassic, Theta::half(), inflated).ok);
  auto bad_family = cert;
  bad_family.intervals = {{3, 3}, {4, 4}, {5, 7}};
  EXPECT_FALSE(tsl::check_ts_certificate(x, kClassic, Theta::half(), bad_family).ok);
}

TEST(TsNorm, LevelCap) {
  Caps caps;
  caps.ts_level = 8;
  EXPECT_THROW(tsl::ts_norm(RationalVector::unit(9), kClassic, Theta::half(), caps), tsl::ResourceError);
}

TEST(Generators, Examples) {
  const auto single = tsl::enumerate_generators(AdmissibilitySystem::explicit_sets({{1}}), 2);
  EXPECT_EQ(single.generators, (std::vector<RationalVector>{RationalVector::unit(1), RationalVector::unit(2)}));
  EXPECT_EQ(tsl::enumerate_generators(kClassic, 1).generators, std::vector<RationalVector>{RationalVector::unit(1)});
  const auto classic4 = tsl::enumerate_generators(kClassic, 4);
  const RationalVector half34{{3, Rational(1, 2)}, {4, Rational(1, 2)}};
  EXPECT_NE(std::find(classic4.generators.begin(), classic4.generators.end(), half34), classic4.generators.end());
}

TEST(Generators, CountsAreStable) {
  const std::vector<std::size_t> classic{1, 2, 3, 5, 10, 16, 40, 84};
  for (int level = 1; level <= 8; ++level) {
    EXPECT_EQ(tsl::enumerate_generators(kClassic, level).size(), classic[static_cast<std::size_t>(level - 1)]);
  }
}

TEST(Generators, ArchiveDerivationsCheck) {
  const auto sys = AdmissibilitySystem::size_cap(3, false);
  const auto g = tsl::enumerate_generators(sys, 5);
  for (const auto& rec : g.archive) {
    std::vector<const RationalVector*> parents;
    for (int p : rec.derivation.parents) parents.push_back(p < 0 ? nullptr : &g.archive[static_cast<std::size_t>(p)].vector);
    EXPECT_EQ(tsl::check_derivation(rec, sys, Theta::half(), parents), "");
  }
}

TEST(Generators, EachGeneratorLiesInTheUnitBall) {
  for (const auto& sys : {kClassic, AdmissibilitySystem::size_cap(3, false)}) {
    for (const auto& g : tsl::enumerate_generators(sys, 6).generators) {
      EXPECT_LE(tsl::tss_gauge(g, sys).value, Rational(1));
      EXPECT_LE(tsl::ts_norm(g, sys).value, Rational(1));
    }
  }
}

TEST(Generators, MatchUnprunedClosureUpToDomination) {
  const std::vector<AdmissibilitySystem> systems{kClassic, AdmissibilitySystem::size_cap(3, false),
                                                 AdmissibilitySystem::explicit_sets({{1}}),
                                                 AdmissibilitySystem::size_cap(2, false)};
  for (const auto& sys : systems) {
    for (int level = 1; level <= 4; ++level) {
      const auto brute = oracle::unpruned_closure(sys.restriction(level), level, Rational(1, 2), level);
      const auto got = tsl::enumerate_generators(sys, level);
      std::vector<oracle::Dense> dense;
      for (const auto& g : got.generators) {
        oracle::Dense d(static_cast<std::size_t>(level), Rational(0));
        for (const auto& [i, v] : g) d[static_cast<std::size_t>(i - 1)] = v;
        EXPECT_TRUE(brute.count(d)) << "generator not produced by brute force at level " << level;
        dense.push_back(d);
      }
      for (const auto& v : brute) {
        const bool covered = std::any_of(dense.begin(), dense.end(), [&](const auto& g) { return oracle::dominated_by(v, g); });
        EXPECT_TRUE(covered) << "closure vector escapes the generators at level " << level;
      }
    }
  }
}

TEST(Generators, WindowCap) {
  Caps caps;
  caps.generator_dimension = 3;
  EXPECT_THROW(tsl::enumerate_generators(kClassic, 4, Theta::half(), caps), tsl::ResourceError);
  EXPECT_NO_THROW(tsl::enumerate_generators_on(kClassic, {5, 9, 20}, Theta::half(), caps));
}

TEST(Gauge, Examples) {
  EXPECT_EQ(tsl::tss_gauge(ones(3, 4), kClassic).value, Rational(2));
  EXPECT_EQ(tsl::tss_gauge(ones(1, 2), AdmissibilitySystem::explicit_sets({{1}})).value, Rational(2));
  EXPECT_EQ(tsl::tss_gauge(RationalVector(), kClassic).value, Rational(0));
  const auto r = tsl::tss_gauge(ones(4, 7), kClassic);
  EXPECT_EQ(r.value, Rational(8, 3));
  const auto check = tsl::check_gauge_certificate(ones(4, 7), kClassic, Theta::half(), r.certificate);
  EXPECT_TRUE(check.ok) << check.message;
  EXPECT_EQ(tsl::inner(r.certificate.dual, ones(4, 7)), Rational(8, 3));
  EXPECT_LE(tsl::ts_norm(r.certificate.dual, kClassic).value, Rational(1));
}

TEST(Gauge, MixedSignsUseSolidity) {
  RationalVector x = ones(4, 7);
  x.set(5, Rational(-1));
  EXPECT_EQ(tsl::tss_gauge(x, kClassic).value, Rational(8, 3));
}

TEST(Gauge, CheckerRejectsTamperedCertificates) {
  const auto x = ones(4, 7);
  const auto cert = tsl::tss_gauge(x, kClassic).certificate;
  auto low = cert;
  low.value = Rational(2);
  EXPECT_FALSE(tsl::check_gauge_certificate(x, kClassic, Theta::half(), low).ok);
  auto bad_dual = cert;
  bad_dual.dual *= Rational(2);
  EXPECT_FALSE(tsl::check_gauge_certificate(x, kClassic, Theta::half(), bad_dual).ok);
  auto bad_terms = cert;
  bad_terms.decomposition.front().vector *= Rational(3);
  EXPECT_FALSE(tsl::check_gauge_certificate(x, kClassic, Theta::half(), bad_terms).ok);
  // The same certificate does not hold for a smaller system.
  EXPECT_FALSE(tsl::check_gauge_certificate(x, AdmissibilitySystem::size_cap(1, false), Theta::half(), cert).ok);
}

TEST(Gauge, DualityAgainstTsNormOnRandomVectors) {
  std::mt19937_64 rng(8);
  for (const auto& sys : {kClassic, AdmissibilitySystem::size_cap(3, false)}) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto x = random_vector(rng, 1 + static_cast<int>(rng() % 6));
      const auto r = tsl::tss_gauge(x, sys);
      EXPECT_EQ(tsl::inner(r.certificate.dual, x), r.value);
      EXPECT_LE(tsl::ts_norm(r.certificate.dual, sys).value, Rational(1));
      // Support function over the generators equals the implicit norm.
      const auto f = random_vector(rng, 5);
      const auto gens = tsl::enumerate_generators(sys, 5);
      EXPECT_EQ(tsl::support_value(f, gens), tsl::ts_norm(f, sys).value);
    }
  }
}

TEST(Gauge, BlockInequalityAlongBranchPoints) {
  // {1,...,6} is a member, so E0 = [] and Ek = {k}.
  const auto sys = AdmissibilitySystem::size_cap(6, false);
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = random_vector(rng, 6);
    Rational worst(0);
    for (Index k = 1; k <= 6; ++k) worst = tsl::max(worst, tsl::tss_gauge(tsl::restrict({k}, x), sys).value);
    const Rational value = tsl::tss_gauge(x, sys).value;
    EXPECT_LE(worst, value);
    EXPECT_LE(value, Rational(2) * worst);
  }
}

TEST(PolarOracle, SmallSystems) {
  for (const auto& sys : {kClassic, AdmissibilitySystem::explicit_sets({{1}})}) {
    for (int level = 1; level <= 4; ++level) {
      const auto rep = tsl::polar_oracle(sys, level, Theta::half(), 3, 40);
      EXPECT_TRUE(rep.ok()) << "level " << level;
      EXPECT_GT(rep.vertices, 0U);
    }
  }
  EXPECT_THROW(tsl::polar_oracle(kClassic, 6), tsl::InputError);
}

TEST(PolarOracle, VerticesOfTheL1Polar) {
  const auto v = tsl::polar_vertices({RationalVector::unit(1), RationalVector::unit(2)}, 2);
  // Vertices of [0,1]^2: the origin, (1,0), (0,1), (1,1).
  ASSERT_EQ(v.size(), 4U);
  for (const auto& f : v) {
    if (!f.is_zero()) EXPECT_EQ(f.sup_norm(), Rational(1));
  }
}

}  // namespace

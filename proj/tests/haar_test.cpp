#include <gtest/gtest.h>

#include "haar_riesz/haar.hpp"
#include "oracles.hpp"

namespace hr = haar_riesz;
using hr::CoefficientMap;
using hr::DyadicInterval;
using hr::PiecewiseConstant;
using hr::Rational;
using hr::StepSet;

namespace {

Rational R(long n, long d = 1) { return Rational(n, d); }

const StepSet kTwoThirds = StepSet::interval(R(0), R(2, 3));

std::vector<DyadicInterval> all_intervals(int depth) {
  std::vector<DyadicInterval> out;
  for (int n = 0; n <= depth; ++n) {
    for (std::uint64_t k = 0; k < (std::uint64_t{1} << n); ++k) out.emplace_back(n, k);
  }
  return out;
}

CoefficientMap random_coeffs(oracle::Lcg& rng, int depth, int count) {
  CoefficientMap c;
  for (int i = 0; i < count; ++i) {
    const int n = static_cast<int>(rng.range(0, depth));
    const auto k = static_cast<std::uint64_t>(rng.range(0, (1L << n) - 1));
    c.set(DyadicInterval(n, k), R(rng.range(-9, 9), rng.range(1, 4)));
  }
  return c;
}

}  // namespace

TEST(HaarFunction, SignsOnHalves) {
  const auto h = hr::haar_function(DyadicInterval::unit());
  EXPECT_EQ(h(R(0)), R(-1));
  EXPECT_EQ(h(R(1, 3)), R(-1));
  EXPECT_EQ(h(R(1, 2)), R(1));
  EXPECT_EQ(h(R(9, 10)), R(1));

  const auto right = hr::haar_function(DyadicInterval(1, 1));
  EXPECT_EQ(right, PiecewiseConstant({R(0), R(1, 2), R(3, 4), R(1)}, {R(0), R(-1), R(1)}));
}

TEST(HaarFunction, MatchesPointwiseDefinitionAndHasMeanZero) {
  for (const auto& i : all_intervals(4)) {
    const auto h = hr::haar_function(i);
    EXPECT_EQ(h.integral(), R(0));
    for (long x = 0; x < 64; ++x) {
      const Rational pt = R(2 * x + 1, 128);
      EXPECT_EQ(h(pt), oracle::haar_at(i, pt));
    }
  }
}

TEST(Halves, LevelAndIndex) {
  const auto [lh, rh] = hr::halves(DyadicInterval::unit());
  EXPECT_EQ(lh, DyadicInterval(1, 0));
  EXPECT_EQ(rh, DyadicInterval(1, 1));
  const auto [l2, r2] = hr::halves(DyadicInterval(1, 1));
  EXPECT_EQ(l2.left(), R(1, 2));
  EXPECT_EQ(l2.right(), R(3, 4));
  EXPECT_EQ(r2.left(), R(3, 4));
  EXPECT_EQ(r2.level, 2);
}

TEST(RestrictedNormSq, KnownValues) {
  EXPECT_EQ(hr::restricted_norm_sq(DyadicInterval::unit(), kTwoThirds), R(2, 3));
  EXPECT_EQ(hr::restricted_norm_sq(DyadicInterval(3, 2), StepSet::full()), R(1, 8));
  // I_2 = [1/2, 3/4), coefficient 2^0
  EXPECT_EQ(hr::restricted_norm_sq(DyadicInterval(2, 2), kTwoThirds), R(1, 6));
}

TEST(InnerProduct, KnownValues) {
  EXPECT_EQ(hr::inner_product(DyadicInterval::unit(), DyadicInterval(1, 1), StepSet::full()), R(0));
  const Rational expected = oracle::inner_product_by_integration(DyadicInterval::unit(), DyadicInterval(1, 1), kTwoThirds);
  EXPECT_EQ(expected, R(-1, 6));
  EXPECT_EQ(hr::inner_product(DyadicInterval::unit(), DyadicInterval(1, 1), kTwoThirds), R(-1, 6));
  EXPECT_EQ(hr::inner_product(DyadicInterval(2, 1), DyadicInterval(2, 1), kTwoThirds),
            hr::restricted_norm_sq(DyadicInterval(2, 1), kTwoThirds));
}

TEST(InnerProduct, MatchesIntegrationOracleOnRandomSets) {
  oracle::Lcg rng(3);
  const auto family = all_intervals(3);
  for (int trial = 0; trial < 12; ++trial) {
    const auto e = oracle::random_set(rng, 40, 1 + trial % 4);
    for (const auto& a : family) {
      for (const auto& b : family) {
        const Rational ip = hr::inner_product(a, b, e);
        EXPECT_EQ(ip, oracle::inner_product_by_integration(a, b, e)) << a.str() << " " << b.str();
        EXPECT_EQ(ip, hr::inner_product(b, a, e));
        if (!a.nested_with(b)) {
          EXPECT_EQ(ip, R(0));
        }
      }
    }
  }
}

TEST(InnerProduct, AdditiveUnderSplittingTheSet) {
  oracle::Lcg rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const auto e = oracle::random_set(rng, 64, 3);
    const auto ec = e.complement();
    for (const auto& a : all_intervals(3)) {
      for (const auto& b : all_intervals(3)) {
        EXPECT_EQ(hr::inner_product(a, b, e) + hr::inner_product(a, b, ec), hr::inner_product(a, b, StepSet::full()));
      }
    }
  }
}

TEST(Combination, EmptyIsZero) {
  EXPECT_EQ(hr::combination(CoefficientMap{}, kTwoThirds), PiecewiseConstant::zero());
  EXPECT_EQ(hr::norm_sq(hr::combination(CoefficientMap{}, kTwoThirds)), R(0));
}

TEST(Combination, ZigzagFirstTwoTerms) {
  const CoefficientMap c{{DyadicInterval::unit(), R(1)}, {DyadicInterval(2, 2), R(1)}};
  const auto f = hr::combination(c, kTwoThirds);
  const PiecewiseConstant expected({R(0), R(1, 2), R(5, 8), R(2, 3), R(1)}, {R(-1), R(0), R(2), R(0)});
  EXPECT_EQ(f, expected);
  EXPECT_EQ(hr::norm_sq(f), R(2, 3));
}

TEST(Combination, MatchesPointwiseSum) {
  oracle::Lcg rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto e = oracle::random_set(rng, 30, 2);
    const auto c = random_coeffs(rng, 4, 6);
    const auto f = hr::combination(c, e);
    for (long x = 0; x < 240; ++x) {
      const Rational pt = R(2 * x + 1, 480);
      Rational v;
      if (e.contains(pt)) {
        for (const auto& [i, a] : c.entries()) v += a * oracle::haar_at(i, pt);
      }
      EXPECT_EQ(f(pt), v);
    }
  }
}

TEST(NormSq, BasicValues) {
  EXPECT_EQ(hr::norm_sq(PiecewiseConstant::zero()), R(0));
  EXPECT_EQ(hr::norm_sq(hr::haar_function(DyadicInterval::unit())), R(1));
}

TEST(NormSq, DirectIntegrationEqualsDoubleSum) {
  oracle::Lcg rng(29);
  for (int trial = 0; trial < 40; ++trial) {
    const auto e = oracle::random_set(rng, 64, 1 + trial % 4);
    const auto c = random_coeffs(rng, 5, 1 + trial % 9);
    Rational double_sum;
    for (const auto& [i, a] : c.entries()) {
      for (const auto& [j, b] : c.entries()) {
        double_sum += a * b * oracle::inner_product_by_integration(i, j, e);
      }
    }
    EXPECT_EQ(hr::norm_sq(hr::combination(c, e)), double_sum);
  }
}

TEST(NormSq, ParsevalOnFullSet) {
  oracle::Lcg rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const auto c = random_coeffs(rng, 6, 1 + trial % 10);
    Rational expected;
    for (const auto& [i, a] : c.entries()) expected += a * a * Rational::pow2(-i.level);
    EXPECT_EQ(hr::norm_sq(hr::combination(c, StepSet::full())), expected);
  }
}

TEST(EnumerateFamily, FullSetTakesEverything) {
  const auto family = hr::enumerate_family(2, StepSet::full(), R(1));
  EXPECT_EQ(family, all_intervals(2));
  EXPECT_EQ(family.size(), 7U);
}

TEST(EnumerateFamily, WeakInequalityAtTwoThirds) {
  EXPECT_EQ(hr::enumerate_family(0, kTwoThirds, R(2, 3)), std::vector<DyadicInterval>{DyadicInterval::unit()});
}

TEST(EnumerateFamily, DensityFilter) {
  // q = 2/3, 1, 1/3 on [0,1), [0,1/2), [1/2,1)
  std::vector<DyadicInterval> expected;
  for (const auto& i : all_intervals(1)) {
    if (hr::density(kTwoThirds, i) >= R(7, 10)) expected.push_back(i);
  }
  ASSERT_EQ(expected, std::vector<DyadicInterval>{DyadicInterval(1, 0)});
  EXPECT_EQ(hr::enumerate_family(1, kTwoThirds, R(7, 10)), expected);
}

TEST(EnumerateFamily, RejectsBadArguments) {
  EXPECT_THROW(hr::enumerate_family(-1, kTwoThirds, R(1, 2)), hr::InputError);
  EXPECT_THROW(hr::enumerate_family(2, kTwoThirds, R(0)), hr::InputError);
  EXPECT_THROW(hr::enumerate_family(2, kTwoThirds, R(3, 2)), hr::InputError);
}

TEST(CoefficientMap, DropsZeros) {
  CoefficientMap c;
  c.set(DyadicInterval(1, 0), R(0));
  EXPECT_TRUE(c.empty());
  c.set(DyadicInterval(1, 0), R(2));
  c.set(DyadicInterval(1, 0), R(0));
  EXPECT_TRUE(c.empty());
}

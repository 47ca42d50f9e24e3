#include <gtest/gtest.h>

#include "haar_riesz/measure.hpp"
#include "oracles.hpp"

namespace hr = haar_riesz;
using hr::DyadicInterval;
using hr::Rational;
using hr::StepSet;

namespace {

Rational R(long n, long d = 1) { return Rational(n, d); }

}  // namespace

TEST(Rational, ParsesReducesAndRendersNumDen) {
  EXPECT_EQ(Rational::parse("4/6"), R(2, 3));
  EXPECT_EQ(Rational::parse("1"), R(1));
  EXPECT_EQ(Rational::parse(" -3/9 "), R(-1, 3));
  EXPECT_EQ(Rational::parse("+10/4"), R(5, 2));
}

TEST(Rational, RejectsMalformedLiterals) {
  EXPECT_THROW(Rational::parse("0.5"), hr::InputError);
  EXPECT_THROW(Rational::parse("1/0"), hr::InputError);
  EXPECT_THROW(Rational::parse(""), hr::InputError);
  EXPECT_THROW(Rational::parse("a/2"), hr::InputError);
  EXPECT_THROW(Rational::parse("2/-1"), hr::InputError);
}

TEST(Rational, StrRoundTrips) {
  for (const auto& r : {R(0), R(5), R(-7, 12), R(1, 3), Rational::pow2(-70)}) {
    EXPECT_EQ(Rational::parse(r.str()), r);
  }
  EXPECT_EQ(R(3).str(), "3/1");
  EXPECT_EQ(R(0).str(), "0/1");
}

TEST(Normalize, MergesAdjacent) {
  const auto e = StepSet::normalize({{R(0), R(1, 2)}, {R(1, 2), R(1)}});
  ASSERT_EQ(e.intervals().size(), 1U);
  EXPECT_EQ(e, StepSet::full());
}

TEST(Normalize, SortsThenMerges) {
  const auto e = StepSet::normalize({{R(1, 4), R(1, 2)}, {R(0), R(1, 4)}});
  EXPECT_EQ(e, StepSet::interval(R(0), R(1, 2)));
}

TEST(Normalize, OverlapMatchesPointSampling) {
  const std::vector<StepSet::Piece> raw{{R(0), R(1, 3)}, {R(1, 4), R(2, 3)}};
  const auto e = StepSet::normalize(raw);
  EXPECT_EQ(oracle::sample_set(e, 360), oracle::sample_union(raw, 360));
  EXPECT_EQ(e, StepSet::interval(R(0), R(2, 3)));
}

TEST(Normalize, RejectsMalformedPairs) {
  EXPECT_THROW(StepSet::normalize({{R(1, 2), R(1, 2)}}), hr::InputError);
  EXPECT_THROW(StepSet::normalize({{R(2, 3), R(1, 3)}}), hr::InputError);
  EXPECT_THROW(StepSet::normalize({{R(-1, 3), R(1, 3)}}), hr::InputError);
  EXPECT_THROW(StepSet::normalize({{R(1, 3), R(4, 3)}}), hr::InputError);
  try {
    StepSet::normalize({{R(0), R(1, 2)}, {R(3, 4), R(1, 5)}});
    FAIL();
  } catch (const hr::InputError& e) {
    EXPECT_NE(std::string(e.what()).find("3/4"), std::string::npos);
  }
}

TEST(Normalize, IdempotentOnRandomInputs) {
  oracle::Lcg rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto e = oracle::random_set(rng, 48, 1 + trial % 6);
    EXPECT_EQ(StepSet::normalize(e.intervals()), e);
    for (std::size_t i = 1; i < e.intervals().size(); ++i) {
      EXPECT_LT(e.intervals()[i - 1].second, e.intervals()[i].first);
    }
  }
}

TEST(IntersectMeasure, KnownValues) {
  const auto two_thirds = StepSet::interval(R(0), R(2, 3));
  EXPECT_EQ(hr::intersect_measure(two_thirds, DyadicInterval(1, 1)), R(1, 6));
  for (int n = 0; n < 6; ++n) {
    for (std::uint64_t k = 0; k < (1U << n); ++k) {
      EXPECT_EQ(hr::intersect_measure(StepSet::full(), DyadicInterval(n, k)), Rational::pow2(-n));
    }
  }
  // [0,1/3) ∪ [1/2,5/8) against [1/4,1/2): only [1/4,1/3) overlaps.
  const auto e = StepSet::normalize({{R(0), R(1, 3)}, {R(1, 2), R(5, 8)}});
  EXPECT_EQ(hr::intersect_measure(e, DyadicInterval(2, 1)), R(1, 12));
}

TEST(Density, KnownValues) {
  const auto two_thirds = StepSet::interval(R(0), R(2, 3));
  EXPECT_EQ(hr::density(two_thirds, DyadicInterval(1, 1)), R(1, 3));
  EXPECT_EQ(hr::density(two_thirds, DyadicInterval::unit()), R(2, 3));
  EXPECT_EQ(hr::density(StepSet(), DyadicInterval(3, 5)), R(0));
}

TEST(IntersectMeasure, AdditiveOverHalvesAndComplement) {
  oracle::Lcg rng(5);
  for (int trial = 0; trial < 60; ++trial) {
    const auto e = oracle::random_set(rng, 96, 1 + trial % 5);
    const auto ec = e.complement();
    EXPECT_EQ(e.measure() + ec.measure(), R(1));
    for (int n = 0; n <= 4; ++n) {
      for (std::uint64_t k = 0; k < (1U << n); ++k) {
        const DyadicInterval i(n, k);
        const auto [lh, rh] = hr::halves(i);
        const Rational m = hr::intersect_measure(e, i);
        EXPECT_EQ(hr::intersect_measure(e, lh) + hr::intersect_measure(e, rh), m);
        EXPECT_EQ(m + hr::intersect_measure(ec, i), i.length());
        const Rational q = hr::density(e, i);
        EXPECT_LE(R(0), q);
        EXPECT_LE(q, R(1));
      }
    }
  }
}

TEST(DyadicInterval, ValidatesAndOrders) {
  EXPECT_THROW(DyadicInterval(2, 4), hr::InputError);
  EXPECT_THROW(DyadicInterval(-1, 0), hr::InputError);
  EXPECT_LT(DyadicInterval(0, 0), DyadicInterval(1, 0));
  EXPECT_LT(DyadicInterval(1, 0), DyadicInterval(1, 1));
  EXPECT_TRUE(DyadicInterval(1, 1).contains(DyadicInterval(3, 6)));
  EXPECT_FALSE(DyadicInterval(1, 1).contains(DyadicInterval(3, 2)));
  EXPECT_EQ(DyadicInterval(2, 3).left(), R(3, 4));
  EXPECT_EQ(DyadicInterval(2, 3).right(), R(1));
}

TEST(StepSet, FromCells) {
  const auto e = StepSet::from_cells(3, {true, true, false, false, true, false, true, true});
  EXPECT_EQ(e, StepSet::normalize({{R(0), R(1, 4)}, {R(1, 2), R(5, 8)}, {R(3, 4), R(1)}}));
  EXPECT_THROW(StepSet::from_cells(3, {true}), hr::InputError);
}

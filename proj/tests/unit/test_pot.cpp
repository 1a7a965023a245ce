#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "fcpp/errors.hpp"
#include "fcpp/pot.hpp"
#include "fcpp/simulate.hpp"

namespace fcpp {
namespace {

EventSeries ramp(std::size_t n) {
  EventSeries s;
  for (std::size_t i = 1; i <= n; ++i) {
    s.times.push_back(static_cast<double>(i));
    s.magnitudes.push_back(static_cast<double>(i));
  }
  return s;
}

TEST(ThresholdFromFraction, OrderStatistic) {
  const auto s = ramp(100);
  const double u = threshold_from_fraction(s, 0.02);
  EXPECT_EQ(u, 98.0);
  EXPECT_EQ(count_exceedances(s, u), 2u);
}

TEST(ThresholdFromFraction, TwoHundredOfTenThousand) {
  EXPECT_EQ(exceedance_target(10000, 0.02), 200u);
  EXPECT_EQ(exceedance_target(40000, 0.02), 800u);
  EXPECT_EQ(exceedance_target(101, 0.02), 3u);
  const auto s = build_series({0.7, {WaitingKind::kExponential, 0.0}, 10000, 5, 0.02});
  EXPECT_EQ(count_exceedances(s, threshold_from_fraction(s, 0.02)), 200u);
}

TEST(ThresholdFromFraction, Errors) {
  auto s = ramp(100);
  EXPECT_THROW(threshold_from_fraction(s, 0.0), DomainError);
  EXPECT_THROW(threshold_from_fraction(s, 1.0), DomainError);
  EXPECT_THROW(threshold_from_fraction(s, 0.01), InsufficientDataError);  // k = 1
  EXPECT_THROW(threshold_from_fraction(ramp(3), 0.9), DomainError);          // k = n
  std::fill(s.magnitudes.begin(), s.magnitudes.end(), 3.0);
  EXPECT_THROW(threshold_from_fraction(s, 0.02), DegenerateSampleError);
}

TEST(ThresholdFromFraction, TiesAreNotExceedances) {
  auto s = ramp(100);
  s.magnitudes[96] = 98.0;  // sorted tail: ..., 96, 98, 98, 99, 100
  const double u = threshold_from_fraction(s, 0.03);
  EXPECT_EQ(u, 98.0);
  EXPECT_EQ(count_exceedances(s, u), 2u);  // the tied 98 is not above u
}

TEST(ExtractIets, IndexArithmetic) {
  EventSeries s;
  for (int i = 1; i <= 10; ++i) {
    s.times.push_back(i);
    s.magnitudes.push_back(i == 2 || i == 5 || i == 6 ? 10.0 : 0.0);
  }
  const auto iets = extract_iets(s, 5.0);
  EXPECT_EQ(iets.iets, (std::vector<double>{1.0, 3.0}));
  EXPECT_EQ(iets.n_star, 6u);
  EXPECT_DOUBLE_EQ(iets.p_hat, 2.0 / 6.0);
}

TEST(ExtractIets, SingleGap) {
  EventSeries s{{0.5, 3.0, 7.25, 9.0}, {5.0, 1.0, 6.0, 0.0}, std::nullopt};
  const auto iets = extract_iets(s, 2.0);
  EXPECT_EQ(iets.iets, (std::vector<double>{6.75}));
  EXPECT_EQ(iets.n_star, 3u);
}

TEST(ExtractIets, TooFewExceedances) {
  EventSeries s{{1.0, 2.0, 3.0}, {5.0, 1.0, 1.0}, std::nullopt};
  EXPECT_THROW(extract_iets(s, 2.0), InsufficientDataError);
}

TEST(ExtractIets, SegmentsDropCrossingGaps) {
  EventSeries s;
  s.times = {1, 2, 3, 4, 1.5, 2.5, 3.5, 4.5};
  s.magnitudes = {9, 0, 9, 9, 9, 0, 0, 9};
  s.segments = std::vector<std::int64_t>{1, 1, 1, 1, 2, 2, 2, 2};
  const auto iets = extract_iets(s, 5.0);
  EXPECT_EQ(iets.iets, (std::vector<double>{1.0, 2.0, 3.0}));
  EXPECT_EQ(iets.n_star, 8u);
  s.segments = std::vector<std::int64_t>{1, 2, 3, 4, 5, 6, 7, 8};
  EXPECT_THROW(extract_iets(s, 5.0), InsufficientDataError);
}

TEST(EventSeriesValidation, Errors) {
  EventSeries s{{1.0, 1.0}, {1.0, 2.0}, std::nullopt};
  EXPECT_THROW(validate(s), DomainError);
  s.segments = std::vector<std::int64_t>{1, 2};
  EXPECT_NO_THROW(validate(s));
  EXPECT_THROW(validate(EventSeries{{1.0}, {1.0}, std::nullopt}), DomainError);
  EXPECT_THROW(validate(EventSeries{{1.0, 2.0}, {1.0}, std::nullopt}), DomainError);
  EXPECT_THROW(validate(EventSeries{{1.0, NAN}, {1.0, 2.0}, std::nullopt}), DomainError);
}

TEST(ExtractIets, MeanIetMatchesExceedanceRate) {
  const auto s = build_series({1.0, {WaitingKind::kExponential, 0.0}, 100000, 3, 0.02});
  const auto iets = extract_iets(s, threshold_from_fraction(s, 0.02));
  const double mean =
      std::accumulate(iets.iets.begin(), iets.iets.end(), 0.0) / static_cast<double>(iets.k());
  EXPECT_NEAR(mean, 50.0, 5.0);
}

TEST(ExtractIets, GapsTelescope) {
  const auto s = build_series({0.6, {WaitingKind::kDirac1, 0.0}, 5000, 9, 0.02});
  const double u = threshold_from_fraction(s, 0.02);
  const auto iets = extract_iets(s, u);
  double first = -1.0;
  double last = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.magnitudes[i] > u) {
      if (first < 0.0) first = s.times[i];
      last = s.times[i];
    }
  }
  EXPECT_EQ(std::accumulate(iets.iets.begin(), iets.iets.end(), 0.0), last - first);

  const auto r = build_series({0.6, {WaitingKind::kParetoMean1, 2.5}, 5000, 9, 0.02});
  const double ur = threshold_from_fraction(r, 0.02);
  const auto ir = extract_iets(r, ur);
  first = -1.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r.magnitudes[i] > ur) {
      if (first < 0.0) first = r.times[i];
      last = r.times[i];
    }
  }
  EXPECT_NEAR(std::accumulate(ir.iets.begin(), ir.iets.end(), 0.0), last - first,
              1e-12 * (last - first));
}

TEST(CountExceedances, MonotoneInThreshold) {
  const auto s = build_series({0.8, {WaitingKind::kExponential, 0.0}, 2000, 4, 0.02});
  std::size_t prev = s.size() + 1;
  for (double u = 0.0; u < 200.0; u += 0.5) {
    const std::size_t c = count_exceedances(s, u);
    EXPECT_LE(c, prev);
    prev = c;
  }
}

TEST(ExtractIets, DistinctMagnitudesGiveTargetMinusOne) {
  for (std::size_t n : {100u, 333u, 1000u, 10000u}) {
    for (double frac : {0.02, 0.05, 0.1}) {
      const auto s = build_series({0.9, {WaitingKind::kExponential, 0.0}, n, n, frac});
      const auto iets = extract_iets(s, threshold_from_fraction(s, frac));
      EXPECT_EQ(iets.k(), exceedance_target(n, frac) - 1) << n << " " << frac;
    }
  }
}

}  // namespace
}  // namespace fcpp

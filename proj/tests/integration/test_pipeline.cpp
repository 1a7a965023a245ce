#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "fcpp/estimators.hpp"
#include "fcpp/pot.hpp"
#include "fcpp/simulate.hpp"
#include "oracles.hpp"

namespace fcpp {
namespace {

IetSample pipeline_sample(const ScenarioSpec& spec, std::uint64_t replicate) {
  const EventSeries s = build_series(spec, replicate);
  return extract_iets(s, threshold_from_fraction(s, spec.frac));
}

// Simulate, threshold and fit; averaged over replicates so a single unlucky
// draw does not decide the outcome.
TEST(Pipeline, RecoversHeavyTailedClusteredModel) {
  const ScenarioSpec spec{0.8, {WaitingKind::kMittagLeffler, 0.8}, 10000, 42, 0.02};
  constexpr int kReplicates = 8;
  double beta_err = 0.0;
  double theta_err = 0.0;
  for (int r = 0; r < kReplicates; ++r) {
    const IetSample s = pipeline_sample(spec, r);
    EXPECT_EQ(s.k(), 199u);
    const FitResult f = fit_cmmod(s);
    beta_err += std::abs(f.params.beta - 0.8);
    theta_err += std::abs(f.params.theta - 0.8);
    EXPECT_NEAR(f.rho, 1.0, 0.6);
    // Starts within the 1e-12 tie tolerance may be preferred for larger theta.
    for (const StartDiagnostics& d : f.starts) {
      EXPECT_LE(f.distance, d.distance + 2e-12);
    }
  }
  EXPECT_LT(beta_err / kReplicates, 0.15);
  EXPECT_LT(theta_err / kReplicates, 0.15);
}

TEST(Pipeline, UnclusteredExponentialLooksLikePoisson) {
  const ScenarioSpec spec{1.0, {WaitingKind::kExponential, 0.0}, 10000, 7, 0.02};
  double beta = 0.0;
  double theta = 0.0;
  double interval_theta = 0.0;
  constexpr int kReplicates = 6;
  for (int r = 0; r < kReplicates; ++r) {
    const IetSample s = pipeline_sample(spec, r);
    const FitResult f = fit_cmmod(s);
    beta += f.params.beta / kReplicates;
    theta += f.params.theta / kReplicates;
    interval_theta += interval_estimator(s).theta / kReplicates;
  }
  EXPECT_GT(beta, 0.85);
  EXPECT_GT(theta, 0.85);
  EXPECT_GT(interval_theta, 0.85);
}

TEST(Pipeline, SegmentedSeriesOnlyPairsWithinSegments) {
  EventSeries s = build_series(ScenarioSpec{0.7, {WaitingKind::kExponential, 0.0}, 6000, 3, 0.02});
  std::vector<std::int64_t> seg(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    seg[i] = static_cast<std::int64_t>(i / 1000);
  }
  s.segments = seg;
  const double u = threshold_from_fraction(s, 0.02);
  const IetSample cut = extract_iets(s, u);
  EventSeries joined = s;
  joined.segments.reset();
  const IetSample whole = extract_iets(joined, u);
  EXPECT_LT(cut.k(), whole.k());
  EXPECT_GE(cut.k() + 5, whole.k());
  const FitResult f = fit_cmmod(cut);
  EXPECT_GT(f.params.theta, 0.3);
}

TEST(Pipeline, FittedModelMatchesSampleDistribution) {
  const ScenarioSpec spec{0.6, {WaitingKind::kMittagLeffler, 0.7}, 40000, 5, 0.02};
  const IetSample s = pipeline_sample(spec, 0);
  const FitResult f = fit_cmmod(s);
  const MixtureDistribution m(f.params);
  // The fitted mixture tracks max{F~_k, 1 - theta}, the empirical cdf of the
  // shifted IETs floored at the atom, at every sample point.
  const double k = static_cast<double>(s.k());
  double sup = 0.0;
  for (std::size_t i = 0; i < s.k(); ++i) {
    const double fitted = m.cdf(s.iets[i] + 1.0);
    for (double level : {static_cast<double>(i) / k, static_cast<double>(i + 1) / k}) {
      sup = std::max(sup, std::abs(std::max(level, 1.0 - f.params.theta) - fitted));
    }
  }
  EXPECT_LT(sup, 2.0 / std::sqrt(k));
  EXPECT_NEAR(f.params.theta, 0.6, 0.15);
  EXPECT_NEAR(f.params.beta, 0.7, 0.15);
}

}  // namespace
}  // namespace fcpp

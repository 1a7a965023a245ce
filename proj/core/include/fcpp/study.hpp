#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fcpp/format.hpp"
#include "fcpp/mixture.hpp"
#include "fcpp/simulate.hpp"

namespace fcpp {

enum class EstimatorKind {
  kCmmod,     // beta, theta, rho
  kInterval,  // theta, rho
  kLogMoment, // beta, rho
  kMle,       // beta, rho
};

std::string to_string(EstimatorKind e);

/// "cmmod", "interval", "logmom" or "mle". Throws ParseError.
EstimatorKind parse_estimator(std::string_view s);

enum class Parameter { kBeta, kTheta, kRho };

std::string to_string(Parameter p);

/// Parameters an estimator reports, in output order.
std::vector<Parameter> parameters_of(EstimatorKind e);

/// One simulation scenario. The true tail parameter is
/// waiting.tail_parameter(), the true extremal index is theta and the true
/// normalised scale is 1.
struct Scenario {
  double theta = 1.0;
  WaitingLaw waiting;
  std::size_t n = 10000;
  double frac = 0.02;

  /// e.g. "ml:0.8/theta=0.8/n=10000/frac=0.02"
  std::string name() const;
  double true_value(Parameter p) const;
};

struct StudyConfig {
  std::vector<Scenario> scenarios;
  std::size_t replicates = 100;
  std::vector<EstimatorKind> estimators = {EstimatorKind::kCmmod};
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  double lower_bound = 0.1;
  ModelFamily family = ModelFamily::kFcpp;  // used by the cmmod estimator
  bool record_timing = false;
};

void validate(const StudyConfig& c);

/// Result of one estimator on one replicate. Values not reported by the
/// estimator are NaN. seconds is NaN unless timing was requested.
struct ReplicateEstimate {
  std::size_t scenario = 0;
  std::size_t replicate = 0;
  EstimatorKind estimator = EstimatorKind::kCmmod;
  bool ok = false;
  std::string error;
  double beta = 0.0;
  double theta = 0.0;
  double rho = 0.0;
  double seconds = 0.0;

  double value(Parameter p) const;
};

struct CellSummary {
  std::size_t scenario = 0;
  EstimatorKind estimator = EstimatorKind::kCmmod;
  Parameter parameter = Parameter::kBeta;
  double true_value = 0.0;
  double bias = 0.0;          // NaN with no successful replicate
  double rmse = 0.0;          // NaN with no successful replicate
  double mean_abs_error = 0.0;
  double rmse_std_error = 0.0;  // delta-method standard error of rmse
  double mae_std_error = 0.0;
  std::size_t n_replicates = 0;  // successful replicates
  std::size_t n_failures = 0;
  double mean_seconds = 0.0;     // NaN unless timing was recorded
};

struct StudyResult {
  StudyConfig config;
  std::vector<ReplicateEstimate> estimates;  // ordered by (scenario, replicate, estimator)
  std::vector<CellSummary> cells;            // ordered by (scenario, estimator, parameter)

  const CellSummary& cell(std::size_t scenario, EstimatorKind e, Parameter p) const;
};

/// Seed of scenario i: every scenario gets its own family of streams.
std::uint64_t scenario_seed(std::uint64_t base, std::size_t scenario_index);

/// Runs every estimator on every replicate of every scenario with `jobs`
/// worker threads. Replicate r of scenario i simulates
/// build_series({..., seed = scenario_seed(seed, i)}, r), so results do not
/// depend on the number of workers. Estimation failures are recorded per
/// replicate and excluded from the summaries.
StudyResult run_study(const StudyConfig& c);

/// Summarises replicate estimates; exposed for testing.
std::vector<CellSummary> summarize(const StudyConfig& c,
                                   const std::vector<ReplicateEstimate>& estimates);

/// One CSV row per cell with the header
/// scenario,estimator,parameter,true_value,bias,rmse,n_replicates,n_failures,mean_seconds
void write_study_csv(std::ostream& os, const StudyResult& r);

/// Scenario grid of the full simulation design: theta in {0.5, ..., 1}, four
/// finite-mean waiting-time laws (beta = 1) and three heavy-tailed laws with
/// beta in {0.5, ..., 0.9}; n = 10000, frac = 0.02.
std::vector<Scenario> full_grid();

struct TimingRow {
  std::size_t k = 0;
  double mean_seconds = 0.0;
  std::size_t replicates = 0;
  std::size_t failures = 0;
};

struct TimingProfile {
  std::vector<TimingRow> rows;
  double slope = 0.0;  // least-squares slope of log time on log k; NaN for one row
};

/// Mean wall time of one fit for each k. Series of length 50 (k + 1) are drawn
/// from ML(0.8, 1) waits with theta = 0.8 and thresholded at frac = 0.02,
/// which leaves exactly k inter-exceedance times. Runs on the calling thread.
TimingProfile timing_profile(const std::vector<std::size_t>& k_values, std::size_t replicates,
                             std::uint64_t seed = 1,
                             EstimatorKind estimator = EstimatorKind::kCmmod);

}  // namespace fcpp

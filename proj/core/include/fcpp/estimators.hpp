#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "fcpp/mixture.hpp"

namespace fcpp {

/// Inter-exceedance times sorted ascending, with the exceedance metadata
/// needed to normalise the scale.
struct IetSample {
  std::vector<double> iets;  // sorted ascending, all > 0
  std::size_t n_star = 0;    // 1-based event index of the last exceedance
  double p_hat = 1.0;        // k / n_star

  std::size_t k() const { return iets.size(); }

  /// Sorts and validates `iets` (at least one, all positive and finite).
  /// n_star defaults to k, which gives p_hat = 1.
  static IetSample from_iets(std::vector<double> iets, std::size_t n_star = 0);
};

/// sigma * p^(1/beta); unlike rho_of this accepts p = 1.
double normalised_scale(double sigma, double beta, double p_hat);

/// Cramer-von Mises distance between the empirical cdf of the IETs and the
/// mixture, in closed sum form.
double cm_distance(const IetSample& s, const FcppParams& p);

/// Modified distance: empirical cdf of the IETs shifted by +1, truncated below
/// at 1 - theta, integrated against the continuous component only and divided
/// by theta^2. Returns exactly 1/3 when theta < 1/k.
double cmmod_distance(const IetSample& s, const FcppParams& p);

struct StartDiagnostics {
  FcppParams start;
  FcppParams end;
  double distance = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
  std::string message;
};

struct FitResult {
  FcppParams params;
  double rho = 0.0;
  double distance = 0.0;
  ModelFamily family = ModelFamily::kFcpp;
  std::vector<StartDiagnostics> starts;
  std::size_t best_start = 0;
  std::string estimator_name;
};

/// Minimum-distance fit of the mixture by cmmod_distance over
/// beta, theta in [a, 1] (pinned to 1 where the family says so) and sigma > 0.
/// Starts at {0.25, 0.55, 0.85}^2 for the free coordinates of (beta, theta),
/// clamped to [a, 1], with sigma from the log-moment estimate of the shifted
/// IETs. The best converged start wins; ties within 1e-12 go to larger theta,
/// then larger beta.
///
/// Throws DomainError unless 0 < a <= 1, InsufficientDataError for k < 2 or
/// a <= 1/k, DegenerateSampleError if all IETs are equal and
/// OptimizationError if no start converges.
FitResult fit_cmmod(const IetSample& s, double lower_bound = 0.1,
                    ModelFamily family = ModelFamily::kFcpp);

struct IntervalEstimate {
  double theta = 1.0;
  double sigma = 0.0;  // mean IET
  double rho = 0.0;    // p_hat * mean IET
  bool tail_branch = false;  // true when some IET exceeds 2
};

/// Ferro-Segers interval estimator adapted to IETs below one. Throws
/// InsufficientDataError for k < 2.
IntervalEstimate interval_estimator(const IetSample& s);

struct LogMomentEstimate {
  double beta = 1.0;
  double sigma = 1.0;
};

/// Log-moment estimator of ML(beta, sigma):
///   beta = pi sqrt(2) / sqrt(pi^2 + 6 S^2),  sigma = exp(mean log + gamma_E),
/// with S^2 the unbiased variance of the log data. beta is clipped to 1.
/// Throws DegenerateSampleError when S^2 = 0.
LogMomentEstimate log_moment_estimator(std::span<const double> values);
LogMomentEstimate log_moment_estimator(const IetSample& s);

/// Sum of log densities of ML(beta, sigma) over the IETs.
double ml_log_likelihood(const IetSample& s, double beta, double sigma);

struct MleEstimate {
  double beta = 1.0;
  double sigma = 1.0;
  double log_likelihood = 0.0;
  double start_log_likelihood = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Smallest tail parameter searched by ml_mle.
inline constexpr double kMleMinBeta = 0.05;

/// Maximum-likelihood fit of ML(beta, sigma), beta in [0.05, 1], started at the
/// log-moment estimate. Never returns a point worse than its start.
MleEstimate ml_mle(const IetSample& s);

}  // namespace fcpp

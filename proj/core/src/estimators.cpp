#include "fcpp/estimators.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include "fcpp/errors.hpp"
#include "fcpp/optimize.hpp"

namespace fcpp {
namespace {

constexpr std::array<double, 3> kStartGrid = {0.25, 0.55, 0.85};
constexpr double kTieTolerance = 1e-12;

void require_two(std::size_t k, const char* what) {
  if (k < 2) {
    throw InsufficientDataError(std::string(what) + " needs at least 2 inter-exceedance times, got " +
                                std::to_string(k));
  }
}

}  // namespace

IetSample IetSample::from_iets(std::vector<double> iets, std::size_t n_star) {
  if (iets.empty()) {
    throw InsufficientDataError("no inter-exceedance times");
  }
  for (double t : iets) {
    if (!(t > 0.0) || !std::isfinite(t)) {
      throw DomainError("inter-exceedance times must be positive and finite");
    }
  }
  std::sort(iets.begin(), iets.end());
  IetSample s;
  s.n_star = n_star == 0 ? iets.size() : n_star;
  if (s.n_star < iets.size()) {
    throw DomainError("n_star cannot be smaller than the number of inter-exceedance times");
  }
  s.p_hat = static_cast<double>(iets.size()) / static_cast<double>(s.n_star);
  s.iets = std::move(iets);
  return s;
}

double normalised_scale(double sigma, double beta, double p_hat) {
  return p_hat == 1.0 ? sigma : sigma * std::pow(p_hat, 1.0 / beta);
}

double cm_distance(const IetSample& s, const FcppParams& p) {
  const MixtureDistribution f(p);
  const double k = static_cast<double>(s.k());
  double sum = 0.0;
  for (std::size_t i = 0; i < s.k(); ++i) {
    const double r = (static_cast<double>(i) + 0.5) / k - f.cdf(s.iets[i]);
    sum += r * r;
  }
  const double q = 1.0 - p.theta;
  return sum / k + 1.0 / (12.0 * k * k) + 2.0 / 3.0 * q * q * q;
}

double cmmod_distance(const IetSample& s, const FcppParams& p) {
  const MixtureDistribution f(p);
  const std::size_t k = s.k();
  const double kd = static_cast<double>(k);
  // l = ceil(k (1 - theta)) = k - m with m = floor(k theta). The product
  // k theta can round up onto an integer, so m is corrected with the exact
  // sign of k theta - m; otherwise theta just below 1/k would miss the plateau.
  double m = std::floor(kd * p.theta);
  if (std::fma(p.theta, kd, -m) < 0.0) {
    m -= 1.0;
  }
  if (m < 1.0) {
    return 1.0 / 3.0;
  }
  const std::size_t l = k - static_cast<std::size_t>(m);
  const double ld = static_cast<double>(l);
  const double d = std::fma(-p.theta, kd, m);  // k (1 - theta) - l, in (-1, 0]
  const double kq = ld + d;
  const double t3 = p.theta * p.theta * p.theta;

  double sum = 0.0;
  for (std::size_t i = l + 1; i <= k; ++i) {
    const double r = (static_cast<double>(i) - 0.5) / kd - f.cdf(s.iets[i - 1] + 1.0);
    sum += r * r;
  }
  double value = sum / (kd * t3) + (kd - ld) / (12.0 * kd * kd * kd * t3);

  // Boundary terms. Each carries a factor (kq)^j - l^j, written through d so
  // that they vanish exactly when kq is an integer; for l = 0 (theta = 1)
  // they are skipped and F(t_(0) + 1) is never needed.
  if (l > 0) {
    const double fl = f.cdf(s.iets[l - 1] + 1.0);
    const double cube = d * (kq * kq + kq * ld + ld * ld);
    const double square = d * (kq + ld);
    value += -cube / (3.0 * kd * kd * kd * t3) + square / (kd * kd * t3) * fl -
             d / (kd * t3) * fl * fl;
  }
  return value;
}

FitResult fit_cmmod(const IetSample& s, double lower_bound, ModelFamily family) {
  const std::size_t k = s.k();
  require_two(k, "fit_cmmod");
  if (!(lower_bound > 0.0 && lower_bound <= 1.0)) {
    throw DomainError("lower bound a must lie in (0, 1], got " + std::to_string(lower_bound));
  }
  if (!(lower_bound > 1.0 / static_cast<double>(k))) {
    throw InsufficientDataError("lower bound a = " + std::to_string(lower_bound) + " needs more than " +
                                std::to_string(static_cast<int>(std::floor(1.0 / lower_bound))) +
                                " inter-exceedance times, got " + std::to_string(k));
  }
  if (s.iets.front() == s.iets.back()) {
    throw DegenerateSampleError("all inter-exceedance times are equal");
  }

  std::vector<double> shifted(s.iets);
  for (double& t : shifted) {
    t += 1.0;
  }
  const double sigma0 = log_moment_estimator(shifted).sigma;

  const bool fit_beta = beta_free(family);
  const bool fit_theta = theta_free(family);
  auto to_params = [&](const std::vector<double>& x) {
    std::size_t j = 0;
    FcppParams p;
    p.beta = fit_beta ? x[j++] : 1.0;
    p.theta = fit_theta ? x[j++] : 1.0;
    p.sigma = std::exp(x[j]);
    return p;
  };
  // Trial steps in log sigma can overflow or underflow; treat those points as
  // infinitely bad instead of letting validation throw.
  const Objective objective = [&](const std::vector<double>& x) {
    const FcppParams p = to_params(x);
    if (!(p.sigma > 0.0) || !std::isfinite(p.sigma)) {
      return std::numeric_limits<double>::infinity();
    }
    return cmmod_distance(s, p);
  };

  Bounds bounds;
  const std::size_t free_shape = (fit_beta ? 1 : 0) + (fit_theta ? 1 : 0);
  bounds.lower.assign(free_shape, lower_bound);
  bounds.upper.assign(free_shape, 1.0);
  bounds.lower.push_back(-std::numeric_limits<double>::infinity());
  bounds.upper.push_back(std::numeric_limits<double>::infinity());

  const std::vector<double> single = {1.0};
  const std::vector<double> grid(kStartGrid.begin(), kStartGrid.end());
  FitResult fit;
  fit.family = family;
  fit.estimator_name = "cmmod";
  bool found = false;
  for (double b0 : fit_beta ? grid : single) {
    for (double t0 : fit_theta ? grid : single) {
      StartDiagnostics diag;
      diag.start = FcppParams{std::clamp(b0, lower_bound, 1.0), std::clamp(t0, lower_bound, 1.0),
                              sigma0};
      std::vector<double> x0;
      if (fit_beta) x0.push_back(diag.start.beta);
      if (fit_theta) x0.push_back(diag.start.theta);
      x0.push_back(std::log(sigma0));

      const OptimizerResult r = minimize_box(objective, x0, bounds);
      diag.end = to_params(r.x);
      diag.distance = r.value;
      diag.iterations = r.iterations;
      diag.evaluations = r.evaluations;
      diag.converged = r.converged && std::isfinite(r.value);
      diag.message = r.message;
      fit.starts.push_back(diag);

      if (!diag.converged) {
        continue;
      }
      const std::size_t idx = fit.starts.size() - 1;
      if (!found) {
        fit.best_start = idx;
        found = true;
        continue;
      }
      const StartDiagnostics& best = fit.starts[fit.best_start];
      bool better = diag.distance < best.distance - kTieTolerance;
      if (!better && std::abs(diag.distance - best.distance) <= kTieTolerance) {
        better = diag.end.theta > best.end.theta ||
                 (diag.end.theta == best.end.theta && diag.end.beta > best.end.beta);
      }
      if (better) {
        fit.best_start = idx;
      }
    }
  }
  if (!found) {
    throw OptimizationError("no optimizer start converged");
  }

  fit.params = fit.starts[fit.best_start].end;
  fit.distance = cmmod_distance(s, fit.params);
  fit.rho = normalised_scale(fit.params.sigma, fit.params.beta, s.p_hat);
  return fit;
}

IntervalEstimate interval_estimator(const IetSample& s) {
  const std::size_t k = s.k();
  require_two(k, "interval_estimator");
  IntervalEstimate out;
  out.tail_branch = s.iets.back() > 2.0;  // sorted, so the last is the largest

  double num = 0.0;
  double den = 0.0;
  for (double t : s.iets) {
    if (out.tail_branch) {
      const double a = std::max(t - 1.0, 0.0);
      num += a;
      den += a * std::max(t - 2.0, 0.0);
    } else {
      num += t;
      den += t * t;
    }
  }
  if (!(den > 0.0)) {
    throw DegenerateSampleError("interval estimator denominator is zero");
  }
  out.theta = std::min(2.0 * num * num / (static_cast<double>(k) * den), 1.0);

  const double mean = std::accumulate(s.iets.begin(), s.iets.end(), 0.0) / static_cast<double>(k);
  out.sigma = mean;
  out.rho = s.p_hat * mean;
  return out;
}

LogMomentEstimate log_moment_estimator(std::span<const double> values) {
  require_two(values.size(), "log_moment_estimator");
  double mean = 0.0;
  for (double v : values) {
    if (!(v > 0.0)) {
      throw DomainError("log-moment estimator needs positive data");
    }
    mean += std::log(v);
  }
  const double n = static_cast<double>(values.size());
  mean /= n;
  double ss = 0.0;
  for (double v : values) {
    const double r = std::log(v) - mean;
    ss += r * r;
  }
  const double var = ss / (n - 1.0);
  if (!(var > 0.0)) {
    throw DegenerateSampleError("sample log-variance is zero");
  }
  constexpr double pi = std::numbers::pi;
  LogMomentEstimate out;
  out.beta = std::min(pi * std::numbers::sqrt2 / std::sqrt(pi * pi + 6.0 * var), 1.0);
  out.sigma = std::exp(mean + std::numbers::egamma);
  return out;
}

LogMomentEstimate log_moment_estimator(const IetSample& s) {
  return log_moment_estimator(std::span<const double>(s.iets));
}

double ml_log_likelihood(const IetSample& s, double beta, double sigma) {
  const MlDistribution d(MlParams{beta, sigma});
  double sum = 0.0;
  for (double t : s.iets) {
    sum += d.log_pdf(t);
  }
  return std::isnan(sum) ? -std::numeric_limits<double>::infinity() : sum;
}

MleEstimate ml_mle(const IetSample& s) {
  const LogMomentEstimate lm = log_moment_estimator(s);
  const double k = static_cast<double>(s.k());
  const double beta0 = std::clamp(lm.beta, kMleMinBeta, 1.0);

  // Mean negative log-likelihood, so tolerances do not scale with k.
  const Objective objective = [&](const std::vector<double>& x) {
    const double sigma = std::exp(x[1]);
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
      return std::numeric_limits<double>::infinity();
    }
    return -ml_log_likelihood(s, x[0], sigma) / k;
  };
  const Bounds bounds{{kMleMinBeta, -std::numeric_limits<double>::infinity()},
                      {1.0, std::numeric_limits<double>::infinity()}};
  const OptimizerResult r = minimize_box(objective, {beta0, std::log(lm.sigma)}, bounds);

  MleEstimate out;
  out.start_log_likelihood = ml_log_likelihood(s, beta0, lm.sigma);
  out.iterations = r.iterations;
  out.converged = r.converged;
  const double ll = ml_log_likelihood(s, r.x[0], std::exp(r.x[1]));
  if (ll >= out.start_log_likelihood) {
    out.beta = r.x[0];
    out.sigma = std::exp(r.x[1]);
    out.log_likelihood = ll;
  } else {
    out.beta = beta0;
    out.sigma = lm.sigma;
    out.log_likelihood = out.start_log_likelihood;
  }
  if (!std::isfinite(out.log_likelihood)) {
    throw OptimizationError("maximum likelihood fit produced a non-finite log-likelihood");
  }
  return out;
}

}  // namespace fcpp

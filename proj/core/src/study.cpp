#include "fcpp/study.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "fcpp/errors.hpp"
#include "fcpp/estimators.hpp"
#include "fcpp/pot.hpp"

namespace fcpp {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Runs one estimator on one IET sample and fills the estimate fields.
void estimate(const StudyConfig& c, EstimatorKind e, const IetSample& s, ReplicateEstimate& out) {
  out.beta = kNaN;
  out.theta = kNaN;
  out.rho = kNaN;
  switch (e) {
    case EstimatorKind::kCmmod: {
      const FitResult f = fit_cmmod(s, c.lower_bound, c.family);
      out.beta = f.params.beta;
      out.theta = f.params.theta;
      out.rho = f.rho;
      break;
    }
    case EstimatorKind::kInterval: {
      const IntervalEstimate f = interval_estimator(s);
      out.theta = f.theta;
      out.rho = f.rho;
      break;
    }
    case EstimatorKind::kLogMoment: {
      const LogMomentEstimate f = log_moment_estimator(s);
      out.beta = f.beta;
      out.rho = normalised_scale(f.sigma, f.beta, s.p_hat);
      break;
    }
    case EstimatorKind::kMle: {
      const MleEstimate f = ml_mle(s);
      out.beta = f.beta;
      out.rho = normalised_scale(f.sigma, f.beta, s.p_hat);
      break;
    }
  }
}

void run_unit(const StudyConfig& c, std::size_t scenario, std::size_t replicate,
              ReplicateEstimate* out) {
  const Scenario& sc = c.scenarios[scenario];
  const std::size_t m = c.estimators.size();
  for (std::size_t j = 0; j < m; ++j) {
    out[j].scenario = scenario;
    out[j].replicate = replicate;
    out[j].estimator = c.estimators[j];
    out[j].beta = kNaN;
    out[j].theta = kNaN;
    out[j].rho = kNaN;
    out[j].seconds = kNaN;
  }

  IetSample sample;
  try {
    const ScenarioSpec spec{sc.theta, sc.waiting, sc.n, scenario_seed(c.seed, scenario), sc.frac};
    const EventSeries series = build_series(spec, replicate);
    sample = extract_iets(series, threshold_from_fraction(series, sc.frac));
  } catch (const Error& err) {
    for (std::size_t j = 0; j < m; ++j) {
      out[j].error = std::string("series: ") + err.what();
    }
    return;
  }

  for (std::size_t j = 0; j < m; ++j) {
    const auto start = Clock::now();
    try {
      estimate(c, c.estimators[j], sample, out[j]);
      out[j].ok = true;
    } catch (const Error& err) {
      out[j].ok = false;
      out[j].error = err.what();
    }
    if (c.record_timing) {
      out[j].seconds = seconds_since(start);
    }
  }
}

}  // namespace

std::string to_string(EstimatorKind e) {
  switch (e) {
    case EstimatorKind::kCmmod:
      return "cmmod";
    case EstimatorKind::kInterval:
      return "interval";
    case EstimatorKind::kLogMoment:
      return "logmom";
    case EstimatorKind::kMle:
      return "mle";
  }
  return "cmmod";
}

EstimatorKind parse_estimator(std::string_view s) {
  if (s == "cmmod") return EstimatorKind::kCmmod;
  if (s == "interval") return EstimatorKind::kInterval;
  if (s == "logmom") return EstimatorKind::kLogMoment;
  if (s == "mle") return EstimatorKind::kMle;
  throw ParseError("unknown estimator '" + std::string(s) +
                   "' (expected cmmod, interval, logmom or mle)");
}

std::string to_string(Parameter p) {
  switch (p) {
    case Parameter::kBeta:
      return "beta";
    case Parameter::kTheta:
      return "theta";
    case Parameter::kRho:
      return "rho";
  }
  return "beta";
}

std::vector<Parameter> parameters_of(EstimatorKind e) {
  switch (e) {
    case EstimatorKind::kCmmod:
      return {Parameter::kBeta, Parameter::kTheta, Parameter::kRho};
    case EstimatorKind::kInterval:
      return {Parameter::kTheta, Parameter::kRho};
    case EstimatorKind::kLogMoment:
    case EstimatorKind::kMle:
      return {Parameter::kBeta, Parameter::kRho};
  }
  return {};
}

std::string Scenario::name() const {
  return to_string(waiting) + "/theta=" + format_number(theta) + "/n=" + std::to_string(n) +
         "/frac=" + format_number(frac);
}

double Scenario::true_value(Parameter p) const {
  switch (p) {
    case Parameter::kBeta:
      return waiting.tail_parameter();
    case Parameter::kTheta:
      return theta;
    case Parameter::kRho:
      return 1.0;
  }
  return kNaN;
}

double ReplicateEstimate::value(Parameter p) const {
  switch (p) {
    case Parameter::kBeta:
      return beta;
    case Parameter::kTheta:
      return theta;
    case Parameter::kRho:
      return rho;
  }
  return kNaN;
}

void validate(const StudyConfig& c) {
  if (c.scenarios.empty()) {
    throw DomainError("study needs at least one scenario");
  }
  if (c.replicates < 1) {
    throw DomainError("study needs at least one replicate");
  }
  if (c.estimators.empty()) {
    throw DomainError("study needs at least one estimator");
  }
  if (!(c.lower_bound > 0.0 && c.lower_bound <= 0.5)) {
    throw DomainError("lower bound a must lie in (0, 0.5], got " + std::to_string(c.lower_bound));
  }
  for (const Scenario& s : c.scenarios) {
    validate(ScenarioSpec{s.theta, s.waiting, s.n, c.seed, s.frac});
  }
}

std::uint64_t scenario_seed(std::uint64_t base, std::size_t scenario_index) {
  return mix64(base ^ mix64(0x5ce0a710ULL + scenario_index));
}

const CellSummary& StudyResult::cell(std::size_t scenario, EstimatorKind e, Parameter p) const {
  for (const CellSummary& c : cells) {
    if (c.scenario == scenario && c.estimator == e && c.parameter == p) {
      return c;
    }
  }
  throw DomainError("no study cell for scenario " + std::to_string(scenario) + ", estimator " +
                    to_string(e) + ", parameter " + to_string(p));
}

std::vector<CellSummary> summarize(const StudyConfig& c,
                                   const std::vector<ReplicateEstimate>& estimates) {
  std::vector<CellSummary> cells;
  for (std::size_t si = 0; si < c.scenarios.size(); ++si) {
    for (EstimatorKind e : c.estimators) {
      for (Parameter p : parameters_of(e)) {
        CellSummary cell;
        cell.scenario = si;
        cell.estimator = e;
        cell.parameter = p;
        cell.true_value = c.scenarios[si].true_value(p);

        std::vector<double> err;
        double seconds = 0.0;
        std::size_t timed = 0;
        for (const ReplicateEstimate& r : estimates) {
          if (r.scenario != si || r.estimator != e) {
            continue;
          }
          if (!std::isnan(r.seconds)) {
            seconds += r.seconds;
            ++timed;
          }
          if (r.ok) {
            err.push_back(r.value(p) - cell.true_value);
          } else {
            ++cell.n_failures;
          }
        }
        cell.n_replicates = err.size();
        cell.mean_seconds = timed > 0 ? seconds / static_cast<double>(timed) : kNaN;

        const double n = static_cast<double>(err.size());
        if (err.empty()) {
          cell.bias = cell.rmse = cell.mean_abs_error = kNaN;
          cell.rmse_std_error = cell.mae_std_error = kNaN;
          cells.push_back(cell);
          continue;
        }
        double sum = 0.0;
        double abs_sum = 0.0;
        for (double v : err) {
          sum += v;
          abs_sum += std::abs(v);
        }
        cell.bias = sum / n;
        cell.mean_abs_error = abs_sum / n;
        double var = 0.0;
        double sq_mean = 0.0;
        for (double v : err) {
          var += (v - cell.bias) * (v - cell.bias);
          sq_mean += v * v;
        }
        var /= n;
        sq_mean /= n;
        // Written as bias^2 + variance and floored at |bias| so that
        // rmse^2 >= bias^2 holds in floating point as well.
        cell.rmse = std::max(std::sqrt(cell.bias * cell.bias + var), std::abs(cell.bias));

        if (err.size() > 1) {
          double sq_var = 0.0;
          double abs_var = 0.0;
          for (double v : err) {
            sq_var += (v * v - sq_mean) * (v * v - sq_mean);
            abs_var += (std::abs(v) - cell.mean_abs_error) * (std::abs(v) - cell.mean_abs_error);
          }
          sq_var /= n - 1.0;
          abs_var /= n - 1.0;
          cell.rmse_std_error =
              cell.rmse > 0.0 ? std::sqrt(sq_var / n) / (2.0 * cell.rmse) : 0.0;
          cell.mae_std_error = std::sqrt(abs_var / n);
        } else {
          cell.rmse_std_error = cell.mae_std_error = kNaN;
        }
        cells.push_back(cell);
      }
    }
  }
  return cells;
}

StudyResult run_study(const StudyConfig& c) {
  validate(c);
  const std::size_t m = c.estimators.size();
  const std::size_t units = c.scenarios.size() * c.replicates;
  StudyResult result;
  result.config = c;
  result.estimates.resize(units * m);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t u = next++; u < units; u = next++) {
      run_unit(c, u / c.replicates, u % c.replicates, &result.estimates[u * m]);
    }
  };
  const std::size_t jobs = std::clamp<std::size_t>(c.jobs, 1, units);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (std::size_t i = 0; i < jobs; ++i) {
      pool.emplace_back(worker);
    }
  }

  result.cells = summarize(c, result.estimates);
  return result;
}

void write_study_csv(std::ostream& os, const StudyResult& r) {
  os << "scenario,estimator,parameter,true_value,bias,rmse,n_replicates,n_failures,mean_seconds\n";
  for (const CellSummary& c : r.cells) {
    os << r.config.scenarios[c.scenario].name() << ',' << to_string(c.estimator) << ','
       << to_string(c.parameter) << ',' << format_number(c.true_value) << ','
       << format_number(c.bias) << ',' << format_number(c.rmse) << ',' << c.n_replicates << ','
       << c.n_failures << ',' << format_number(c.mean_seconds) << '\n';
  }
}

std::vector<Scenario> full_grid() {
  std::vector<WaitingLaw> laws = {
      {WaitingKind::kExponential, 0.0},
      {WaitingKind::kDirac1, 0.0},
      {WaitingKind::kParetoMean1, 1.5},
      {WaitingKind::kParetoMean1, 2.5},
  };
  for (WaitingKind kind :
       {WaitingKind::kStable, WaitingKind::kMittagLeffler, WaitingKind::kShiftedPareto}) {
    for (int b = 5; b <= 9; ++b) {
      laws.push_back({kind, b / 10.0});
    }
  }
  std::vector<Scenario> grid;
  for (const WaitingLaw& w : laws) {
    for (int t = 5; t <= 10; ++t) {
      grid.push_back(Scenario{t / 10.0, w, 10000, 0.02});
    }
  }
  return grid;
}

TimingProfile timing_profile(const std::vector<std::size_t>& k_values, std::size_t replicates,
                             std::uint64_t seed, EstimatorKind estimator) {
  if (k_values.empty()) {
    throw DomainError("timing_profile needs at least one k");
  }
  if (replicates < 1) {
    throw DomainError("timing_profile needs at least one replicate");
  }
  StudyConfig c;
  c.estimators = {estimator};
  TimingProfile out;
  for (std::size_t ki = 0; ki < k_values.size(); ++ki) {
    const std::size_t k = k_values[ki];
    if (k < 2) {
      throw DomainError("timing_profile needs k >= 2");
    }
    const ScenarioSpec spec{0.8, WaitingLaw{WaitingKind::kMittagLeffler, 0.8}, 50 * (k + 1),
                            scenario_seed(seed, ki), 0.02};
    TimingRow row;
    row.k = k;
    double total = 0.0;
    for (std::size_t r = 0; r < replicates; ++r) {
      const EventSeries series = build_series(spec, r);
      const IetSample s = extract_iets(series, threshold_from_fraction(series, spec.frac));
      ReplicateEstimate est;
      const auto start = Clock::now();
      try {
        estimate(c, estimator, s, est);
      } catch (const Error&) {
        ++row.failures;
      }
      total += seconds_since(start);
    }
    row.replicates = replicates;
    row.mean_seconds = total / static_cast<double>(replicates);
    out.rows.push_back(row);
  }

  if (out.rows.size() < 2) {
    out.slope = kNaN;
    return out;
  }
  double mx = 0.0;
  double my = 0.0;
  for (const TimingRow& r : out.rows) {
    mx += std::log(static_cast<double>(r.k));
    my += std::log(r.mean_seconds);
  }
  const double n = static_cast<double>(out.rows.size());
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (const TimingRow& r : out.rows) {
    const double dx = std::log(static_cast<double>(r.k)) - mx;
    sxy += dx * (std::log(r.mean_seconds) - my);
    sxx += dx * dx;
  }
  out.slope = sxx > 0.0 ? sxy / sxx : kNaN;
  return out;
}

}  // namespace fcpp

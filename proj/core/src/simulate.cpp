#include "fcpp/simulate.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include <boost/math/special_functions/gamma.hpp>

#include "fcpp/errors.hpp"
#include "fcpp/format.hpp"
#include "fcpp/mlf.hpp"
#include "fcpp/stable.hpp"

namespace fcpp {
namespace {

bool heavy_tailed(WaitingKind k) {
  return k == WaitingKind::kStable || k == WaitingKind::kMittagLeffler ||
         k == WaitingKind::kShiftedPareto;
}

}  // namespace

double WaitingLaw::tail_parameter() const { return heavy_tailed(kind) ? parameter : 1.0; }

void validate(const WaitingLaw& w) {
  if (w.kind == WaitingKind::kParetoMean1 && !(w.parameter > 1.0)) {
    throw DomainError("Pareto waiting times need alpha > 1, got " + std::to_string(w.parameter));
  }
  if (heavy_tailed(w.kind) && !(w.parameter > 0.0 && w.parameter < 1.0)) {
    throw DomainError("heavy-tailed waiting times need beta in (0, 1), got " +
                      std::to_string(w.parameter));
  }
}

std::string to_string(const WaitingLaw& w) {
  switch (w.kind) {
    case WaitingKind::kExponential:
      return "exponential";
    case WaitingKind::kDirac1:
      return "dirac";
    case WaitingKind::kParetoMean1:
      return "pareto:" + format_number(w.parameter);
    case WaitingKind::kStable:
      return "stable:" + format_number(w.parameter);
    case WaitingKind::kMittagLeffler:
      return "ml:" + format_number(w.parameter);
    case WaitingKind::kShiftedPareto:
      return "shifted-pareto:" + format_number(w.parameter);
  }
  return "exponential";
}

WaitingLaw parse_waiting_law(std::string_view s) {
  std::string text(s);
  std::transform(text.begin(), text.end(), text.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  WaitingLaw w;
  if (name == "exponential" || name == "exp") {
    w.kind = WaitingKind::kExponential;
  } else if (name == "dirac" || name == "dirac1") {
    w.kind = WaitingKind::kDirac1;
  } else if (name == "pareto") {
    w.kind = WaitingKind::kParetoMean1;
  } else if (name == "stable") {
    w.kind = WaitingKind::kStable;
  } else if (name == "ml" || name == "mittag-leffler") {
    w.kind = WaitingKind::kMittagLeffler;
  } else if (name == "shifted-pareto") {
    w.kind = WaitingKind::kShiftedPareto;
  } else {
    throw ParseError("unknown waiting-time law '" + std::string(s) + "'");
  }
  const bool needs_parameter = w.kind != WaitingKind::kExponential && w.kind != WaitingKind::kDirac1;
  if (needs_parameter != (colon != std::string::npos)) {
    throw ParseError(needs_parameter ? "waiting-time law '" + name + "' needs a parameter, e.g. " +
                                           name + ":0.8"
                                     : "waiting-time law '" + name + "' takes no parameter");
  }
  if (needs_parameter) {
    const std::string value = text.substr(colon + 1);
    const char* first = value.data();
    const char* last = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(first, last, w.parameter);
    if (ec != std::errc() || ptr != last) {
      throw ParseError("bad waiting-time parameter '" + value + "'");
    }
  }
  try {
    validate(w);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  return w;
}

void validate(const ScenarioSpec& s) {
  if (!(s.theta > 0.0 && s.theta <= 1.0)) {
    throw DomainError("extremal index theta must lie in (0, 1], got " + std::to_string(s.theta));
  }
  validate(s.waiting);
  if (s.n < 2) {
    throw DomainError("series length must be at least 2");
  }
  if (!(s.frac > 0.0 && s.frac < 1.0)) {
    throw DomainError("exceedance fraction must lie in (0, 1), got " + std::to_string(s.frac));
  }
}

std::vector<double> armax_sequence(double theta, std::size_t n, RandomStream& rng) {
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw DomainError("ARMAX theta must lie in (0, 1], got " + std::to_string(theta));
  }
  if (n < 1) {
    throw DomainError("armax_sequence requires n >= 1");
  }
  std::vector<double> x(n);
  x[0] = draw_frechet(rng);
  for (std::size_t i = 1; i < n; ++i) {
    x[i] = std::max((1.0 - theta) * x[i - 1], theta * draw_frechet(rng));
  }
  return x;
}

std::vector<double> waiting_times(const WaitingLaw& w, std::size_t n, RandomStream& rng) {
  validate(w);
  if (n < 1) {
    throw DomainError("waiting_times requires n >= 1");
  }
  switch (w.kind) {
    case WaitingKind::kExponential: {
      std::vector<double> out(n);
      for (auto& v : out) {
        v = rng.exponential();
      }
      return out;
    }
    case WaitingKind::kDirac1:
      return std::vector<double>(n, 1.0);
    case WaitingKind::kParetoMean1:
      return pareto_mean1_sample(w.parameter, n, rng);
    case WaitingKind::kStable:
      return stable_sample(StableParams{w.parameter}, n, rng);
    case WaitingKind::kMittagLeffler:
      return ml_sample(MlParams{w.parameter, 1.0}, n, rng);
    case WaitingKind::kShiftedPareto: {
      const double beta = w.parameter;
      // P(W - 1 > t) = C t^-beta with C = 1 / Gamma(1 - beta).
      const double scale = std::pow(boost::math::tgamma(1.0 - beta), -1.0 / beta);
      std::vector<double> out(n);
      for (auto& v : out) {
        v = 1.0 + scale * std::pow(rng.uniform(), -1.0 / beta);
      }
      return out;
    }
  }
  throw DomainError("unknown waiting-time kind");
}

EventSeries build_series(const ScenarioSpec& spec, std::uint64_t replicate) {
  validate(spec);
  RandomStream mag_rng = RandomStream::derived(spec.seed, replicate, StreamTag::kMagnitudes);
  RandomStream wait_rng = RandomStream::derived(spec.seed, replicate, StreamTag::kWaitingTimes);
  EventSeries s;
  s.magnitudes = armax_sequence(spec.theta, spec.n, mag_rng);
  s.times = waiting_times(spec.waiting, spec.n, wait_rng);
  // A draw far below the spacing of doubles near t would leave the time
  // unchanged; move one ulp instead so times stay strictly increasing.
  double t = 0.0;
  for (double& v : s.times) {
    const double next = t + v;
    t = next > t ? next : std::nextafter(t, HUGE_VAL);
    v = t;
  }
  return s;
}

}  // namespace fcpp

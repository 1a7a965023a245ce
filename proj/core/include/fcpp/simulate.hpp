#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "fcpp/pot.hpp"
#include "fcpp/random.hpp"

namespace fcpp {

enum class WaitingKind {
  kExponential,    // mean 1
  kDirac1,         // identically 1
  kParetoMean1,    // Pareto with tail index alpha > 1 and mean 1
  kStable,         // D_beta, Laplace transform exp(-s^beta)
  kMittagLeffler,  // ML(beta, 1)
  kShiftedPareto,  // 1 + Pareto(shape beta, scale Gamma(1 - beta)^(-1/beta))
};

/// A waiting-time law. `parameter` is alpha for kParetoMean1, beta for the
/// three heavy-tailed kinds and unused otherwise.
struct WaitingLaw {
  WaitingKind kind = WaitingKind::kExponential;
  double parameter = 0.0;

  /// Tail parameter of the limit law: beta for the heavy-tailed kinds, else 1.
  double tail_parameter() const;
};

void validate(const WaitingLaw& w);

/// "exponential", "dirac", "pareto:1.5", "stable:0.8", "ml:0.8",
/// "shifted-pareto:0.8".
std::string to_string(const WaitingLaw& w);

/// Inverse of to_string. Throws ParseError.
WaitingLaw parse_waiting_law(std::string_view s);

struct ScenarioSpec {
  double theta = 1.0;
  WaitingLaw waiting;
  std::size_t n = 10000;
  std::uint64_t seed = 1;
  double frac = 0.02;
};

void validate(const ScenarioSpec& s);

/// X_1 = Y_1, X_{i+1} = max{(1 - theta) X_i, theta Y_{i+1}} with unit Frechet
/// Y_i. Stationary with unit Frechet margins and extremal index theta.
std::vector<double> armax_sequence(double theta, std::size_t n, RandomStream& rng);

std::vector<double> waiting_times(const WaitingLaw& w, std::size_t n, RandomStream& rng);

/// Event series of replicate `replicate`: magnitudes from armax_sequence and
/// times as cumulative sums of waiting times, each from its own stream derived
/// from (spec.seed, replicate).
EventSeries build_series(const ScenarioSpec& spec, std::uint64_t replicate = 0);

}  // namespace fcpp

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "fcpp/random.hpp"

namespace fcpp {

/// Positively skewed one-sided stable law D_alpha with Laplace transform
/// exp(-s^alpha), 0 < alpha < 1.
struct StableParams {
  double alpha = 0.5;
};

void validate(const StableParams& p);

/// One draw of D_alpha (no parameter validation).
///
/// Chambers-Mallows-Stuck with skewness 1: for U uniform on (0, pi) and E unit
/// exponential,
///   D = sin(alpha U) / sin(U)^(1/alpha) * (sin((1 - alpha) U) / E)^((1 - alpha)/alpha),
/// which is S_alpha(cos(pi alpha / 2)^(1/alpha), 1, 0) with the scale factor
/// already cancelled against the CMS normalisation.
double draw_stable(const StableParams& p, RandomStream& rng);

std::vector<double> stable_sample(const StableParams& p, std::size_t n, RandomStream& rng);

/// Inverse transform of the unit Frechet law, P(Y <= x) = exp(-1/x).
inline double frechet_from_uniform(double u) { return -1.0 / std::log(u); }

double draw_frechet(RandomStream& rng);
std::vector<double> frechet_sample(std::size_t n, RandomStream& rng);

/// Scale x_m of the Pareto law with tail index alpha > 1 and mean one:
/// alpha x_m / (alpha - 1) = 1.
double pareto_mean1_scale(double alpha);

double draw_pareto_mean1(double alpha, RandomStream& rng);
std::vector<double> pareto_mean1_sample(double alpha, std::size_t n, RandomStream& rng);

}  // namespace fcpp

#include "fcpp/stable.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fcpp/errors.hpp"

namespace fcpp {
namespace {

void check_count(std::size_t n) {
  if (n < 1) {
    throw DomainError("sample size must be at least 1");
  }
}

}  // namespace

void validate(const StableParams& p) {
  if (!(p.alpha > 0.0 && p.alpha < 1.0)) {
    throw DomainError("stable parameter alpha must lie in (0, 1), got " + std::to_string(p.alpha));
  }
}

double draw_stable(const StableParams& p, RandomStream& rng) {
  const double a = p.alpha;
  const double u = std::numbers::pi * rng.uniform();
  const double e = rng.exponential();
  // Evaluated in logs; sin(u) can be ~1e-16 at the ends of (0, pi).
  const double log_d = std::log(std::sin(a * u)) - std::log(std::sin(u)) / a +
                       (1.0 - a) / a * (std::log(std::sin((1.0 - a) * u)) - std::log(e));
  return std::exp(log_d);
}

std::vector<double> stable_sample(const StableParams& p, std::size_t n, RandomStream& rng) {
  validate(p);
  check_count(n);
  std::vector<double> out(n);
  for (auto& v : out) {
    v = draw_stable(p, rng);
  }
  return out;
}

double draw_frechet(RandomStream& rng) { return frechet_from_uniform(rng.uniform()); }

std::vector<double> frechet_sample(std::size_t n, RandomStream& rng) {
  check_count(n);
  std::vector<double> out(n);
  for (auto& v : out) {
    v = draw_frechet(rng);
  }
  return out;
}

double pareto_mean1_scale(double alpha) {
  if (!(alpha > 1.0)) {
    throw DomainError("Pareto tail index must exceed 1 for a finite mean, got " +
                      std::to_string(alpha));
  }
  return (alpha - 1.0) / alpha;
}

double draw_pareto_mean1(double alpha, RandomStream& rng) {
  return pareto_mean1_scale(alpha) * std::pow(rng.uniform(), -1.0 / alpha);
}

std::vector<double> pareto_mean1_sample(double alpha, std::size_t n, RandomStream& rng) {
  const double scale = pareto_mean1_scale(alpha);
  check_count(n);
  std::vector<double> out(n);
  for (auto& v : out) {
    v = scale * std::pow(rng.uniform(), -1.0 / alpha);
  }
  return out;
}

}  // namespace fcpp

#include "fcpp/mixture.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "fcpp/errors.hpp"

namespace fcpp {

double FcppParams::ml_scale() const { return std::pow(theta, -1.0 / beta) * sigma; }

void validate(const FcppParams& p) {
  if (!(p.beta > 0.0 && p.beta <= 1.0)) {
    throw DomainError("tail parameter beta must lie in (0, 1], got " + std::to_string(p.beta));
  }
  if (!(p.theta > 0.0 && p.theta <= 1.0)) {
    throw DomainError("extremal index theta must lie in (0, 1], got " + std::to_string(p.theta));
  }
  if (!(p.sigma > 0.0) || !std::isfinite(p.sigma)) {
    throw DomainError("scale sigma must be positive and finite, got " + std::to_string(p.sigma));
  }
}

std::string to_string(ModelFamily f) {
  switch (f) {
    case ModelFamily::kFcpp:
      return "fcpp";
    case ModelFamily::kFpp:
      return "fpp";
    case ModelFamily::kCpp:
      return "cpp";
    case ModelFamily::kPp:
      return "pp";
  }
  return "fcpp";
}

ModelFamily parse_family(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "fcpp") return ModelFamily::kFcpp;
  if (lower == "fpp") return ModelFamily::kFpp;
  if (lower == "cpp") return ModelFamily::kCpp;
  if (lower == "pp") return ModelFamily::kPp;
  throw ParseError("unknown model family '" + std::string(s) + "' (expected fcpp, fpp, cpp or pp)");
}

bool beta_free(ModelFamily f) { return f == ModelFamily::kFcpp || f == ModelFamily::kFpp; }

bool theta_free(ModelFamily f) { return f == ModelFamily::kFcpp || f == ModelFamily::kCpp; }

MixtureDistribution::MixtureDistribution(const FcppParams& p)
    : params_(p), component_((validate(p), MlParams{p.beta, p.ml_scale()})) {}

double MixtureDistribution::cdf(double t) const {
  if (std::isnan(t)) {
    throw DomainError("mixture_cdf argument is NaN");
  }
  if (t < 0.0) {
    return 0.0;
  }
  const double atom = 1.0 - params_.theta;
  if (t == 0.0) {
    return atom;
  }
  return atom + params_.theta * component_.cdf(t);
}

double MixtureDistribution::density(double t) const {
  return params_.theta * component_.pdf(t);
}

double MixtureDistribution::quantile(double q) const {
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError("mixture quantile requires 0 < q < 1");
  }
  const double atom = 1.0 - params_.theta;
  if (q <= atom) {
    return 0.0;
  }
  return component_.quantile((q - atom) / params_.theta);
}

double mixture_cdf(const FcppParams& p, double t) { return MixtureDistribution(p).cdf(t); }

std::vector<double> mixture_sample(const FcppParams& p, std::size_t n, RandomStream& rng) {
  validate(p);
  if (n < 1) {
    throw DomainError("mixture_sample requires n >= 1");
  }
  const MlParams component{p.beta, p.ml_scale()};
  std::vector<double> out(n);
  for (auto& v : out) {
    // The weight draw is consumed even when theta = 1 so that streams stay
    // aligned across parameter values.
    const bool continuous = rng.uniform() < p.theta;
    v = continuous ? draw_ml(component, rng) : 0.0;
  }
  return out;
}

double rho_of(const FcppParams& p, double p_u) {
  if (!(p_u > 0.0 && p_u < 1.0)) {
    throw DomainError("exceedance probability must lie in (0, 1), got " + std::to_string(p_u));
  }
  return p.sigma * std::pow(p_u, 1.0 / p.beta);
}

}  // namespace fcpp

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fcpp/mlf.hpp"
#include "fcpp/random.hpp"

namespace fcpp {

/// Parameters of the inter-exceedance-time law
///   (1 - theta) eps_0 + theta ML(beta, theta^(-1/beta) sigma).
struct FcppParams {
  double beta = 1.0;   // tail parameter in (0, 1]
  double theta = 1.0;  // extremal index in (0, 1]
  double sigma = 1.0;  // scale in time units

  /// Scale of the Mittag-Leffler component, theta^(-1/beta) sigma.
  double ml_scale() const;
};

void validate(const FcppParams& p);

/// Which of beta and theta are free. Pinned parameters are exactly 1.
enum class ModelFamily {
  kFcpp,  // beta, theta, sigma free
  kFpp,   // theta = 1
  kCpp,   // beta = 1
  kPp,    // beta = theta = 1
};

std::string to_string(ModelFamily f);

/// Parses "fcpp", "fpp", "cpp" or "pp" (case-insensitive). Throws ParseError.
ModelFamily parse_family(std::string_view s);

bool beta_free(ModelFamily f);
bool theta_free(ModelFamily f);

/// The mixture with its Mittag-Leffler component prepared once. Holds lazily
/// grown tables, so an instance must not be shared between threads.
class MixtureDistribution {
 public:
  explicit MixtureDistribution(const FcppParams& p);

  const FcppParams& params() const { return params_; }

  /// 0 for t < 0, 1 - theta at t = 0, (1 - theta) + theta F*(t) for t > 0.
  double cdf(double t) const;

  /// Density theta f*(t) of the absolutely continuous part, t > 0. The atom
  /// at 0 has no density. Throws DomainError for t <= 0.
  double density(double t) const;

  /// Smallest t with cdf(t) >= q for 0 < q < 1; 0 for q <= 1 - theta.
  double quantile(double q) const;

  /// Distribution function F* of the continuous component.
  double continuous_cdf(double t) const { return component_.cdf(t); }

  /// Density of the continuous component.
  double continuous_pdf(double t) const { return component_.pdf(t); }

 private:
  FcppParams params_;
  MlDistribution component_;
};

double mixture_cdf(const FcppParams& p, double t);

/// n draws; each is 0 with probability 1 - theta and otherwise a draw of
/// ML(beta, theta^(-1/beta) sigma).
std::vector<double> mixture_sample(const FcppParams& p, std::size_t n, RandomStream& rng);

/// Normalised scale sigma * p_u^(1/beta). Throws DomainError unless 0 < p_u < 1.
double rho_of(const FcppParams& p, double p_u);

}  // namespace fcpp

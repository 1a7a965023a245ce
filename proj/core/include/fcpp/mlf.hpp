#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "fcpp/random.hpp"

namespace fcpp {

/// Parameters of the Mittag-Leffler distribution ML(beta, sigma), the law of
/// sigma * T_beta where T_beta has Laplace transform 1 / (1 + s^beta).
/// ML(1, sigma) is the exponential distribution with mean sigma.
struct MlParams {
  double beta = 1.0;   // tail parameter, 0 < beta <= 1
  double sigma = 1.0;  // scale, > 0
};

/// Throws DomainError unless 0 < beta <= 1 and sigma > 0.
void validate(const MlParams& p);

/// The one-parameter Mittag-Leffler function E_beta on the non-positive real
/// axis for a fixed beta in (0, 1].
///
/// Three evaluation tiers are used:
///   - the power series sum (-x)^n / Gamma(beta n + 1) for x <= 1;
///   - a trapezoidal rule on a parabolic Bromwich contour for the inverse
///     Laplace transform of s^(beta-1) / (s^beta + x), accumulated in long
///     double;
///   - the algebraic expansion -sum (-x)^-k / Gamma(1 - beta k) once x is past
///     the point where its truncation envelope drops below 1e-15 relative.
/// beta == 1 uses exp(-x) directly.
///
/// Contour nodes and the series and asymptotic coefficient tables are built
/// lazily on first use, so one instance must not be shared between threads.
/// Construction is cheap.
class MittagLefflerFunction {
 public:
  explicit MittagLefflerFunction(double beta);

  double beta() const { return beta_; }

  /// E_beta(-x) for x >= 0.
  double value(double x) const;

  /// 1 - E_beta(-x) for x >= 0, without cancellation for small x.
  double complement(double x) const;

  /// E_{beta,beta}(-x) for x >= 0. Equal to -beta d/dx E_beta(-x); this is the
  /// kernel of the Mittag-Leffler density.
  double density_kernel(double x) const;

  // Individual tiers, exposed so the switch points can be checked.
  double series_value(double x) const;
  double contour_value(double x) const;
  std::optional<double> asymptotic_value(double x) const;
  double series_density_kernel(double x) const;
  double contour_density_kernel(double x) const;
  std::optional<double> asymptotic_density_kernel(double x) const;

  /// Smallest argument at which the asymptotic tier is used.
  double asymptotic_threshold() const;
  double asymptotic_density_threshold() const;

  static constexpr int kContourHalfNodes = 20;

 private:
  struct Expansion {
    bool ready = false;
    double offset = 1.0;
    std::size_t first = 1;      // index of the leading term
    std::size_t max_terms = 1;  // terms needed at the threshold
    double threshold = 0.0;
    double log_tolerance = 0.0;        // log(tolerance * |c_first|)
    std::vector<double> log_envelope;  // index k: log bound on |c_k|
    std::vector<double> coefficients;  // index k-1 holds c_k; grown on demand
  };

  void grow_series(std::vector<double>& table, double offset, std::size_t n) const;
  double sum_series(std::vector<double>& table, double offset, double x,
                    std::size_t first) const;
  Expansion build_expansion(double offset, std::size_t first) const;
  double sum_expansion(Expansion& e, double x) const;
  Expansion& value_expansion() const;
  Expansion& density_expansion() const;
  void prepare_contour() const;

  double beta_;
  bool exponential_;
  mutable bool contour_ready_ = false;
  mutable std::array<long double, 2 * (kContourHalfNodes + 1)> pole_{};     // s_k^beta (re, im)
  mutable std::array<long double, 2 * (kContourHalfNodes + 1)> value_w_{};  // w_k e^{s_k} s_k^(beta-1)
  mutable std::array<long double, 2 * (kContourHalfNodes + 1)> dens_w_{};   // w_k e^{s_k}
  mutable std::vector<double> value_series_;  // 1 / Gamma(beta n + 1)
  mutable std::vector<double> dens_series_;   // 1 / Gamma(beta n + beta)
  mutable Expansion value_asym_;
  mutable Expansion dens_asym_;
};

/// E_beta(z) for 0 < beta <= 1 and z <= 0. Throws DomainError otherwise.
double mlf_e(double beta, double z);

/// Distribution function of ML(beta, sigma); 0 for t <= 0.
double ml_cdf(const MlParams& p, double t);

/// Density of ML(beta, sigma) for t > 0. Throws DomainError for t <= 0.
double ml_pdf(const MlParams& p, double t);

/// Quantile of ML(beta, sigma) for 0 < q < 1, found by bracketed bisection and
/// Newton polishing to 1e-10 in probability.
double ml_quantile(const MlParams& p, double q);

/// One draw of sigma * E^(1/beta) * D_beta (E unit exponential, D_beta
/// one-sided stable with Laplace transform exp(-s^beta)).
double draw_ml(const MlParams& p, RandomStream& rng);

/// n i.i.d. draws from ML(beta, sigma).
std::vector<double> ml_sample(const MlParams& p, std::size_t n, RandomStream& rng);

/// Distribution functions of ML(beta, sigma) with the Mittag-Leffler function
/// for beta built once. Same threading rules as MittagLefflerFunction.
class MlDistribution {
 public:
  explicit MlDistribution(const MlParams& p);

  const MlParams& params() const { return params_; }
  double cdf(double t) const;
  double pdf(double t) const;
  double log_pdf(double t) const;
  double quantile(double q) const;

 private:
  MlParams params_;
  MittagLefflerFunction mlf_;
};

}  // namespace fcpp

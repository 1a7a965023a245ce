#include "fcpp/mlf.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include "fcpp/errors.hpp"
#include "fcpp/stable.hpp"

namespace fcpp {
namespace {

// Gamma and sin(pi x) are evaluated in double; promotion to long double costs
// several times more and is not needed at the 1e-10 accuracy target.
using DoublePolicy =
    boost::math::policies::policy<boost::math::policies::promote_double<false>>;

constexpr double kAsymptoticTolerance = 1e-15;
constexpr std::size_t kMaxAsymptoticTerms = 120;
constexpr double kSeriesMinBeta = 0.05;

// Nodes of the parabolic contour s(u) = mu (1 + iu)^2, u = k h, k = 0..N, with
// h = 3/N and mu = pi N / 12. Only k >= 0 is stored: the integrand is
// conjugate-symmetric, so the k < 0 half doubles the real part.
struct ContourNode {
  long double log_abs;               // log |s|
  long double arg;                   // arg s
  std::complex<long double> weight;  // m_k (h mu / pi)(1 + iu) e^s
  std::complex<long double> s;
};

const std::array<ContourNode, MittagLefflerFunction::kContourHalfNodes + 1>& contour_nodes() {
  static const auto nodes = [] {
    constexpr int n = MittagLefflerFunction::kContourHalfNodes;
    const long double pi = std::numbers::pi_v<long double>;
    const long double h = 3.0L / n;
    const long double mu = pi * n / 12.0L;
    std::array<ContourNode, n + 1> out{};
    for (int k = 0; k <= n; ++k) {
      const long double u = k * h;
      const std::complex<long double> one_iu(1.0L, u);
      const std::complex<long double> s = mu * one_iu * one_iu;
      const long double multiplicity = k == 0 ? 1.0L : 2.0L;
      out[k].s = s;
      out[k].log_abs = std::log(std::abs(s));
      out[k].arg = std::arg(s);
      out[k].weight = multiplicity * (h * mu / pi) * one_iu * std::exp(s);
    }
    return out;
  }();
  return nodes;
}

// 1 / Gamma(1 - y) written through the reflection formula so that it is finite
// (and exactly zero) at the poles: Gamma(y) sin(pi y) / pi.
double reciprocal_gamma_reflected(double y) {
  return boost::math::tgamma(y, DoublePolicy()) * boost::math::sin_pi(y, DoublePolicy()) /
         std::numbers::pi;
}

void check_argument(double x) {
  if (!(x >= 0.0)) {
    throw DomainError("Mittag-Leffler argument must satisfy z <= 0");
  }
}

}  // namespace

void validate(const MlParams& p) {
  if (!(p.beta > 0.0 && p.beta <= 1.0)) {
    throw DomainError("Mittag-Leffler tail parameter beta must lie in (0, 1], got " +
                      std::to_string(p.beta));
  }
  if (!(p.sigma > 0.0) || !std::isfinite(p.sigma)) {
    throw DomainError("Mittag-Leffler scale sigma must be positive and finite, got " +
                      std::to_string(p.sigma));
  }
}

MittagLefflerFunction::MittagLefflerFunction(double beta)
    : beta_(beta), exponential_(beta == 1.0) {
  if (!(beta > 0.0 && beta <= 1.0)) {
    throw DomainError("Mittag-Leffler parameter beta must lie in (0, 1], got " +
                      std::to_string(beta));
  }
}

void MittagLefflerFunction::prepare_contour() const {
  if (contour_ready_) {
    return;
  }
  // s_k^beta only needs double-precision transcendentals; the weights, which
  // carry e^{s_k} up to e^mu, are combined and summed in long double.
  const auto& nodes = contour_nodes();
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const auto& node = nodes[k];
    const double radius = std::exp(beta_ * static_cast<double>(node.log_abs));
    const double angle = beta_ * static_cast<double>(node.arg);
    const std::complex<long double> s_beta(radius * std::cos(angle), radius * std::sin(angle));
    const std::complex<long double> value_w = node.weight * s_beta / node.s;
    pole_[2 * k] = s_beta.real();
    pole_[2 * k + 1] = s_beta.imag();
    value_w_[2 * k] = value_w.real();
    value_w_[2 * k + 1] = value_w.imag();
    dens_w_[2 * k] = node.weight.real();
    dens_w_[2 * k + 1] = node.weight.imag();
  }
  contour_ready_ = true;
}

void MittagLefflerFunction::grow_series(std::vector<double>& table, double offset,
                                        std::size_t n) const {
  while (table.size() <= n) {
    const double y = beta_ * static_cast<double>(table.size()) + offset;
    table.push_back(1.0 / boost::math::tgamma(y, DoublePolicy()));
  }
}

double MittagLefflerFunction::sum_series(std::vector<double>& table, double offset, double x,
                                         std::size_t first) const {
  double power = 1.0;
  for (std::size_t n = 0; n < first; ++n) {
    power *= -x;
  }
  double sum = 0.0;
  for (std::size_t n = first;; ++n) {
    if (n >= table.size()) {
      grow_series(table, offset, n + 8);
    }
    const double term = power * table[n];
    sum += term;
    power *= -x;
    // Past the minimum of Gamma the coefficients decrease monotonically.
    if (beta_ * static_cast<double>(n) + offset > 2.0 &&
        std::abs(term) <= 1e-17 * std::abs(sum)) {
      break;
    }
    if (power == 0.0 || n > 100000) {
      break;
    }
  }
  return sum;
}

double MittagLefflerFunction::series_value(double x) const {
  check_argument(x);
  return sum_series(value_series_, 1.0, x, 0);
}

double MittagLefflerFunction::series_density_kernel(double x) const {
  check_argument(x);
  return sum_series(dens_series_, beta_, x, 0);
}

double MittagLefflerFunction::contour_value(double x) const {
  check_argument(x);
  if (exponential_) {
    return std::exp(-x);
  }
  prepare_contour();
  const long double lx = x;
  long double sum = 0.0L;
  for (std::size_t k = 0; k < pole_.size(); k += 2) {
    const long double c = pole_[k] + lx;
    const long double d = pole_[k + 1];
    sum += (value_w_[k] * c + value_w_[k + 1] * d) / (c * c + d * d);
  }
  return static_cast<double>(sum);
}

double MittagLefflerFunction::contour_density_kernel(double x) const {
  check_argument(x);
  if (exponential_) {
    return std::exp(-x);
  }
  prepare_contour();
  const long double lx = x;
  long double sum = 0.0L;
  for (std::size_t k = 0; k < pole_.size(); k += 2) {
    const long double c = pole_[k] + lx;
    const long double d = pole_[k + 1];
    sum += (dens_w_[k] * c + dens_w_[k + 1] * d) / (c * c + d * d);
  }
  return static_cast<double>(sum);
}

namespace {

// log Gamma(z) for choosing truncation points only: Stirling with one
// correction term above z = 10 (error below 3e-6 there).
double log_gamma_estimate(double z) {
  if (z < 10.0) {
    return std::lgamma(z);
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + 1.0 / (12.0 * z);
}

}  // namespace

// The expansion -sum_{k>=first} (-x)^-k c_k with c_k = 1 / Gamma(offset - beta k)
// is truncated after K terms once the envelope Gamma(1 - offset + beta (K+1)) / pi
// * x^-(K+1) of the first omitted term is below the tolerance times the
// leading term |c_first| x^-first. The threshold is the smallest x at which
// some K <= kMaxAsymptoticTerms achieves this. log x_K is unimodal in K
// because log Gamma is convex, so the scan stops at the first increase.
// Coefficients are computed only as far as the arguments seen so far need.
MittagLefflerFunction::Expansion MittagLefflerFunction::build_expansion(double offset,
                                                                       std::size_t first) const {
  Expansion e;
  e.offset = offset;
  e.first = first;
  e.log_tolerance = std::log(kAsymptoticTolerance) +
                    std::log(std::abs(reciprocal_gamma_reflected(1.0 - offset +
                                                                 beta_ * static_cast<double>(first))));
  const double log_pi = std::log(std::numbers::pi);
  double best_log_x = std::numeric_limits<double>::infinity();
  std::size_t best_terms = first;
  e.log_envelope.assign(first + 1, 0.0);
  for (std::size_t terms = first; terms < kMaxAsymptoticTerms; ++terms) {
    const double log_env =
        log_gamma_estimate(1.0 - offset + beta_ * static_cast<double>(terms + 1)) - log_pi;
    e.log_envelope.push_back(log_env);  // index terms + 1
    const double log_x = (log_env - e.log_tolerance) / static_cast<double>(terms + 1 - first);
    if (log_x >= best_log_x) {
      break;
    }
    best_log_x = log_x;
    best_terms = terms;
  }
  e.max_terms = best_terms;
  e.threshold = std::max(2.0, std::exp(best_log_x));
  e.ready = true;
  return e;
}

double MittagLefflerFunction::sum_expansion(Expansion& e, double x) const {
  const double log_x = std::log(x);
  std::size_t terms = e.first;
  while (terms < e.max_terms &&
         e.log_envelope[terms + 1] - static_cast<double>(terms + 1 - e.first) * log_x >
             e.log_tolerance) {
    ++terms;
  }
  while (e.coefficients.size() < terms) {
    const std::size_t k = e.coefficients.size() + 1;
    e.coefficients.push_back(k < e.first ? 0.0
                                         : reciprocal_gamma_reflected(
                                               1.0 - e.offset + beta_ * static_cast<double>(k)));
  }
  // -sum_k (-x)^-k c_k = sum_k (-1)^(k+1) c_k x^-k, evaluated by Horner in 1/x.
  const double inv = -1.0 / x;
  double acc = 0.0;
  for (std::size_t k = terms; k >= 1; --k) {
    acc = (acc + e.coefficients[k - 1]) * inv;
  }
  return -acc;
}

MittagLefflerFunction::Expansion& MittagLefflerFunction::value_expansion() const {
  if (!value_asym_.ready) {
    value_asym_ = build_expansion(1.0, 1);
  }
  return value_asym_;
}

// Density kernel: c_k = 1 / Gamma(beta - beta k); c_1 = 0 and the leading
// term is k = 2.
MittagLefflerFunction::Expansion& MittagLefflerFunction::density_expansion() const {
  if (!dens_asym_.ready) {
    dens_asym_ = build_expansion(beta_, 2);
  }
  return dens_asym_;
}

double MittagLefflerFunction::asymptotic_threshold() const {
  if (exponential_) {
    return std::numeric_limits<double>::infinity();
  }
  return value_expansion().threshold;
}

double MittagLefflerFunction::asymptotic_density_threshold() const {
  if (exponential_) {
    return std::numeric_limits<double>::infinity();
  }
  return density_expansion().threshold;
}

std::optional<double> MittagLefflerFunction::asymptotic_value(double x) const {
  check_argument(x);
  if (exponential_) {
    return std::nullopt;
  }
  Expansion& e = value_expansion();
  if (x < e.threshold) {
    return std::nullopt;
  }
  return sum_expansion(e, x);
}

std::optional<double> MittagLefflerFunction::asymptotic_density_kernel(double x) const {
  check_argument(x);
  if (exponential_) {
    return std::nullopt;
  }
  Expansion& e = density_expansion();
  if (x < e.threshold) {
    return std::nullopt;
  }
  return sum_expansion(e, x);
}

double MittagLefflerFunction::value(double x) const {
  check_argument(x);
  if (x == 0.0) {
    return 1.0;
  }
  if (exponential_) {
    return std::exp(-x);
  }
  if (std::isinf(x)) {
    return 0.0;
  }
  if (x <= 1.0 && beta_ >= kSeriesMinBeta) {
    return sum_series(value_series_, 1.0, x, 0);
  }
  if (Expansion& e = value_expansion(); x >= e.threshold) {
    return sum_expansion(e, x);
  }
  return contour_value(x);
}

double MittagLefflerFunction::complement(double x) const {
  check_argument(x);
  if (x == 0.0) {
    return 0.0;
  }
  if (exponential_) {
    return -std::expm1(-x);
  }
  if (x <= 1.0 && beta_ >= kSeriesMinBeta) {
    return -sum_series(value_series_, 1.0, x, 1);
  }
  return 1.0 - value(x);
}

double MittagLefflerFunction::density_kernel(double x) const {
  check_argument(x);
  if (exponential_) {
    return std::exp(-x);
  }
  if (x == 0.0) {
    return 1.0 / boost::math::tgamma(beta_, DoublePolicy());
  }
  if (std::isinf(x)) {
    return 0.0;
  }
  if (x <= 1.0 && beta_ >= kSeriesMinBeta) {
    return sum_series(dens_series_, beta_, x, 0);
  }
  if (Expansion& e = density_expansion(); x >= e.threshold) {
    return sum_expansion(e, x);
  }
  return contour_density_kernel(x);
}

double mlf_e(double beta, double z) {
  if (!(z <= 0.0)) {
    throw DomainError("mlf_e is defined here for z <= 0 only");
  }
  return MittagLefflerFunction(beta).value(-z);
}

MlDistribution::MlDistribution(const MlParams& p) : params_(p), mlf_((validate(p), p.beta)) {}

double MlDistribution::cdf(double t) const {
  if (std::isnan(t)) {
    throw DomainError("ml_cdf argument is NaN");
  }
  if (t <= 0.0) {
    return 0.0;
  }
  const double y = t / params_.sigma;
  if (params_.beta == 1.0) {
    return -std::expm1(-y);
  }
  return mlf_.complement(std::pow(y, params_.beta));
}

double MlDistribution::pdf(double t) const {
  if (!(t > 0.0)) {
    throw DomainError("ml_pdf requires t > 0");
  }
  const double y = t / params_.sigma;
  if (params_.beta == 1.0) {
    return std::exp(-y) / params_.sigma;
  }
  if (std::isinf(y)) {
    return 0.0;
  }
  const double x = std::pow(y, params_.beta);
  return mlf_.density_kernel(x) * (x / y) / params_.sigma;
}

double MlDistribution::log_pdf(double t) const {
  if (!(t > 0.0)) {
    throw DomainError("ml_pdf requires t > 0");
  }
  const double y = t / params_.sigma;
  if (params_.beta == 1.0) {
    return -y - std::log(params_.sigma);
  }
  const double log_y = std::log(y);
  const double x = std::exp(params_.beta * log_y);
  return std::log(mlf_.density_kernel(x)) + (params_.beta - 1.0) * log_y -
         std::log(params_.sigma);
}

double MlDistribution::quantile(double q) const {
  if (!(q > 0.0 && q < 1.0)) {
    throw DomainError("ml_quantile requires 0 < q < 1");
  }
  const double sigma = params_.sigma;
  if (params_.beta == 1.0) {
    return -sigma * std::log1p(-q);
  }
  const MlDistribution unit(MlParams{params_.beta, 1.0});

  // Bracket on the unit scale by doubling / halving from t = 1.
  double lo = 0.0;
  double hi = 1.0;
  if (unit.cdf(hi) < q) {
    for (int i = 0; unit.cdf(hi) < q; ++i) {
      if (i > 2000) {
        throw DomainError("ml_quantile failed to bracket q");
      }
      lo = hi;
      hi *= 2.0;
    }
  } else {
    lo = 0.5;
    for (int i = 0; lo > 0.0 && unit.cdf(lo) > q; ++i) {
      hi = lo;
      lo *= 0.5;
    }
  }

  double t = lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * hi;
  for (int i = 0; i < 200 && hi - lo > 1e-6 * hi; ++i) {
    t = lo > 0.0 ? std::sqrt(lo * hi) : 0.5 * hi;
    const double f = unit.cdf(t) - q;
    if (std::abs(f) <= 1e-14) {
      return sigma * t;
    }
    (f < 0.0 ? lo : hi) = t;
  }

  // Newton polishing inside the bracket.
  t = 0.5 * (lo + hi);
  for (int i = 0; i < 50; ++i) {
    const double f = unit.cdf(t) - q;
    if (std::abs(f) <= 1e-14) {
      break;
    }
    (f < 0.0 ? lo : hi) = t;
    double next = t - f / unit.pdf(t);
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    if (next == t) {
      break;
    }
    t = next;
  }
  return sigma * t;
}

double ml_cdf(const MlParams& p, double t) { return MlDistribution(p).cdf(t); }

double ml_pdf(const MlParams& p, double t) { return MlDistribution(p).pdf(t); }

double ml_quantile(const MlParams& p, double q) { return MlDistribution(p).quantile(q); }

double draw_ml(const MlParams& p, RandomStream& rng) {
  const double e = rng.exponential();
  if (p.beta == 1.0) {
    return p.sigma * e;
  }
  const double d = draw_stable(StableParams{p.beta}, rng);
  return p.sigma * std::pow(e, 1.0 / p.beta) * d;
}

std::vector<double> ml_sample(const MlParams& p, std::size_t n, RandomStream& rng) {
  validate(p);
  if (n < 1) {
    throw DomainError("ml_sample requires n >= 1");
  }
  std::vector<double> out(n);
  for (auto& v : out) {
    v = draw_ml(p, rng);
  }
  return out;
}

}  // namespace fcpp

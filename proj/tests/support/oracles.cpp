#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace fcpp::testing {
namespace {

constexpr MlfReference kMlfTable[] = {
#include "oracles/mlf_reference.inc"
};

constexpr double kQuadTolerance = 1e-12;

// theta * int (g(t) - F(t))^2 f*(t) dt over (0, inf), where g is the step
// function that equals levels[j] on [cuts[j-1], cuts[j]) (cuts[-1] = 0 and
// cuts[m] = inf).
double integrate_steps(const FcppParams& p, const std::vector<double>& cuts,
                       const std::vector<double>& levels) {
  const MixtureDistribution f(p);
  auto piece = [&](double level) {
    return [&f, &p, level](double t) {
      if (!(t > 0.0) || !std::isfinite(t)) {
        return 0.0;
      }
      const double r = level - f.cdf(t);
      return r * r * f.continuous_pdf(t);
    };
  };
  boost::math::quadrature::tanh_sinh<double> finite;
  boost::math::quadrature::exp_sinh<double> tail;
  double total = 0.0;
  double lo = 0.0;
  for (std::size_t j = 0; j < cuts.size(); ++j) {
    if (cuts[j] > lo) {
      total += finite.integrate(piece(levels[j]), lo, cuts[j], kQuadTolerance);
    }
    lo = std::max(lo, cuts[j]);
  }
  total += tail.integrate(piece(levels.back()), lo, std::numeric_limits<double>::infinity(),
                          kQuadTolerance);
  return p.theta * total;
}

}  // namespace

std::span<const MlfReference> mlf_reference() { return kMlfTable; }

double mlf_taylor(double beta, double x, int terms) {
  long double sum = 0.0L;
  for (int n = 0; n < terms; ++n) {
    const long double lg = std::lgamma(static_cast<long double>(beta) * n + 1.0L);
    const long double mag = std::exp(n * std::log(static_cast<long double>(x)) - lg);
    sum += (n % 2 == 0 ? mag : -mag);
    if (x == 0.0) break;
  }
  return static_cast<double>(sum);
}

double erfcx(double x) {
  const long double lx = x;
  return static_cast<double>(std::exp(lx * lx) * std::erfc(lx));
}

double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf) {
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double t = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= t) ++i;
    while (j < b.size() && b[j] <= t) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_two_sample_critical_1pct(std::size_t n, std::size_t m) {
  // c(alpha) = sqrt(-log(alpha / 2) / 2)
  const double c = std::sqrt(-0.5 * std::log(0.005));
  const double nd = static_cast<double>(n);
  const double md = static_cast<double>(m);
  return c * std::sqrt((nd + md) / (nd * md));
}

MeanSe mean_se(std::span<const double> v) {
  const double n = static_cast<double>(v.size());
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= n;
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

MeanSe laplace_mc(std::span<const double> sample, double s) {
  std::vector<double> e(sample.size());
  std::transform(sample.begin(), sample.end(), e.begin(),
                 [s](double x) { return std::exp(-s * x); });
  return mean_se(e);
}

double cm_integral(const IetSample& s, const FcppParams& p) {
  const double k = static_cast<double>(s.k());
  std::vector<double> levels = {0.0};
  for (std::size_t i = 1; i <= s.k(); ++i) levels.push_back(static_cast<double>(i) / k);
  const double q = 1.0 - p.theta;
  return integrate_steps(p, s.iets, levels) + q * q * q;
}

double cmmod_integral(const IetSample& s, const FcppParams& p) {
  const double k = static_cast<double>(s.k());
  std::vector<double> cuts;
  std::vector<double> levels = {1.0 - p.theta};
  for (std::size_t i = 1; i <= s.k(); ++i) {
    cuts.push_back(s.iets[i - 1] + 1.0);
    levels.push_back(std::max(static_cast<double>(i) / k, 1.0 - p.theta));
  }
  return integrate_steps(p, cuts, levels) / (p.theta * p.theta * p.theta);
}

double bisect_quantile(const std::function<double(double)>& cdf, double q) {
  double lo = 0.0;
  double hi = 1.0;
  while (cdf(hi) < q) {
    lo = hi;
    hi *= 2.0;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (cdf(mid) < q ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double rel_err(double a, double b) { return b == 0.0 ? std::abs(a) : std::abs(a - b) / std::abs(b); }

}  // namespace fcpp::testing

#include "fcpp/pot.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "fcpp/errors.hpp"

namespace fcpp {

void validate(const EventSeries& s) {
  const std::size_t n = s.times.size();
  if (n < 2) {
    throw DomainError("an event series needs at least 2 events");
  }
  if (s.magnitudes.size() != n) {
    throw DomainError("times and magnitudes differ in length");
  }
  if (s.segments && s.segments->size() != n) {
    throw DomainError("segments and times differ in length");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(s.times[i]) || !std::isfinite(s.magnitudes[i])) {
      throw DomainError("non-finite value in event " + std::to_string(i + 1));
    }
  }
  if (!s.segments) {
    for (std::size_t i = 1; i < n; ++i) {
      if (!(s.times[i] > s.times[i - 1])) {
        throw DomainError("event times must increase strictly (event " + std::to_string(i + 1) +
                          ")");
      }
    }
    return;
  }
  std::map<std::int64_t, double> last;
  for (std::size_t i = 0; i < n; ++i) {
    const auto [it, inserted] = last.try_emplace((*s.segments)[i], s.times[i]);
    if (!inserted) {
      if (!(s.times[i] > it->second)) {
        throw DomainError("event times must increase strictly within a segment (event " +
                          std::to_string(i + 1) + ")");
      }
      it->second = s.times[i];
    }
  }
}

std::size_t exceedance_target(std::size_t n, double frac) {
  if (!(frac > 0.0 && frac < 1.0)) {
    throw DomainError("exceedance fraction must lie in (0, 1), got " + std::to_string(frac));
  }
  const double x = frac * static_cast<double>(n);
  // frac * n is often meant to be an integer (0.02 * 10000); do not let a
  // rounding error in the product push ceil up by one.
  const double r = std::round(x);
  const double k = std::abs(x - r) <= 1e-9 * std::max(1.0, x) ? r : std::ceil(x);
  return static_cast<std::size_t>(k);
}

double threshold_from_fraction(const EventSeries& s, double frac) {
  validate(s);
  const std::size_t n = s.size();
  const std::size_t k = exceedance_target(n, frac);
  if (k < 2) {
    throw InsufficientDataError("ceil(frac * n) = " + std::to_string(k) +
                                " exceedances; at least 2 needed");
  }
  if (k >= n) {
    throw DomainError("exceedance fraction leaves no event below the threshold");
  }
  std::vector<double> sorted(s.magnitudes);
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(n - k - 1),
                   sorted.end());
  const double u = sorted[n - k - 1];
  if (count_exceedances(s, u) < 2) {
    throw DegenerateSampleError("ties at the threshold leave fewer than 2 exceedances");
  }
  return u;
}

std::size_t count_exceedances(const EventSeries& s, double u) {
  return static_cast<std::size_t>(
      std::count_if(s.magnitudes.begin(), s.magnitudes.end(), [u](double m) { return m > u; }));
}

IetSample extract_iets(const EventSeries& s, double u) {
  validate(s);
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.magnitudes[i] > u) {
      idx.push_back(i);
    }
  }
  if (idx.size() < 2) {
    throw InsufficientDataError("need at least 2 exceedances, found " + std::to_string(idx.size()));
  }
  std::vector<double> iets;
  iets.reserve(idx.size() - 1);
  for (std::size_t j = 1; j < idx.size(); ++j) {
    const std::size_t a = idx[j - 1];
    const std::size_t b = idx[j];
    if (s.segments && (*s.segments)[a] != (*s.segments)[b]) {
      continue;
    }
    iets.push_back(s.times[b] - s.times[a]);
  }
  if (iets.empty()) {
    throw InsufficientDataError("no two consecutive exceedances share a segment");
  }
  return IetSample::from_iets(std::move(iets), idx.back() + 1);
}

}  // namespace fcpp

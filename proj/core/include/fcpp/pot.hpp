#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "fcpp/estimators.hpp"

namespace fcpp {

/// Marked point process: event times with magnitudes and an optional segment
/// id per event (e.g. one id per season).
struct EventSeries {
  std::vector<double> times;
  std::vector<double> magnitudes;
  std::optional<std::vector<std::int64_t>> segments;

  std::size_t size() const { return times.size(); }
};

/// Throws DomainError unless n >= 2, lengths agree, values are finite and
/// times increase strictly (within each segment when segments are present).
void validate(const EventSeries& s);

/// Number of events needed above the threshold: ceil(frac * n).
std::size_t exceedance_target(std::size_t n, double frac);

/// The (n - k)-th order statistic of the magnitudes, k = ceil(frac n), so that
/// the k largest values lie above it when there are no ties. Exceedance is
/// strict. Throws DomainError for frac outside (0, 1) or k >= n,
/// InsufficientDataError for k < 2 and DegenerateSampleError if ties leave
/// fewer than 2 strict exceedances.
double threshold_from_fraction(const EventSeries& s, double frac);

/// Number of magnitudes strictly above u.
std::size_t count_exceedances(const EventSeries& s, double u);

/// Gaps between consecutive strict exceedances of u. The first exceedance
/// contributes no gap; with segments, gaps that cross a segment change are
/// dropped. n_star is the 1-based index of the last exceedance and
/// p_hat = (number of gaps) / n_star. Throws InsufficientDataError when fewer
/// than 2 exceedances (or no within-segment gap) remain.
IetSample extract_iets(const EventSeries& s, double u);

}  // namespace fcpp

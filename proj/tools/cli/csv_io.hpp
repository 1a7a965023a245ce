#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "fcpp/pot.hpp"

namespace fcpp::cli {

/// Reads `time,magnitude[,segment]` CSV. Columns are matched by header name,
/// blank lines are skipped and CRLF line ends are accepted. Throws ParseError
/// with the offending line number, including for series that fail validation.
EventSeries read_event_csv(std::istream& in);

/// Writes the header and one row per event, numbers in shortest round-trip
/// form so that read_event_csv restores the series exactly.
void write_event_csv(std::ostream& out, const EventSeries& s);

/// Plain `key = value` lines; `#` starts a comment. Keys may use '_' or '-'.
/// Throws ParseError on a line without '='.
std::map<std::string, std::string> read_config(std::istream& in);

}  // namespace fcpp::cli

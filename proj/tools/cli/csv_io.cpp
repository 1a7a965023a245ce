#include "csv_io.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <ostream>
#include <vector>

#include "fcpp/errors.hpp"
#include "fcpp/format.hpp"

namespace fcpp::cli {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) {
      return out;
    }
    start = comma + 1;
  }
}

template <typename T>
T parse_field(const std::string& text, std::size_t line, const char* column) {
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (text.empty() || ec != std::errc() || ptr != last) {
    throw ParseError("line " + std::to_string(line) + ": bad " + column + " value '" + text + "'");
  }
  return value;
}

}  // namespace

EventSeries read_event_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) {
      header = split(line);
    }
  }
  if (header.empty()) {
    throw ParseError("empty input: expected a header time,magnitude[,segment]");
  }
  if (!header.empty() && header[0].rfind("\xEF\xBB\xBF", 0) == 0) {
    header[0].erase(0, 3);  // UTF-8 byte order mark
  }
  auto column = [&](const std::string& name) -> int {
    const auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : static_cast<int>(it - header.begin());
  };
  const int time_col = column("time");
  const int mag_col = column("magnitude");
  const int seg_col = column("segment");
  if (time_col < 0 || mag_col < 0) {
    throw ParseError("header must contain time and magnitude columns");
  }
  for (const auto& h : header) {
    if (h != "time" && h != "magnitude" && h != "segment") {
      throw ParseError("unknown column '" + h + "' (expected time,magnitude[,segment])");
    }
  }

  EventSeries s;
  std::vector<std::int64_t> segments;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) {
      continue;
    }
    const auto fields = split(line);
    if (fields.size() != header.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(header.size()) + " fields, got " +
                       std::to_string(fields.size()));
    }
    s.times.push_back(parse_field<double>(fields[time_col], line_no, "time"));
    s.magnitudes.push_back(parse_field<double>(fields[mag_col], line_no, "magnitude"));
    if (seg_col >= 0) {
      segments.push_back(parse_field<std::int64_t>(fields[seg_col], line_no, "segment"));
    }
  }
  if (seg_col >= 0) {
    s.segments = std::move(segments);
  }
  try {
    validate(s);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  return s;
}

void write_event_csv(std::ostream& out, const EventSeries& s) {
  out << (s.segments ? "time,magnitude,segment\n" : "time,magnitude\n");
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << format_number(s.times[i]) << ',' << format_number(s.magnitudes[i]);
    if (s.segments) {
      out << ',' << (*s.segments)[i];
    }
    out << '\n';
  }
}

std::map<std::string, std::string> read_config(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    if (trim(line).empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("config line " + std::to_string(line_no) + ": expected key=value");
    }
    std::string key = trim(std::string_view(line).substr(0, eq));
    std::replace(key.begin(), key.end(), '_', '-');
    if (key.empty()) {
      throw ParseError("config line " + std::to_string(line_no) + ": empty key");
    }
    out[key] = trim(std::string_view(line).substr(eq + 1));
  }
  return out;
}

}  // namespace fcpp::cli

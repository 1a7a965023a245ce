#include "fcpp/format.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace fcpp {

std::string format_number(double v) {
  if (std::isnan(v)) {
    return "NA";
  }
  std::array<char, 32> buf;
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

}  // namespace fcpp

#pragma once

#include <string>

namespace fcpp {

/// Shortest decimal text that reads back to the same double; NaN as "NA".
std::string format_number(double v);

}  // namespace fcpp

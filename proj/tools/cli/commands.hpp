#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fcpp/errors.hpp"
#include "fcpp/study.hpp"

namespace fcpp::cli {

/// Process exit codes of the fcpp tool.
enum ExitCode : int {
  kOk = 0,
  kUsage = 1,         // bad flags or argument values
  kParse = 2,         // malformed CSV or config file
  kData = 3,          // too few exceedances or a degenerate sample
  kOptimization = 4,  // no optimizer start converged
  kIo = 5,            // a file could not be opened or written
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Runs one subcommand (fit, simulate, study, dist or timing). `args` excludes
/// the program name. Reports go to `out` unless --output names a file;
/// messages go to `err`. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "LAW/theta=X[/n=N][/frac=F]", e.g. "ml:0.8/theta=0.8/n=10000", the
/// form printed by Scenario::name(). Missing n and frac take the defaults.
Scenario parse_scenario(std::string_view text, std::size_t default_n, double default_frac);

}  // namespace fcpp::cli

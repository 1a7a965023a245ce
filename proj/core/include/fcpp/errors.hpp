#pragma once

#include <stdexcept>
#include <string>

namespace fcpp {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The data cannot support the requested computation (e.g. all IETs equal).
class DegenerateSampleError : public Error {
 public:
  using Error::Error;
};

/// Too few exceedances or inter-exceedance times.
class InsufficientDataError : public Error {
 public:
  using Error::Error;
};

/// No optimizer start produced a usable point.
class OptimizationError : public Error {
 public:
  using Error::Error;
};

/// Malformed input (CSV, configuration, flag values).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace fcpp

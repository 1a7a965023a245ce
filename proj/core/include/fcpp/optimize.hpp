#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace fcpp {

struct Bounds {
  std::vector<double> lower;  // -inf for unbounded
  std::vector<double> upper;  // +inf for unbounded
};

struct OptimizerOptions {
  std::size_t max_iterations = 500;
  double value_tolerance = 1e-12;     // stop when f decreases by less than this
  double gradient_tolerance = 1e-8;   // stop when the projected gradient is this small
  double relative_step = 1e-6;        // forward-difference step, relative to max(|x|, 1)
};

struct OptimizerResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
  std::string message;
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Minimises f over a box with a projected BFGS method: forward-difference
/// gradients (backward at an upper bound), an inverse-Hessian update restricted
/// to the free variables, and Armijo backtracking along the projected path.
///
/// `converged` is false only when the iteration cap is hit or f is not finite
/// at the start. A line search that cannot make progress at the resolution of
/// the difference gradient ends the run as converged.
OptimizerResult minimize_box(const Objective& f, std::vector<double> x0, const Bounds& bounds,
                             const OptimizerOptions& options = {});

}  // namespace fcpp

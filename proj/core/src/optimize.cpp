#include "fcpp/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fcpp/errors.hpp"

namespace fcpp {
namespace {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a[i] * b[i];
  }
  return s;
}

Mat identity(std::size_t n, double scale = 1.0) {
  Mat m(n, Vec(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] = scale;
  }
  return m;
}

class Problem {
 public:
  Problem(const Objective& f, const Bounds& b, const OptimizerOptions& o)
      : f_(f), lo_(b.lower), hi_(b.upper), opt_(o) {}

  std::size_t evaluations() const { return evaluations_; }

  double eval(const Vec& x) {
    ++evaluations_;
    const double v = f_(x);
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
  }

  void project(Vec& x) const {
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = std::clamp(x[i], lo_[i], hi_[i]);
    }
  }

  double step(const Vec& x, std::size_t i) const {
    return opt_.relative_step * std::max(std::abs(x[i]), 1.0);
  }

  bool fixed(const Vec& x, std::size_t i) const { return hi_[i] - lo_[i] < 2.0 * step(x, i); }

  Vec gradient(const Vec& x, double fx) {
    Vec g(x.size(), 0.0);
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (fixed(x, i)) {
        continue;
      }
      const double h = step(x, i);
      Vec xp = x;
      const bool forward = x[i] + h <= hi_[i];
      xp[i] = forward ? x[i] + h : x[i] - h;
      double fp = eval(xp);
      if (!std::isfinite(fp)) {
        // Try the other side once before giving up on this coordinate.
        xp[i] = forward ? x[i] - h : x[i] + h;
        fp = eval(xp);
        if (!std::isfinite(fp)) {
          continue;
        }
        g[i] = forward ? (fx - fp) / h : (fp - fx) / h;
        continue;
      }
      g[i] = forward ? (fp - fx) / h : (fx - fp) / h;
    }
    return g;
  }

  // Variables held at a bound by the gradient, or pinned by a degenerate box.
  std::vector<bool> active(const Vec& x, const Vec& g) const {
    std::vector<bool> a(x.size(), false);
    for (std::size_t i = 0; i < x.size(); ++i) {
      a[i] = fixed(x, i) || (x[i] <= lo_[i] && g[i] > 0.0) || (x[i] >= hi_[i] && g[i] < 0.0);
    }
    return a;
  }

 private:
  const Objective& f_;
  Vec lo_;
  Vec hi_;
  OptimizerOptions opt_;
  std::size_t evaluations_ = 0;
};

}  // namespace

OptimizerResult minimize_box(const Objective& f, std::vector<double> x0, const Bounds& bounds,
                             const OptimizerOptions& options) {
  const std::size_t n = x0.size();
  if (bounds.lower.size() != n || bounds.upper.size() != n) {
    throw DomainError("minimize_box: bounds do not match the start point");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!(bounds.lower[i] <= bounds.upper[i])) {
      throw DomainError("minimize_box: empty box");
    }
  }

  Problem problem(f, bounds, options);
  OptimizerResult result;
  Vec x = std::move(x0);
  problem.project(x);
  double fx = problem.eval(x);
  if (!std::isfinite(fx)) {
    result.x = x;
    result.value = fx;
    result.evaluations = problem.evaluations();
    result.message = "objective not finite at the start point";
    return result;
  }

  Vec g = problem.gradient(x, fx);
  Mat h = identity(n);
  bool fresh = true;  // h is a multiple of the identity

  for (std::size_t iter = 0;; ++iter) {
    result.iterations = iter;
    if (iter >= options.max_iterations) {
      result.message = "iteration limit reached";
      break;
    }

    const auto act = problem.active(x, g);
    double pg = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!act[i]) {
        pg = std::max(pg, std::abs(g[i]));
      }
    }
    if (pg < options.gradient_tolerance) {
      result.converged = true;
      result.message = "projected gradient below tolerance";
      break;
    }

    Vec d(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (act[i]) {
        continue;
      }
      for (std::size_t j = 0; j < n; ++j) {
        if (!act[j]) {
          d[i] -= h[i][j] * g[j];
        }
      }
    }
    if (dot(d, g) >= 0.0) {
      h = identity(n);
      fresh = true;
      for (std::size_t i = 0; i < n; ++i) {
        d[i] = act[i] ? 0.0 : -g[i];
      }
    }
    if (fresh) {
      // Without curvature information take a first step of length 0.1.
      double dmax = 0.0;
      for (double v : d) {
        dmax = std::max(dmax, std::abs(v));
      }
      for (double& v : d) {
        v *= 0.1 / dmax;
      }
    }

    // Armijo backtracking on the projected path x(t) = P(x + t d).
    bool accepted = false;
    Vec xn(n);
    double fn = fx;
    for (double t = 1.0; t > 1e-20; t *= 0.5) {
      for (std::size_t i = 0; i < n; ++i) {
        xn[i] = x[i] + t * d[i];
      }
      problem.project(xn);
      Vec s(n);
      bool moved = false;
      for (std::size_t i = 0; i < n; ++i) {
        s[i] = xn[i] - x[i];
        moved = moved || s[i] != 0.0;
      }
      if (!moved) {
        break;
      }
      fn = problem.eval(xn);
      if (fn <= fx + 1e-4 * dot(g, s)) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      if (!fresh) {
        h = identity(n);
        fresh = true;
        continue;
      }
      result.converged = true;
      result.message = "no further descent at gradient resolution";
      break;
    }

    const Vec gn = problem.gradient(xn, fn);
    Vec s(n);
    Vec y(n);
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = xn[i] - x[i];
      y[i] = gn[i] - g[i];
    }
    const double sy = dot(s, y);
    if (sy > 1e-12 * std::sqrt(dot(s, s) * dot(y, y))) {
      if (fresh) {
        h = identity(n, sy / dot(y, y));
        fresh = false;
      }
      // H <- (I - r s y') H (I - r y s') + r s s'
      const double r = 1.0 / sy;
      Vec hy(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          hy[i] += h[i][j] * y[j];
        }
      }
      const double yhy = dot(y, hy);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          h[i][j] += -r * (s[i] * hy[j] + hy[i] * s[j]) + (r * r * yhy + r) * s[i] * s[j];
        }
      }
    }

    const double improvement = fx - fn;
    x = xn;
    fx = fn;
    g = gn;
    if (improvement < options.value_tolerance) {
      result.iterations = iter + 1;
      result.converged = true;
      result.message = "objective change below tolerance";
      break;
    }
  }

  result.x = x;
  result.value = fx;
  result.evaluations = problem.evaluations();
  return result;
}

}  // namespace fcpp

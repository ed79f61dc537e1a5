#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mscs/errors.hpp"
#include "mscs/rng.hpp"

namespace mscs {

using Vec = std::vector<double>;

/// Raw objective. The stream pointer is only consulted by noisy problems and
/// may be null for deterministic ones.
using ObjectiveFn = std::function<double(std::span<const double>, RngStream*)>;

/// Inequality constraint g(x) <= 0.
using ConstraintFn = std::function<double(std::span<const double>)>;

/// Dimension `index` may only take values origin + k * step.
struct IntegerDim {
  std::size_t index = 0;
  double step = 1.0;
  double origin = 0.0;
};

struct ObjectiveProblem {
  std::string name;
  Vec lower;
  Vec upper;
  ObjectiveFn objective;
  std::vector<ConstraintFn> constraints;
  std::vector<IntegerDim> integer_dims;
  std::optional<double> known_min;
  bool noisy = false;

  std::size_t dim() const noexcept { return lower.size(); }

  double width(std::size_t d) const { return upper[d] - lower[d]; }

  double value(std::span<const double> x, RngStream* rng = nullptr) const {
    return objective(x, rng);
  }

  void validate() const {
    if (lower.empty() || lower.size() != upper.size())
      throw ParameterError(name + ": bounds must be non-empty and of equal length");
    for (std::size_t d = 0; d < lower.size(); ++d)
      if (!(lower[d] < upper[d]))
        throw ParameterError(name + ": lower < upper violated in dimension " + std::to_string(d));
    if (!objective) throw ParameterError(name + ": missing objective");
    for (const auto& g : integer_dims) {
      if (g.index >= dim()) throw ParameterError(name + ": integer dimension out of range");
      if (!(g.step > 0.0)) throw ParameterError(name + ": integer grid step must be > 0");
    }
  }
};

struct PenaltyConfig {
  double coefficient = 1e9;
};

/// |f_found - f_true|, always >= 0.
struct ErrorValue {
  double e_f = 0.0;
};

inline ErrorValue error_metric(double f_found, double f_true) {
  if (!std::isfinite(f_found) || !std::isfinite(f_true))
    throw EvaluationError("error metric: non-finite input");
  return {std::abs(f_found - f_true)};
}

/// Sum of squared positive constraint values.
inline double constraint_violation(const ObjectiveProblem& problem, std::span<const double> x) {
  double total = 0.0;
  for (std::size_t i = 0; i < problem.constraints.size(); ++i) {
    const double g = problem.constraints[i](x);
    if (!std::isfinite(g))
      throw EvaluationError(problem.name + ": constraint g" + std::to_string(i + 1) +
                                " is not finite",
                            i);
    if (g > 0.0) total += g * g;
  }
  return total;
}

/// Largest constraint value, or -inf when there are none. <= 0 means feasible.
inline double max_constraint(const ObjectiveProblem& problem, std::span<const double> x) {
  double worst = -INFINITY;
  for (const auto& g : problem.constraints) worst = std::max(worst, g(x));
  return worst;
}

/// objective(x) + coefficient * sum_i max(0, g_i(x))^2
inline double evaluate_penalized(const ObjectiveProblem& problem, std::span<const double> x,
                                 const PenaltyConfig& penalty, RngStream* rng = nullptr) {
  const double f = problem.objective(x, rng);
  if (!std::isfinite(f)) throw EvaluationError(problem.name + ": objective is not finite");
  const double violation = constraint_violation(problem, x);
  if (violation == 0.0) return f;
  return f + penalty.coefficient * violation;
}

/// Clip into [lower, upper] and move integer dimensions onto the nearest
/// in-bounds grid point.
inline Vec clamp_and_snap(std::span<const double> x, const ObjectiveProblem& problem) {
  Vec y(x.begin(), x.end());
  for (std::size_t d = 0; d < y.size(); ++d) y[d] = std::clamp(y[d], problem.lower[d], problem.upper[d]);
  for (const auto& g : problem.integer_dims) {
    const std::size_t d = g.index;
    const double k_lo = std::ceil((problem.lower[d] - g.origin) / g.step);
    const double k_hi = std::floor((problem.upper[d] - g.origin) / g.step);
    const double k = std::clamp(std::round((y[d] - g.origin) / g.step), k_lo, k_hi);
    y[d] = g.origin + k * g.step;
  }
  return y;
}

}  // namespace mscs

#pragma once

#include <cmath>
#include <numbers>
#include <span>

#include "mscs/problem.hpp"

namespace mscs::cases {

/// Tension/compression spring, x = (r, d, N): wire diameter, mean coil
/// diameter, number of active coils. Minimize the weight (2 + N) r^2 d.
inline ObjectiveProblem spring_problem() {
  ObjectiveProblem p;
  p.name = "spring";
  p.lower = {0.05, 0.25, 2.0};
  p.upper = {2.0, 1.3, 15.0};
  p.objective = [](std::span<const double> x, RngStream*) {
    return (2.0 + x[2]) * x[0] * x[0] * x[1];
  };
  p.constraints = {
      [](std::span<const double> x) {
        const double r = x[0], d = x[1], n = x[2];
        return 1.0 - n * d * d * d / (71785.0 * std::pow(r, 4));
      },
      [](std::span<const double> x) {
        const double r = x[0], d = x[1];
        return d * (4.0 * d - r) / (12566.0 * r * r * r * (d - r)) + 1.0 / (5108.0 * r * r) - 1.0;
      },
      [](std::span<const double> x) {
        const double r = x[0], d = x[1], n = x[2];
        return 1.0 - 140.45 * r / (d * d * n);
      },
      [](std::span<const double> x) { return (x[1] + x[0]) - 1.5; },
  };
  return p;
}

/// Cylindrical pressure vessel, x = (d1, d2, r, W): head and shell thickness
/// (multiples of 0.0625 in), inner radius, length.
///
/// Cost coefficients are 0.6224, 1.7781, 19.84, 3.1661, and the volume
/// constraint is -(4/3) pi r^3 - pi r^2 W + 1296000 <= 0; this is the form
/// under which (0.8125, 0.4375, 42.0984456, 176.6366) costs 6059.714 and is
/// feasible.
inline ObjectiveProblem pressure_vessel_problem() {
  constexpr double kThickness = 0.0625;
  ObjectiveProblem p;
  p.name = "vessel";
  p.lower = {1 * kThickness, 1 * kThickness, 10.0, 10.0};
  p.upper = {99 * kThickness, 99 * kThickness, 200.0, 200.0};
  p.integer_dims = {{0, kThickness, 0.0}, {1, kThickness, 0.0}};
  p.objective = [](std::span<const double> x, RngStream*) {
    const double d1 = x[0], d2 = x[1], r = x[2], w = x[3];
    return 0.6224 * r * w * d1 + 1.7781 * r * r * d2 + 19.84 * r * d1 * d1 + 3.1661 * w * d1 * d1;
  };
  p.constraints = {
      [](std::span<const double> x) { return -x[0] + 0.0193 * x[2]; },
      [](std::span<const double> x) { return -x[1] + 0.00954 * x[2]; },
      [](std::span<const double> x) {
        const double r = x[2], w = x[3];
        return -4.0 * std::numbers::pi * r * r * r / 3.0 - std::numbers::pi * r * r * w + 1296000.0;
      },
      [](std::span<const double> x) { return x[3] - 240.0; },
  };
  return p;
}

/// Golinski's speed reducer; x3 (number of pinion teeth) is an integer.
inline ObjectiveProblem speed_reducer_problem() {
  ObjectiveProblem p;
  p.name = "reducer";
  p.lower = {2.6, 0.7, 17.0, 7.3, 7.8, 2.9, 5.0};
  p.upper = {3.6, 0.8, 28.0, 8.3, 8.4, 3.9, 5.5};
  p.integer_dims = {{2, 1.0, 0.0}};
  p.objective = [](std::span<const double> x, RngStream*) {
    const double x1 = x[0], x2 = x[1], x3 = x[2], x4 = x[3], x5 = x[4], x6 = x[5], x7 = x[6];
    return 0.7854 * (x1 * x2 * x2 * (3.3333 * x3 * x3 + 14.9334 * x3 - 43.0934) +
                     (x4 * x6 * x6 + x5 * x7 * x7)) -
           1.508 * x1 * (x6 * x6 + x7 * x7) + 7.4777 * (x6 * x6 * x6 + x7 * x7 * x7);
  };
  p.constraints = {
      [](std::span<const double> x) { return 27.0 / (x[0] * x[1] * x[1] * x[2]) - 1.0; },
      [](std::span<const double> x) { return 397.5 / (x[0] * x[1] * x[1] * x[2] * x[2]) - 1.0; },
      [](std::span<const double> x) {
        return 1.93 * std::pow(x[3], 3) / (x[1] * x[2] * std::pow(x[5], 4)) - 1.0;
      },
      [](std::span<const double> x) {
        return 1.93 * std::pow(x[4], 3) / (x[1] * x[2] * std::pow(x[6], 4)) - 1.0;
      },
      [](std::span<const double> x) {
        const double t = 745.0 * x[3] / (x[1] * x[2]);
        return std::sqrt(t * t + 16.9e6) / (110.0 * std::pow(x[5], 3)) - 1.0;
      },
      [](std::span<const double> x) {
        const double t = 745.0 * x[4] / (x[1] * x[2]);
        return std::sqrt(t * t + 157.5e6) / (85.0 * std::pow(x[6], 3)) - 1.0;
      },
      [](std::span<const double> x) { return x[1] * x[2] - 40.0; },
      [](std::span<const double> x) { return 5.0 * x[1] - x[0]; },
      [](std::span<const double> x) { return x[0] - 12.0 * x[1]; },
      [](std::span<const double> x) { return (1.5 * x[5] + 1.9) - x[3]; },
      [](std::span<const double> x) { return (1.1 * x[6] + 1.9) - x[4]; },
  };
  return p;
}

}  // namespace mscs::cases

#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <vector>

#include "mscs/errors.hpp"
#include "mscs/problem.hpp"

namespace mscs::cases {

/// Classical fourth-order Runge-Kutta for y' = f(t, y) with a fixed step.
/// Returns the state at t0 + i h for i = 0..steps. Time is computed as
/// t0 + i h rather than accumulated.
template <std::size_t N, class F>
std::vector<std::array<double, N>> rk4_integrate(F&& f, std::array<double, N> y, double t0,
                                                 double h, std::size_t steps) {
  using State = std::array<double, N>;
  auto axpy = [](const State& a, double s, const State& b) {
    State r;
    for (std::size_t i = 0; i < N; ++i) r[i] = a[i] + s * b[i];
    return r;
  };
  std::vector<State> out;
  out.reserve(steps + 1);
  out.push_back(y);
  for (std::size_t i = 0; i < steps; ++i) {
    const double t = t0 + static_cast<double>(i) * h;
    const State k1 = f(t, y);
    const State k2 = f(t + h / 2, axpy(y, h / 2, k1));
    const State k3 = f(t + h / 2, axpy(y, h / 2, k2));
    const State k4 = f(t + h, axpy(y, h, k3));
    for (std::size_t j = 0; j < N; ++j) {
      y[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
      if (!std::isfinite(y[j]))
        throw DivergenceError("rk4: non-finite state at t = " + std::to_string(t + h));
    }
    out.push_back(y);
  }
  return out;
}

struct OdeConfig {
  double step = 0.01;
  double t_end = 2.0;
  double y0 = 0.0;
  double v0 = 0.0;

  std::size_t steps() const {
    if (!(step > 0.0 && step <= t_end)) throw ParameterError("ode: need 0 < step <= t_end");
    return static_cast<std::size_t>(std::llround(t_end / step));
  }
};

struct Sample {
  double t;
  double y;
};

/// y'' + mu y' + nu y = 40 cos(3 t), integrated as the first-order system (y, y').
inline std::vector<Sample> rk4_solve(double mu, double nu, const OdeConfig& cfg) {
  if (!std::isfinite(mu) || !std::isfinite(nu)) throw ParameterError("rk4_solve: non-finite parameter");
  const std::size_t steps = cfg.steps();
  auto rhs = [mu, nu](double t, const std::array<double, 2>& s) {
    return std::array<double, 2>{s[1], 40.0 * std::cos(3.0 * t) - mu * s[1] - nu * s[0]};
  };
  const auto states = rk4_integrate(rhs, std::array<double, 2>{cfg.y0, cfg.v0}, 0.0, cfg.step, steps);
  std::vector<Sample> out(states.size());
  for (std::size_t i = 0; i < states.size(); ++i)
    out[i] = {static_cast<double>(i) * cfg.step, states[i][0]};
  return out;
}

struct VibrationDataset {
  std::vector<double> times;
  std::vector<double> displacements;

  void validate() const {
    if (times.size() != displacements.size()) throw ParameterError("vibration data: length mismatch");
    if (times.size() < 2) throw ParameterError("vibration data: need at least 2 samples");
    if (times.front() != 0.0) throw ParameterError("vibration data: times must start at 0");
    for (std::size_t i = 1; i < times.size(); ++i)
      if (!(times[i] > times[i - 1])) throw ParameterError("vibration data: times must increase");
  }
};

/// The 11 measurements of the forced damped oscillator, t = 0, 0.2, ..., 2.0.
inline VibrationDataset measured_vibration() {
  VibrationDataset d;
  d.displacements = {0.00, 0.59, 1.62, 2.21, 1.89, 0.69, -0.99, -2.53, -3.36, -3.15, -1.92};
  for (std::size_t i = 0; i < d.displacements.size(); ++i) d.times.push_back(0.2 * static_cast<double>(i));
  return d;
}

inline void write_vibration_csv(std::ostream& os, const VibrationDataset& d) {
  os << "t,y\n";
  for (std::size_t i = 0; i < d.times.size(); ++i) os << d.times[i] << ',' << d.displacements[i] << '\n';
}

/// Sum of squared residuals between the RK4 prediction (nearest step sample)
/// and the measurements.
inline double vibration_objective(double mu, double nu, const VibrationDataset& data,
                                  const OdeConfig& cfg) {
  const auto samples = rk4_solve(mu, nu, cfg);
  double sse = 0.0;
  for (std::size_t i = 0; i < data.times.size(); ++i) {
    const auto idx = static_cast<std::size_t>(std::llround(data.times[i] / cfg.step));
    if (idx >= samples.size()) throw ParameterError("vibration: ODE horizon does not cover the data");
    const double r = samples[idx].y - data.displacements[i];
    sse += r * r;
  }
  return sse;
}

/// Two-parameter identification problem over (mu, nu) in [0, 10]^2.
inline ObjectiveProblem vibration_problem(VibrationDataset data = measured_vibration(),
                                          OdeConfig cfg = {}) {
  data.validate();
  if (data.times.back() > cfg.t_end + cfg.step / 2)
    throw ParameterError("vibration: ODE horizon does not cover the data");
  ObjectiveProblem p;
  p.name = "vibration";
  p.lower = {0.0, 0.0};
  p.upper = {10.0, 10.0};
  p.objective = [data = std::move(data), cfg](std::span<const double> x, RngStream*) {
    return vibration_objective(x[0], x[1], data, cfg);
  };
  return p;
}

}  // namespace mscs::cases

#pragma once

// Benchmark functions and the shift/rotate/bias wrapper used to build the
// CEC-style variants.
//
// Every raw function here is nonnegative with its global minimum 0 at the
// origin. Where the reference definition puts the optimum elsewhere, the
// offset is folded into the raw function (Rosenbrock uses z + 1, Schwefel
// uses 10 z + 420.9687...). Weierstrass, Schwefel and Katsuura include the
// CEC2015 input scalings (0.5/100, 1000/100 and 5/100).

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mscs/errors.hpp"
#include "mscs/levy.hpp"
#include "mscs/problem.hpp"
#include "mscs/rng.hpp"

namespace mscs::bench {

inline double sphere(std::span<const double> z) {
  double s = 0.0;
  for (double v : z) s += v * v;
  return s;
}

// Arranged as (20 - 20 e^a) + (e - e^b) so the origin evaluates to exactly 0.
inline double ackley(std::span<const double> z) {
  const double n = static_cast<double>(z.size());
  double sq = 0.0, cs = 0.0;
  for (double v : z) {
    sq += v * v;
    cs += std::cos(2.0 * std::numbers::pi * v);
  }
  return (20.0 - 20.0 * std::exp(-0.2 * std::sqrt(sq / n))) + (std::numbers::e - std::exp(cs / n));
}

// Yang's forest-like function.
inline double forest(std::span<const double> z) {
  double abs_sum = 0.0, sin_sum = 0.0;
  for (double v : z) {
    abs_sum += std::abs(v);
    sin_sum += std::sin(v * v);
  }
  return abs_sum * std::exp(-sin_sum);
}

inline double schwefel_1_2(std::span<const double> z) {
  double total = 0.0, prefix = 0.0;
  for (double v : z) {
    prefix += v;
    total += prefix * prefix;
  }
  return total;
}

inline double schwefel_2_22(std::span<const double> z) {
  double sum = 0.0, prod = 1.0;
  for (double v : z) {
    sum += std::abs(v);
    prod *= std::abs(v);
  }
  return sum + prod;
}

inline double rosenbrock(std::span<const double> z) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < z.size(); ++i) {
    const double a = z[i] + 1.0;
    const double b = z[i + 1] + 1.0;
    total += 100.0 * (a * a - b) * (a * a - b) + z[i] * z[i];
  }
  return total;
}

inline double griewank(std::span<const double> z) {
  double sum = 0.0, prod = 1.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    sum += z[i] * z[i] / 4000.0;
    prod *= std::cos(z[i] / std::sqrt(static_cast<double>(i + 1)));
  }
  return (1.0 - prod) + sum;
}

inline double bent_cigar(std::span<const double> z) {
  double tail = 0.0;
  for (std::size_t i = 1; i < z.size(); ++i) tail += z[i] * z[i];
  return z[0] * z[0] + 1e6 * tail;
}

inline double discus(std::span<const double> z) {
  double tail = 0.0;
  for (std::size_t i = 1; i < z.size(); ++i) tail += z[i] * z[i];
  return 1e6 * z[0] * z[0] + tail;
}

struct WeierstrassConstants {
  static constexpr double a = 0.5;
  static constexpr double b = 3.0;
  static constexpr int k_max = 20;
  // Input scaling; the function has period 1 in the scaled variable, so the
  // raw function has period 1 / scale = 200 in every coordinate.
  static constexpr double scale = 0.5 / 100.0;
};

// sum_i sum_k a^k [cos(pi b^k (2 y_i + 1)) - cos(pi b^k)], y = scale * z
inline double weierstrass(std::span<const double> z) {
  using W = WeierstrassConstants;
  static const auto table = [] {
    std::array<std::array<double, 3>, W::k_max + 1> t{};  // a^k, pi b^k, cos(pi b^k)
    for (int k = 0; k <= W::k_max; ++k) {
      const double freq = std::numbers::pi * std::pow(W::b, k);
      t[k] = {std::pow(W::a, k), freq, std::cos(freq)};
    }
    return t;
  }();
  double total = 0.0;
  for (double v : z) {
    const double arg = 2.0 * (W::scale * v) + 1.0;
    for (const auto& [ak, freq, ref] : table) total += ak * (std::cos(freq * arg) - ref);
  }
  return total;
}

// CEC2015 modified Schwefel, written as sum_i (g* - g(y_i)) with g* the peak
// value of g, so each term is >= 0 and the origin is exactly 0.
inline double schwefel(std::span<const double> z) {
  constexpr double peak_at = 4.209687462275036e+002;
  static const double peak = peak_at * std::sin(std::sqrt(peak_at));
  const double n = static_cast<double>(z.size());
  double total = 0.0;
  for (double v : z) {
    const double y = 10.0 * v + peak_at;
    double g;
    if (std::abs(y) <= 500.0) {
      g = y * std::sin(std::sqrt(std::abs(y)));
    } else if (y > 500.0) {
      const double r = 500.0 - std::fmod(y, 500.0);
      g = r * std::sin(std::sqrt(std::abs(r))) - (y - 500.0) * (y - 500.0) / (10000.0 * n);
    } else {
      const double r = std::fmod(std::abs(y), 500.0) - 500.0;
      g = r * std::sin(std::sqrt(std::abs(r))) - (y + 500.0) * (y + 500.0) / (10000.0 * n);
    }
    total += peak - g;
  }
  return total;
}

inline double katsuura(std::span<const double> z) {
  const double n = static_cast<double>(z.size());
  const double expo = 10.0 / std::pow(n, 1.2);
  const double scale = 10.0 / (n * n);
  double prod = 1.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double y = 0.05 * z[i];
    double inner = 0.0;
    double p = 2.0;
    for (int j = 1; j <= 32; ++j, p *= 2.0) {
      const double t = p * y;
      inner += std::abs(t - std::round(t)) / p;
    }
    prod *= std::pow(1.0 + static_cast<double>(i + 1) * inner, expo);
  }
  return scale * prod - scale;
}

using RawFn = double (*)(std::span<const double>);

struct RawEntry {
  std::string_view name;
  RawFn fn;
  double lower;
  double upper;
};

inline constexpr std::array<RawEntry, 12> kRawFunctions{{
    {"sphere", sphere, -100.0, 100.0},
    {"ackley", ackley, -32.768, 32.768},
    {"forest", forest, -2.0 * std::numbers::pi, 2.0 * std::numbers::pi},
    {"schwefel_1_2", schwefel_1_2, -100.0, 100.0},
    {"schwefel_2_22", schwefel_2_22, -10.0, 10.0},
    {"rosenbrock", rosenbrock, -100.0, 100.0},
    {"griewank", griewank, 0.0, 600.0},
    {"bent_cigar", bent_cigar, -100.0, 100.0},
    {"discus", discus, -100.0, 100.0},
    {"weierstrass", weierstrass, -100.0, 100.0},
    {"schwefel", schwefel, -100.0, 100.0},
    {"katsuura", katsuura, -100.0, 100.0},
}};

inline const RawEntry& raw_entry(std::string_view name) {
  for (const auto& e : kRawFunctions)
    if (e.name == name) return e;
  throw LookupError("unknown benchmark function '" + std::string(name) + "'");
}

inline double eval_raw(std::string_view name, std::span<const double> x) {
  const auto& e = raw_entry(name);
  if (x.empty()) throw ParameterError("eval_raw: empty input");
  if ((name == "rosenbrock" || name == "bent_cigar" || name == "discus") && x.size() < 2)
    throw ParameterError("eval_raw: '" + std::string(name) + "' needs dimension >= 2");
  return e.fn(x);
}

struct TransformSpec {
  Vec shift;                       // empty: no shift
  std::optional<Matrix> rotation;  // empty: identity
  double bias = 0.0;
  bool noise = false;  // multiply the pre-bias value by 1 + 0.4 |N(0,1)|
};

/// x -> raw(M (x - o)) [* (1 + 0.4 |N(0,1)|)] + bias over the box [lo, hi]^D.
inline ObjectiveProblem make_transformed(std::string_view name, const TransformSpec& t,
                                         std::size_t dim, double lo, double hi,
                                         std::string problem_name = {}) {
  const auto& entry = raw_entry(name);
  if (dim == 0) throw ParameterError("make_transformed: dimension must be >= 1");
  if (!t.shift.empty()) {
    if (t.shift.size() != dim) throw ParameterError("make_transformed: shift has wrong length");
    for (double o : t.shift)
      if (!(o > lo && o < hi)) throw ParameterError("make_transformed: shift outside the domain");
  }
  if (t.rotation) {
    if (t.rotation->size() != dim) throw ParameterError("make_transformed: rotation has wrong size");
    if (t.rotation->orthogonality_residual() > 1e-10)
      throw ParameterError("make_transformed: rotation is not orthogonal");
  }

  ObjectiveProblem p;
  p.name = problem_name.empty() ? std::string(name) : std::move(problem_name);
  p.lower.assign(dim, lo);
  p.upper.assign(dim, hi);
  p.noisy = t.noise;
  p.known_min = t.bias;
  p.objective = [fn = entry.fn, t, pname = p.name](std::span<const double> x, RngStream* rng) {
    Vec z(x.begin(), x.end());
    if (!t.shift.empty())
      for (std::size_t d = 0; d < z.size(); ++d) z[d] -= t.shift[d];
    if (t.rotation) z = t.rotation->apply(z);
    double v = fn(z);
    if (t.noise) {
      if (rng == nullptr) throw ParameterError(pname + ": noisy objective needs a random stream");
      v *= 1.0 + 0.4 * std::abs(rng->normal());
    }
    return v + t.bias;
  };
  return p;
}

inline ObjectiveProblem make_transformed(std::string_view name, const TransformSpec& t,
                                         std::size_t dim) {
  const auto& e = raw_entry(name);
  return make_transformed(name, t, dim, e.lower, e.upper);
}

/// Seed of the locally generated shift vectors and rotation matrices.
inline constexpr std::uint64_t kSuiteSeed = 20180601;

struct CatalogEntry {
  std::string_view label;  // f1 ... f15
  std::string_view raw;
  bool shifted;
  bool rotated;
  bool noisy;
  double bias;
};

inline constexpr std::array<CatalogEntry, 12> kCatalog{{
    {"f1", "sphere", true, false, false, -450.0},
    {"f2", "ackley", false, false, false, 0.0},
    {"f3", "forest", false, false, false, 0.0},
    {"f4", "schwefel_1_2", true, false, true, -450.0},
    {"f5", "schwefel_2_22", false, false, false, 0.0},
    {"f6", "rosenbrock", true, false, false, 390.0},
    {"f7", "griewank", true, true, false, -180.0},
    {"f11", "bent_cigar", false, true, false, 100.0},
    {"f12", "discus", false, true, false, 200.0},
    {"f13", "weierstrass", true, true, false, 300.0},
    {"f14", "schwefel", true, true, false, 400.0},
    {"f15", "katsuura", true, true, false, 500.0},
}};

/// Catalog problem by label ("f2") or by raw function name ("ackley").
/// Shift is uniform over the central 80% of the domain; both the shift and
/// the rotation come from RngStream(kSuiteSeed).child(function number),
/// shift drawn first.
inline ObjectiveProblem catalog_problem(std::string_view key, std::size_t dim) {
  if (dim < 2) throw ParameterError("benchmark catalog: dimension must be >= 2");
  for (const auto& c : kCatalog) {
    if (c.label != key && c.raw != key) continue;
    const auto& raw = raw_entry(c.raw);
    const auto number = static_cast<std::uint64_t>(std::stoul(std::string(c.label.substr(1))));
    RngStream rng = RngStream(kSuiteSeed).child(number);
    TransformSpec t;
    t.bias = c.bias;
    t.noise = c.noisy;
    if (c.shifted) {
      t.shift.resize(dim);
      const double w = raw.upper - raw.lower;
      for (auto& o : t.shift) o = raw.lower + w * (0.1 + 0.8 * rng.uniform());
    }
    if (c.rotated) t.rotation = random_orthogonal_matrix(dim, rng);
    return make_transformed(c.raw, t, dim, raw.lower, raw.upper, std::string(c.label));
  }
  throw LookupError("unknown benchmark '" + std::string(key) + "'");
}

inline std::vector<ObjectiveProblem> suite_catalog(std::size_t dim) {
  std::vector<ObjectiveProblem> out;
  out.reserve(kCatalog.size());
  for (const auto& c : kCatalog) out.push_back(catalog_problem(c.label, dim));
  return out;
}

}  // namespace mscs::bench

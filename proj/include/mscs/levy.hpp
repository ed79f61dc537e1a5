#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <utility>
#include <vector>

#include "mscs/errors.hpp"
#include "mscs/rng.hpp"

namespace mscs {

struct LevyParams {
  double lambda = 1.5;  // power-law exponent, 1 < lambda < 2
  double alpha = 0.01;  // Levy step scale, fraction of the domain width
  double beta = 0.01;   // local-walk scale

  void validate() const {
    if (!(lambda > 1.0 && lambda < 2.0)) throw ParameterError("levy: lambda must lie in (1,2)");
    if (!(alpha > 0.0)) throw ParameterError("levy: alpha must be > 0");
    if (!(beta > 0.0)) throw ParameterError("levy: beta must be > 0");
  }
};

/// Standard deviation of the numerator Gaussian in Mantegna's algorithm.
inline double mantegna_sigma(double lambda) {
  if (!(lambda > 1.0 && lambda < 2.0)) throw ParameterError("mantegna: lambda must lie in (1,2)");
  const double num = std::tgamma(1.0 + lambda) * std::sin(std::numbers::pi * lambda / 2.0);
  const double den =
      std::tgamma((1.0 + lambda) / 2.0) * lambda * std::pow(2.0, (lambda - 1.0) / 2.0);
  return std::pow(num / den, 1.0 / lambda);
}

/// Step u / |v|^(1/lambda) with u ~ N(0, sigma_u^2), v ~ N(0, 1).
/// Draws u first, then v.
inline double mantegna_levy_step(double lambda, RngStream& rng) {
  const double sigma = mantegna_sigma(lambda);
  const double u = rng.normal() * sigma;
  const double v = rng.normal();
  return u / std::pow(std::abs(v), 1.0 / lambda);
}

/// D independent fair coin flips.
inline std::vector<int> random_binary_mask(std::size_t dim, RngStream& rng) {
  if (dim == 0) throw ParameterError("binary mask: dimension must be >= 1");
  std::vector<int> mask(dim);
  for (auto& bit : mask) bit = static_cast<int>(rng.next_u64() >> 63);
  return mask;
}

/// Ordered pair (j, k), j != k, uniform over the n(n-1) ordered pairs of [0, n).
/// Either index may coincide with the caller's own index.
inline std::pair<std::size_t, std::size_t> distinct_random_pair(std::size_t n, RngStream& rng) {
  if (n < 3) throw ParameterError("distinct pair: population must be >= 3");
  const auto j = static_cast<std::size_t>(rng.below(n));
  auto k = static_cast<std::size_t>(rng.below(n - 1));
  if (k >= j) ++k;
  return {j, k};
}

/// Dense row-major square matrix; just enough for benchmark rotations.
class Matrix {
 public:
  Matrix() = default;
  explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * n_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * n_ + c]; }

  std::vector<double> apply(const std::vector<double>& x) const {
    std::vector<double> y(n_, 0.0);
    for (std::size_t r = 0; r < n_; ++r) {
      double acc = 0.0;
      for (std::size_t c = 0; c < n_; ++c) acc += data_[r * n_ + c] * x[c];
      y[r] = acc;
    }
    return y;
  }

  /// max |(M^T M - I)_{ij}|
  double orthogonality_residual() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        double dot = 0.0;
        for (std::size_t k = 0; k < n_; ++k) dot += (*this)(k, i) * (*this)(k, j);
        worst = std::max(worst, std::abs(dot - (i == j ? 1.0 : 0.0)));
      }
    }
    return worst;
  }

 private:
  std::size_t n_ = 0;
  std::vector<double> data_;
};

/// Random orthogonal matrix: fill with standard Gaussians (row-major draw
/// order), then orthonormalize the columns by modified Gram-Schmidt. Each
/// column is projected twice, which keeps M^T M - I at rounding level up to
/// D = 50 and beyond.
inline Matrix random_orthogonal_matrix(std::size_t dim, RngStream& rng) {
  if (dim == 0) throw ParameterError("orthogonal matrix: dimension must be >= 1");
  Matrix m(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = rng.normal();

  for (std::size_t c = 0; c < dim; ++c) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t p = 0; p < c; ++p) {
        double dot = 0.0;
        for (std::size_t r = 0; r < dim; ++r) dot += m(r, p) * m(r, c);
        for (std::size_t r = 0; r < dim; ++r) m(r, c) -= dot * m(r, p);
      }
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < dim; ++r) norm += m(r, c) * m(r, c);
    norm = std::sqrt(norm);
    // A Gaussian column is linearly dependent with probability zero.
    if (norm == 0.0) throw ParameterError("orthogonal matrix: degenerate draw");
    for (std::size_t r = 0; r < dim; ++r) m(r, c) /= norm;
  }
  return m;
}

}  // namespace mscs

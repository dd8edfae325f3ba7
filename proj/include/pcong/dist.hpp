/*
 * Copyright 2026 The pcong Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PCONG_DIST_HPP
#define PCONG_DIST_HPP

#include <cmath>
#include <utility>
#include <variant>
#include <vector>

#include "pcong/random.hpp"

namespace pcong {

/// Shape weight of the PERT distribution when none is given.
inline constexpr double kDefaultPertLambda = 4.0;

/// Supports narrower than this collapse to a point mass.
inline constexpr double kDegenerateWidth = 1e-9;

struct Triangular {
  double min = 0.0;
  double mode = 0.0;
  double max = 0.0;
};

/// Beta(alpha, beta) scaled onto [min, max]; alpha and beta follow from the
/// mode and lambda.
struct Pert {
  double min = 0.0;
  double mode = 0.0;
  double max = 0.0;
  double lambda = kDefaultPertLambda;
  double alpha = 1.0;
  double beta = 1.0;
  double log_beta = 0.0;  // log B(alpha, beta)
};

struct Knot {
  double time = 0.0;
  double density = 0.0;
};

/// Normalized piecewise-linear density. `cdf[k]` is the mass left of knot k;
/// `raw` keeps the knots as given, before normalization.
struct PiecewiseLinear {
  std::vector<Knot> knots;
  std::vector<double> cdf;
  std::vector<Knot> raw;
};

struct PointMass {
  double at = 0.0;
};

/**
 * Bounded univariate distribution: triangular, PERT, piecewise-linear, or a
 * point mass (any of the first three with a support narrower than
 * kDegenerateWidth).
 *
 * Immutable once built. The factories validate their parameters and throw
 * ValidationError.
 */
class Distribution {
 public:
  enum class Kind { Triangular, Pert, PiecewiseLinear, Point };

  /// Point mass at 0.
  Distribution() : params_(PointMass{}) {}

  static Distribution triangular(double min, double mode, double max);
  static Distribution pert(double min, double mode, double max, double lambda = kDefaultPertLambda);
  /// Raw knot densities are rescaled so the trapezoidal integral is 1.
  static Distribution piecewise_linear(std::vector<Knot> knots);
  static Distribution point(double at);

  Kind kind() const noexcept { return static_cast<Kind>(params_.index()); }
  bool is_point_mass() const noexcept { return kind() == Kind::Point; }

  /// Zero outside the support. Throws ValidationError for a point mass.
  double density(double x) const;
  double cumulative(double x) const;
  double sample(Stream& rng) const;
  std::pair<double, double> support() const noexcept;
  double mean() const noexcept;
  double variance() const noexcept;

  /// Same law translated by `offset` seconds.
  Distribution shifted(double offset) const;

  const std::variant<Triangular, Pert, PiecewiseLinear, PointMass>& params() const noexcept {
    return params_;
  }

 private:
  template <typename T>
  explicit Distribution(T p) : params_(std::move(p)) {}

  std::variant<Triangular, Pert, PiecewiseLinear, PointMass> params_;
};

namespace detail {

double log_beta(double a, double b) noexcept;

inline double triangular_density(double a, double m, double b, double x) noexcept {
  if (x < a || x > b) return 0.0;
  const double w = b - a;
  if (x < m) return 2.0 * (x - a) / (w * (m - a));
  if (x == m) return 2.0 / w;
  return 2.0 * (b - x) / (w * (b - m));
}

inline double triangular_cdf(double a, double m, double b, double x) noexcept {
  if (x <= a) return 0.0;
  if (x >= b) return 1.0;
  const double w = b - a;
  if (x <= m) return (x - a) * (x - a) / (w * (m - a));
  return 1.0 - (b - x) * (b - x) / (w * (b - m));
}

/// Inverse cdf of the triangular law at u in [0, 1).
inline double triangular_quantile(double a, double m, double b, double u) noexcept {
  const double w = b - a;
  const double split = (m - a) / w;
  if (u < split) return a + std::sqrt(u * w * (m - a));
  return b - std::sqrt((1.0 - u) * w * (b - m));
}

struct BetaShape {
  double alpha;
  double beta;
};

inline BetaShape pert_shape(double a, double m, double b, double lambda) noexcept {
  const double w = b - a;
  return {1.0 + lambda * (m - a) / w, 1.0 + lambda * (b - m) / w};
}

/// Density of Beta(alpha, beta) at x, given log B(alpha, beta).
inline double beta_density(double alpha, double beta, double log_b, double x) noexcept {
  if (x < 0.0 || x > 1.0) return 0.0;
  if ((x == 0.0 && alpha > 1.0) || (x == 1.0 && beta > 1.0)) return 0.0;
  const double lx = alpha == 1.0 ? 0.0 : (alpha - 1.0) * std::log(x);
  const double l1x = beta == 1.0 ? 0.0 : (beta - 1.0) * std::log1p(-x);
  return std::exp(lx + l1x - log_b);
}

/// Beta(alpha, beta) variate from the ratio of two gamma variates.
double beta_sample(double alpha, double beta, Stream& rng);

}  // namespace detail

}  // namespace pcong

#endif  // PCONG_DIST_HPP

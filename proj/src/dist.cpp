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

#include "pcong/dist.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include <boost/math/special_functions/beta.hpp>

#include "pcong/error.hpp"

namespace pcong {

namespace detail {

double log_beta(double a, double b) noexcept {
  if (a == 1.0) return -std::log(b);
  if (b == 1.0) return -std::log(a);
  // lgamma_r avoids the global signgam write of lgamma.
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(a, &sign) + ::lgamma_r(b, &sign) - ::lgamma_r(a + b, &sign);
#else
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
#endif
}

namespace {

// Standard normal pairs by the polar method; both variates are used.
class NormalPair {
 public:
  double next(Stream& rng) noexcept {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * rng.uniform() - 1.0;
      v = 2.0 * rng.uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double k = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * k;
    have_spare_ = true;
    return u * k;
  }

 private:
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Marsaglia-Tsang gamma variate for shape >= 1.
double gamma_sample(double shape, NormalPair& normal, Stream& rng) noexcept {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal.next(rng);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform_open();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace

double beta_sample(double alpha, double beta, Stream& rng) {
  // Beta(1, b) and Beta(a, 1) have closed-form quantiles.
  if (alpha == 1.0) return 1.0 - std::pow(1.0 - rng.uniform(), 1.0 / beta);
  if (beta == 1.0) return std::pow(rng.uniform(), 1.0 / alpha);
  if (alpha < 1.0 || beta < 1.0) {
    std::gamma_distribution<double> ga(alpha, 1.0);
    std::gamma_distribution<double> gb(beta, 1.0);
    const double x = ga(rng);
    const double y = gb(rng);
    return x / (x + y);
  }
  NormalPair normal;
  const double x = gamma_sample(alpha, normal, rng);
  const double y = gamma_sample(beta, normal, rng);
  return x / (x + y);
}

}  // namespace detail

namespace {

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw ValidationError(std::string(name) + " must be finite");
  }
}

void check_three_point(double min, double mode, double max) {
  require_finite(min, "min");
  require_finite(mode, "mode");
  require_finite(max, "max");
  if (!(min <= mode && mode <= max)) {
    std::ostringstream os;
    os << "expected min <= mode <= max, got (" << min << ", " << mode << ", " << max << ")";
    throw ValidationError(os.str());
  }
}

// Exact moments of a linear density piece via Simpson's rule (exact for cubics).
void accumulate_moments(const Knot& k0, const Knot& k1, double& m1, double& m2) {
  const double h = k1.time - k0.time;
  const double tm = 0.5 * (k0.time + k1.time);
  const double dm = 0.5 * (k0.density + k1.density);
  m1 += h / 6.0 * (k0.time * k0.density + 4.0 * tm * dm + k1.time * k1.density);
  m2 += h / 6.0 *
        (k0.time * k0.time * k0.density + 4.0 * tm * tm * dm + k1.time * k1.time * k1.density);
}

}  // namespace

Distribution Distribution::triangular(double min, double mode, double max) {
  check_three_point(min, mode, max);
  if (max - min < kDegenerateWidth) return Distribution(PointMass{mode});
  return Distribution(Triangular{min, mode, max});
}

Distribution Distribution::pert(double min, double mode, double max, double lambda) {
  check_three_point(min, mode, max);
  require_finite(lambda, "lambda");
  if (!(lambda > 0.0)) throw ValidationError("PERT lambda must be > 0");
  if (max - min < kDegenerateWidth) return Distribution(PointMass{mode});
  const auto shape = detail::pert_shape(min, mode, max, lambda);
  return Distribution(
      Pert{min, mode, max, lambda, shape.alpha, shape.beta, detail::log_beta(shape.alpha, shape.beta)});
}

Distribution Distribution::piecewise_linear(std::vector<Knot> knots) {
  if (knots.size() < 2) throw ValidationError("piecewise-linear density needs at least 2 knots");
  for (std::size_t i = 0; i < knots.size(); ++i) {
    require_finite(knots[i].time, "knot time");
    require_finite(knots[i].density, "knot density");
    if (knots[i].density < 0.0) throw ValidationError("knot densities must be >= 0");
    if (i > 0 && !(knots[i].time > knots[i - 1].time)) {
      throw ValidationError("knot times must be strictly increasing");
    }
  }
  std::vector<Knot> raw = knots;
  double total = 0.0;
  for (std::size_t i = 1; i < knots.size(); ++i) {
    total += 0.5 * (knots[i].density + knots[i - 1].density) * (knots[i].time - knots[i - 1].time);
  }
  if (!(total > 0.0)) throw ValidationError("piecewise-linear density has zero mass");
  for (auto& k : knots) k.density /= total;

  std::vector<double> cdf(knots.size(), 0.0);
  for (std::size_t i = 1; i < knots.size(); ++i) {
    cdf[i] = cdf[i - 1] +
             0.5 * (knots[i].density + knots[i - 1].density) * (knots[i].time - knots[i - 1].time);
  }
  cdf.back() = 1.0;
  return Distribution(PiecewiseLinear{std::move(knots), std::move(cdf), std::move(raw)});
}

Distribution Distribution::point(double at) {
  require_finite(at, "point");
  return Distribution(PointMass{at});
}

double Distribution::density(double x) const {
  switch (kind()) {
    case Kind::Triangular: {
      const auto& p = std::get<Triangular>(params_);
      return detail::triangular_density(p.min, p.mode, p.max, x);
    }
    case Kind::Pert: {
      const auto& p = std::get<Pert>(params_);
      if (x < p.min || x > p.max) return 0.0;
      const double w = p.max - p.min;
      return detail::beta_density(p.alpha, p.beta, p.log_beta, (x - p.min) / w) / w;
    }
    case Kind::PiecewiseLinear: {
      const auto& k = std::get<PiecewiseLinear>(params_).knots;
      if (x < k.front().time || x > k.back().time) return 0.0;
      auto it = std::upper_bound(k.begin(), k.end(), x,
                                 [](double v, const Knot& kn) { return v < kn.time; });
      if (it == k.end()) return k.back().density;
      const auto& k1 = *it;
      const auto& k0 = *(it - 1);
      const double u = (x - k0.time) / (k1.time - k0.time);
      return k0.density + u * (k1.density - k0.density);
    }
    case Kind::Point:
      break;
  }
  throw ValidationError("density is undefined for a point mass");
}

double Distribution::cumulative(double x) const {
  switch (kind()) {
    case Kind::Triangular: {
      const auto& p = std::get<Triangular>(params_);
      return detail::triangular_cdf(p.min, p.mode, p.max, x);
    }
    case Kind::Pert: {
      const auto& p = std::get<Pert>(params_);
      if (x <= p.min) return 0.0;
      if (x >= p.max) return 1.0;
      return boost::math::ibeta(p.alpha, p.beta, (x - p.min) / (p.max - p.min));
    }
    case Kind::PiecewiseLinear: {
      const auto& pl = std::get<PiecewiseLinear>(params_);
      const auto& k = pl.knots;
      if (x <= k.front().time) return 0.0;
      if (x >= k.back().time) return 1.0;
      auto it = std::upper_bound(k.begin(), k.end(), x,
                                 [](double v, const Knot& kn) { return v < kn.time; });
      const std::size_t i = static_cast<std::size_t>(it - k.begin()) - 1;
      const double h = k[i + 1].time - k[i].time;
      const double dx = x - k[i].time;
      const double slope = (k[i + 1].density - k[i].density) / h;
      return std::min(1.0, pl.cdf[i] + dx * (k[i].density + 0.5 * slope * dx));
    }
    case Kind::Point:
      return x >= std::get<PointMass>(params_).at ? 1.0 : 0.0;
  }
  return 0.0;
}

double Distribution::sample(Stream& rng) const {
  switch (kind()) {
    case Kind::Triangular: {
      const auto& p = std::get<Triangular>(params_);
      return detail::triangular_quantile(p.min, p.mode, p.max, rng.uniform());
    }
    case Kind::Pert: {
      const auto& p = std::get<Pert>(params_);
      return p.min + (p.max - p.min) * detail::beta_sample(p.alpha, p.beta, rng);
    }
    case Kind::PiecewiseLinear: {
      const auto& pl = std::get<PiecewiseLinear>(params_);
      const auto& k = pl.knots;
      const double u = rng.uniform();
      auto it = std::upper_bound(pl.cdf.begin(), pl.cdf.end(), u);
      std::size_t i = static_cast<std::size_t>(it - pl.cdf.begin());
      i = std::clamp<std::size_t>(i, 1, k.size() - 1) - 1;
      const double h = k[i + 1].time - k[i].time;
      const double r = u - pl.cdf[i];
      const double d0 = k[i].density;
      const double slope = (k[i + 1].density - d0) / h;
      // Solve d0*x + slope/2*x^2 = r in the rationalized form, stable for either sign of slope.
      const double disc = std::max(0.0, d0 * d0 + 2.0 * slope * r);
      const double denom = d0 + std::sqrt(disc);
      const double x = denom > 0.0 ? 2.0 * r / denom : 0.0;
      return std::clamp(k[i].time + x, k[i].time, k[i + 1].time);
    }
    case Kind::Point:
      return std::get<PointMass>(params_).at;
  }
  return 0.0;
}

std::pair<double, double> Distribution::support() const noexcept {
  return std::visit(
      [](const auto& p) -> std::pair<double, double> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, PiecewiseLinear>) {
          return {p.knots.front().time, p.knots.back().time};
        } else if constexpr (std::is_same_v<T, PointMass>) {
          return {p.at, p.at};
        } else {
          return {p.min, p.max};
        }
      },
      params_);
}

double Distribution::mean() const noexcept {
  return std::visit(
      [](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Triangular>) {
          return (p.min + p.mode + p.max) / 3.0;
        } else if constexpr (std::is_same_v<T, Pert>) {
          return p.min + (p.max - p.min) * p.alpha / (p.alpha + p.beta);
        } else if constexpr (std::is_same_v<T, PiecewiseLinear>) {
          double m1 = 0.0, m2 = 0.0;
          for (std::size_t i = 1; i < p.knots.size(); ++i) {
            accumulate_moments(p.knots[i - 1], p.knots[i], m1, m2);
          }
          return m1;
        } else {
          return p.at;
        }
      },
      params_);
}

double Distribution::variance() const noexcept {
  return std::visit(
      [](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Triangular>) {
          const double a = p.min, c = p.mode, b = p.max;
          return (a * a + b * b + c * c - a * b - a * c - b * c) / 18.0;
        } else if constexpr (std::is_same_v<T, Pert>) {
          const double w = p.max - p.min;
          const double s = p.alpha + p.beta;
          return w * w * p.alpha * p.beta / (s * s * (s + 1.0));
        } else if constexpr (std::is_same_v<T, PiecewiseLinear>) {
          double m1 = 0.0, m2 = 0.0;
          for (std::size_t i = 1; i < p.knots.size(); ++i) {
            accumulate_moments(p.knots[i - 1], p.knots[i], m1, m2);
          }
          return std::max(0.0, m2 - m1 * m1);
        } else {
          return 0.0;
        }
      },
      params_);
}

Distribution Distribution::shifted(double offset) const {
  switch (kind()) {
    case Kind::Triangular: {
      const auto& p = std::get<Triangular>(params_);
      return Distribution(Triangular{p.min + offset, p.mode + offset, p.max + offset});
    }
    case Kind::Pert: {
      auto p = std::get<Pert>(params_);
      p.min += offset;
      p.mode += offset;
      p.max += offset;
      return Distribution(p);
    }
    case Kind::PiecewiseLinear: {
      auto p = std::get<PiecewiseLinear>(params_);
      for (auto& k : p.knots) k.time += offset;
      for (auto& k : p.raw) k.time += offset;
      return Distribution(std::move(p));
    }
    case Kind::Point:
      break;
  }
  return Distribution(PointMass{std::get<PointMass>(params_).at + offset});
}

}  // namespace pcong

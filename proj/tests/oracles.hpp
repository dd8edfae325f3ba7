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

// Independent reference computations shared by the test suites. Nothing here
// calls into the library.

#ifndef PCONG_TESTS_ORACLES_HPP
#define PCONG_TESTS_ORACLES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

/// Composite Simpson rule with `panels` (rounded up to even) sub-intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b,
                      std::size_t panels) {
  if (panels % 2 == 1) ++panels;
  const double h = (b - a) / static_cast<double>(panels);
  double sum = f(a) + f(b);
  for (std::size_t k = 1; k < panels; ++k) {
    sum += (k % 2 == 1 ? 4.0 : 2.0) * f(a + h * static_cast<double>(k));
  }
  return sum * h / 3.0;
}

/// Simpson over consecutive breakpoints, so kinks sit on panel edges. Each
/// piece is mapped through x = lo + w (1 - cos(pi v)) / 2, which clusters
/// nodes at the piece ends and tames power-law behaviour there.
inline double simpson_split(const std::function<double(double)>& f, std::vector<double> cuts,
                            std::size_t panels_per_piece) {
  std::sort(cuts.begin(), cuts.end());
  const double pi = std::acos(-1.0);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], w = cuts[i + 1] - cuts[i];
    if (!(w > 0)) continue;
    auto g = [&](double v) {
      return f(lo + 0.5 * w * (1.0 - std::cos(pi * v))) * 0.5 * w * pi * std::sin(pi * v);
    };
    total += simpson(g, 0.0, 1.0, panels_per_piece);
  }
  return total;
}

/// Kolmogorov-Smirnov distance between a sample and a continuous cdf.
inline double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

/// 99% critical value of the one-sample KS test for large n.
inline double ks_critical_99(std::size_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

/// Asymptotic KS critical value at level `alpha`; pass alpha / m when
/// running m tests together.
inline double ks_critical(std::size_t n, double alpha) {
  return std::sqrt(-0.5 * std::log(0.5 * alpha)) / std::sqrt(static_cast<double>(n));
}

struct TwoPass {
  double mean = 0.0;
  double variance = 0.0;
  double sem = 0.0;
};

inline TwoPass two_pass(const std::vector<double>& xs) {
  TwoPass r;
  const double n = static_cast<double>(xs.size());
  r.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  double ss = 0.0;
  for (double x : xs) ss += (x - r.mean) * (x - r.mean);
  r.variance = xs.size() > 1 ? ss / (n - 1.0) : 0.0;
  r.sem = std::sqrt(r.variance / n);
  return r;
}

/// Least-squares slope of y on x.
inline double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

inline double binomial_pmf(int n, int k, double p) {
  const double log_choose = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  return std::exp(log_choose + k * std::log(p) + (n - k) * std::log1p(-p));
}

/// Poisson-Binomial pmf by enumerating all 2^N outcomes.
inline std::vector<double> pb_enumerate(const std::vector<double>& probs) {
  const std::size_t n = probs.size();
  std::vector<double> pmf(n + 1, 0.0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double w = 1.0;
    int count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) {
        w *= probs[i];
        ++count;
      } else {
        w *= 1.0 - probs[i];
      }
    }
    pmf[static_cast<std::size_t>(count)] += w;
  }
  return pmf;
}

/// Overlap cost by brute force: occupancy sampled on a fine midpoint grid.
inline double riemann_overlap_cost(const std::vector<std::pair<double, double>>& intervals,
                                   int capacity, double dt) {
  double lo = intervals.front().first, hi = intervals.front().second;
  for (const auto& [a, b] : intervals) {
    lo = std::min(lo, a);
    hi = std::max(hi, b);
  }
  double total = 0.0;
  for (double t = lo + 0.5 * dt; t < hi; t += dt) {
    int count = 0;
    for (const auto& [a, b] : intervals) count += (a <= t && t < b) ? 1 : 0;
    if (count > capacity) total += (count - capacity) * (count - capacity) * dt;
  }
  return total;
}

/// Hand-rolled generator: random probability vector with some exact 0s and 1s.
inline std::vector<double> random_probs(std::mt19937_64& gen, std::size_t n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> p(n);
  for (auto& x : p) {
    const double r = u(gen);
    x = r < 0.05 ? 0.0 : (r > 0.95 ? 1.0 : u(gen));
  }
  return p;
}

}  // namespace oracle

#endif  // PCONG_TESTS_ORACLES_HPP

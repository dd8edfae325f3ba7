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

#include "pcong/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <vector>

#include "pcong/error.hpp"

namespace pcong {

namespace {

constexpr int kHigh = 8;  // 9-point rule
constexpr int kLow = 4;   // embedded 5-point rule on every other node

// Clenshaw-Curtis weights on [-1, 1] for nodes x_k = cos(k*pi/n), k = 0..n.
template <int N>
std::array<double, N + 1> cc_weights() {
  std::array<double, N + 1> w{};
  for (int k = 0; k <= N; ++k) {
    double s = 0.0;
    for (int j = 1; j <= N / 2; ++j) {
      const double b = (2 * j == N) ? 1.0 : 2.0;
      s += b / (4.0 * j * j - 1.0) * std::cos(2.0 * j * k * std::numbers::pi / N);
    }
    const double c = (k == 0 || k == N) ? 1.0 : 2.0;
    w[k] = c / N * (1.0 - s);
  }
  return w;
}

struct Rule {
  std::array<double, kHigh + 1> nodes{};
  std::array<double, kHigh + 1> high{};
  std::array<double, kLow + 1> low{};

  Rule() {
    for (int k = 0; k <= kHigh; ++k) nodes[k] = std::cos(k * std::numbers::pi / kHigh);
    high = cc_weights<kHigh>();
    low = cc_weights<kLow>();
  }
};

const Rule& rule() {
  static const Rule r;
  return r;
}

struct Piece {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

Piece apply_rule(FunctionRef f, double a, double b, std::size_t& evals) {
  const Rule& r = rule();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  std::array<double, kHigh + 1> fx{};
  for (int k = 0; k <= kHigh; ++k) {
    // Endpoints mirrored exactly; nodes stay inside [a, b].
    double x;
    if (k == 0) {
      x = b;
    } else if (k == kHigh) {
      x = a;
    } else {
      x = mid + half * r.nodes[k];
    }
    fx[k] = f(x);
  }
  evals += kHigh + 1;
  double hi = 0.0;
  for (int k = 0; k <= kHigh; ++k) hi += r.high[k] * fx[k];
  double lo = 0.0;
  for (int k = 0; k <= kLow; ++k) lo += r.low[k] * fx[2 * k];
  hi *= half;
  lo *= half;
  if (!std::isfinite(hi)) throw ValidationError("integrand is not finite on the interval");
  return {a, b, hi, std::abs(hi - lo)};
}

void check_spec(const QuadratureSpec& spec, double a, double b) {
  if (!(a <= b)) throw ValidationError("integration bounds must satisfy a <= b");
  if (!(spec.rel_tol > 0.0 || spec.abs_tol > 0.0)) {
    throw ValidationError("quadrature needs rel_tol > 0 or abs_tol > 0");
  }
  if (spec.max_subdivisions < 1) throw ValidationError("max_subdivisions must be >= 1");
}

}  // namespace

QuadratureResult try_integrate(FunctionRef f, double a, double b, const QuadratureSpec& spec) {
  check_spec(spec, a, b);
  QuadratureResult out;
  if (a == b) return out;

  const double abs_tol = spec.absolute_tolerance(a, b);
  auto tolerance = [&](double v) { return std::max(abs_tol, spec.rel_tol * std::abs(v)); };

  Piece first = apply_rule(f, a, b, out.evaluations);
  if (first.error <= tolerance(first.value)) {
    out.value = first.value;
    out.error_estimate = first.error;
    return out;
  }

  std::priority_queue<Piece> heap;
  heap.push(first);
  double value = first.value;
  double error = first.error;
  const double min_width = 64.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b));
  while (error > tolerance(value) && static_cast<int>(heap.size()) < spec.max_subdivisions) {
    Piece worst = heap.top();
    if (worst.b - worst.a <= min_width) break;
    heap.pop();
    const double m = 0.5 * (worst.a + worst.b);
    Piece left = apply_rule(f, worst.a, m, out.evaluations);
    Piece right = apply_rule(f, m, worst.b, out.evaluations);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum to shed the drift of the incremental updates.
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  out.value = value;
  out.error_estimate = error;
  out.converged = error <= tolerance(value);
  return out;
}

QuadratureResult integrate(FunctionRef f, double a, double b, const QuadratureSpec& spec) {
  QuadratureResult r = try_integrate(f, a, b, spec);
  if (!r.converged) throw NonConvergenceError(r.value, r.error_estimate);
  return r;
}

QuadratureResult try_integrate_piecewise(FunctionRef f, double a, double b,
                                         std::span<const double> breakpoints,
                                         const QuadratureSpec& spec) {
  check_spec(spec, a, b);
  QuadratureResult out;
  double left = a;
  auto step = [&](double right) {
    if (right <= left) return;
    // One-sided limits at the piece ends.
    const double nudge = 4.0 * std::numeric_limits<double>::epsilon() *
                         std::max({std::abs(left), std::abs(right), right - left});
    const double lo = left + nudge, hi = right - nudge;
    auto inner = [&](double x) { return hi > lo ? f(std::clamp(x, lo, hi)) : f(0.5 * (left + right)); };
    QuadratureResult r = try_integrate(inner, left, right, spec);
    out.value += r.value;
    out.error_estimate += r.error_estimate;
    out.evaluations += r.evaluations;
    out.converged = out.converged && r.converged;
    left = right;
  };
  for (double x : breakpoints) {
    if (x > left && x < b) step(x);
  }
  step(b);
  return out;
}

QuadratureResult integrate_piecewise(FunctionRef f, double a, double b,
                                     std::span<const double> breakpoints,
                                     const QuadratureSpec& spec) {
  QuadratureResult r = try_integrate_piecewise(f, a, b, breakpoints, spec);
  if (!r.converged) throw NonConvergenceError(r.value, r.error_estimate);
  return r;
}

}  // namespace pcong

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

#ifndef PCONG_QUAD_HPP
#define PCONG_QUAD_HPP

#include <cstddef>
#include <memory>
#include <span>
#include <type_traits>
#include <utility>

namespace pcong {

/// Non-owning reference to a callable `double(double)`. The referenced
/// callable must outlive the FunctionRef.
class FunctionRef {
 public:
  template <typename F,
            typename = std::enable_if_t<!std::is_same_v<std::decay_t<F>, FunctionRef>>>
  FunctionRef(F&& f) noexcept  // NOLINT(google-explicit-constructor)
      : obj_(const_cast<void*>(static_cast<const void*>(std::addressof(f)))),
        call_([](void* o, double x) -> double {
          return (*static_cast<std::remove_reference_t<F>*>(o))(x);
        }) {}

  double operator()(double x) const { return call_(obj_, x); }

 private:
  void* obj_;
  double (*call_)(void*, double);
};

struct QuadratureSpec {
  double rel_tol = 1e-6;
  /// Absolute tolerance. Multiplied by (b - a) when `abs_tol_scaled` is set.
  double abs_tol = 1e-9;
  bool abs_tol_scaled = true;
  int max_subdivisions = 50;

  double absolute_tolerance(double a, double b) const noexcept {
    return abs_tol_scaled ? abs_tol * (b - a) : abs_tol;
  }
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

/**
 * Globally adaptive Clenshaw-Curtis quadrature of f over [a, b].
 *
 * Each interval is integrated with the 9-point Clenshaw-Curtis rule; the
 * embedded 5-point rule (same nodes) gives the error estimate. The interval
 * with the largest error is bisected until the summed error is below
 * max(abs_tol, rel_tol * |value|) or max_subdivisions intervals exist.
 *
 * Throws NonConvergenceError (carrying the best estimate) on failure, and
 * ValidationError when b < a or the spec is invalid.
 */
QuadratureResult integrate(FunctionRef f, double a, double b, const QuadratureSpec& spec = {});

/// Same as integrate() but reports non-convergence through `converged`.
QuadratureResult try_integrate(FunctionRef f, double a, double b, const QuadratureSpec& spec = {});

/**
 * Sum of integrate() over the sub-intervals of [a, b] delimited by
 * `breakpoints` (sorted; entries outside (a, b) and duplicates are ignored).
 * Error estimates are summed. Non-convergence on any piece throws with the
 * summed best estimate.
 */
QuadratureResult integrate_piecewise(FunctionRef f, double a, double b,
                                     std::span<const double> breakpoints,
                                     const QuadratureSpec& spec = {});

QuadratureResult try_integrate_piecewise(FunctionRef f, double a, double b,
                                         std::span<const double> breakpoints,
                                         const QuadratureSpec& spec = {});

}  // namespace pcong

#endif  // PCONG_QUAD_HPP

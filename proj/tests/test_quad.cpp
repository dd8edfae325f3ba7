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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "pcong/dist.hpp"
#include "pcong/error.hpp"
#include "pcong/quad.hpp"

using pcong::QuadratureSpec;
using std::numbers::pi;

TEST_CASE("polynomials and smooth functions") {
  const auto r = pcong::integrate([](double x) { return x * x; }, 0, 1);
  CHECK(std::abs(r.value - 1.0 / 3.0) < 1e-10);
  CHECK(r.converged);
  CHECK(std::abs(pcong::integrate([](double x) { return std::sin(x); }, 0, pi).value - 2.0) < 1e-8);
  const auto tri = pcong::Distribution::triangular(0, 5, 10);
  const double kink[] = {5.0};
  CHECK(std::abs(pcong::integrate_piecewise([&](double x) { return tri.density(x); }, 0, 10, kink).value -
                 1.0) < 1e-8);
  CHECK(std::abs(pcong::integrate([&](double x) { return tri.density(x); }, 0, 10).value - 1.0) <
        1e-8);
}

TEST_CASE("empty and reversed-free intervals") {
  CHECK(pcong::integrate([](double) { return 1.0; }, 3, 3).value == 0.0);
  CHECK_THROWS_AS(pcong::integrate([](double) { return 1.0; }, 3, 2), pcong::ValidationError);
}

TEST_CASE("breakpoints handle jumps and kinks") {
  const double jump[] = {0.3};
  const auto step = pcong::integrate_piecewise([](double x) { return x < 0.3 ? 1.0 : 2.0; }, 0, 1, jump);
  CHECK(std::abs(step.value - 1.7) < 1e-12);
  const double zero[] = {0.0};
  const auto abs = pcong::integrate_piecewise([](double x) { return std::abs(x); }, -1, 1, zero);
  CHECK(std::abs(abs.value - 1.0) < 1e-10);
}

TEST_CASE("breakpoints outside the interval are ignored") {
  const double cuts[] = {-4.0, 0.5, 2.0};
  const auto r = pcong::integrate_piecewise([](double x) { return x; }, 0, 1, cuts);
  CHECK(std::abs(r.value - 0.5) < 1e-14);
}

TEST_CASE("non-convergence carries the best estimate") {
  QuadratureSpec spec;
  spec.max_subdivisions = 1;
  spec.rel_tol = 1e-14;
  spec.abs_tol = 0;
  auto f = [](double x) { return std::sin(200.0 * x) + std::sqrt(x); };
  try {
    (void)pcong::integrate(f, 0, 10, spec);
    FAIL("expected NonConvergenceError");
  } catch (const pcong::NonConvergenceError& e) {
    CHECK(e.code() == pcong::ErrorCode::NonConvergence);
    CHECK(std::isfinite(e.value()));
    CHECK(e.error_estimate() > 0);
  }
  const auto r = pcong::try_integrate(f, 0, 10, spec);
  CHECK_FALSE(r.converged);
}

TEST_CASE("property: linearity") {
  std::mt19937_64 g(1);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 30; ++i) {
    const double alpha = u(g), beta = u(g), k = 1 + std::abs(u(g)) * 3;
    auto f = [k](double x) { return std::exp(-k * x) * std::cos(x); };
    auto h = [k](double x) { return std::sqrt(x + k); };
    const auto rf = pcong::integrate(f, 0, 5), rh = pcong::integrate(h, 0, 5);
    const auto rc = pcong::integrate([&](double x) { return alpha * f(x) + beta * h(x); }, 0, 5);
    const double bound = std::abs(alpha) * rf.error_estimate + std::abs(beta) * rh.error_estimate +
                         rc.error_estimate + 1e-12;
    CHECK(std::abs(rc.value - (alpha * rf.value + beta * rh.value)) <= bound);
  }
}

TEST_CASE("property: interval additivity") {
  std::mt19937_64 g(2);
  std::uniform_real_distribution<double> u(0, 1);
  auto f = [](double x) { return 1.0 / (1.0 + x * x) + std::sin(3 * x); };
  for (int i = 0; i < 30; ++i) {
    const double a = -5 + 5 * u(g), b = a + 10 * u(g), c = a + (b - a) * u(g);
    const auto whole = pcong::integrate(f, a, b);
    const auto left = pcong::integrate(f, a, c), right = pcong::integrate(f, c, b);
    CHECK(std::abs(whole.value - left.value - right.value) <=
          whole.error_estimate + left.error_estimate + right.error_estimate + 1e-12);
  }
}

TEST_CASE("property: error estimates bound the true error") {
  struct Case {
    double (*f)(double);
    double a, b, exact;
  };
  const Case cases[] = {
      {[](double x) { return x * x; }, 0, 1, 1.0 / 3},
      {[](double x) { return std::sin(x); }, 0, pi, 2.0},
      {[](double x) { return std::exp(x); }, 0, 1, std::exp(1.0) - 1},
      {[](double x) { return 1 / (1 + x * x); }, 0, 1, pi / 4},
      {[](double x) { return std::sqrt(x); }, 0, 1, 2.0 / 3},
      {[](double x) { return std::log1p(x); }, 0, 1, 2 * std::log(2.0) - 1},
      {[](double x) { return std::cos(10 * x); }, 0, 1, std::sin(10.0) / 10},
      {[](double x) { return std::pow(x, 5); }, -1, 2, 10.5},
      {[](double x) { return std::exp(-x * x); }, -3, 3, std::sqrt(pi) * std::erf(3.0)},
      {[](double x) { return 1 / (x + 0.1); }, 0, 1, std::log(11.0)},
      {[](double x) { return std::abs(x - 0.3); }, 0, 1, 0.29},
      {[](double x) { return x * std::exp(-x); }, 0, 10, 1 - 11 * std::exp(-10.0)},
      {[](double x) { return std::sin(x) * std::sin(x); }, 0, 2 * pi, pi},
      {[](double x) { return 1 / std::sqrt(1 + x); }, 0, 3, 2.0},
      {[](double x) { return std::atan(x); }, 0, 1, pi / 4 - std::log(2.0) / 2},
      {[](double x) { return std::cosh(x); }, -1, 1, 2 * std::sinh(1.0)},
      {[](double x) { return std::pow(x, 1.5); }, 0, 1, 0.4},
      {[](double x) { return std::exp(x) * std::cos(x); }, 0, pi / 2, (std::exp(pi / 2) - 1) / 2},
      {[](double x) { return 1 / (1 + 25 * x * x); }, -1, 1, 0.4 * std::atan(5.0)},
      {[](double x) { return std::pow(x, 0.25); }, 0, 1, 0.8},
  };
  int bounded = 0;
  for (const auto& c : cases) {
    const auto r = pcong::integrate(c.f, c.a, c.b);
    const double actual = std::abs(r.value - c.exact);
    CHECK(actual <= std::max(1e-9 * (c.b - c.a), 1e-6 * std::abs(c.exact)) * 10);
    if (actual <= r.error_estimate + 4 * std::numeric_limits<double>::epsilon() * std::abs(c.exact)) {
      ++bounded;
    }
  }
  CHECK(bounded >= 19);
}

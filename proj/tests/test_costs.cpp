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
#include <random>
#include <vector>

#include "oracles.hpp"
#include "pcong/costs.hpp"
#include "pcong/mc.hpp"
#include "scenarios.hpp"

using namespace pcong;

namespace {

MarginalCurve uniform_curve(double lo, double hi) {
  const auto n = static_cast<std::size_t>(hi - lo) + 1;
  return MarginalCurve::on_grid(lo, 1.0, 0, std::vector<double>(n, 1.0));
}

// Hand-rolled generator of deterministic single-sector scenarios.
Scenario random_deterministic(std::mt19937_64& g, std::size_t& capacity) {
  std::uniform_real_distribution<double> u(0, 1);
  capacity = static_cast<std::size_t>(g() % 3);
  auto sc = fixtures::empty_scenario(1, capacity, 20000, fixtures::deterministic_intent());
  const int n = 1 + static_cast<int>(g() % 8);
  for (int i = 0; i < n; ++i) {
    sc.flights.push_back(fixtures::flight_through("F" + std::to_string(i), {0}, std::floor(3000 * u(g)),
                                                  std::floor(100 + 1500 * u(g))));
  }
  return sc;
}

}  // namespace

TEST_CASE("delay cost of simple final marginals") {
  CHECK(expected_delay_cost(uniform_curve(0, 100), 100).value == 0.0);
  CHECK(expected_delay_cost(uniform_curve(0, 100), 500).value == 0.0);
  const auto r = expected_delay_cost(uniform_curve(1000, 1060), 1000);
  CHECK(r.value == doctest::Approx(1200).epsilon(1e-3));
  CHECK(expected_delay_cost(MarginalCurve::atom(1030), 1000).value == 900.0);
  CHECK(expected_delay_cost(MarginalCurve::atom(990), 1000).value == 0.0);
}

TEST_CASE("delay cost of a half-late uniform against its moment") {
  // Uniform on [940, 1060], arrival 1000: E[(T-A)_+^2] = 60^3 / (3 * 120).
  const auto r = expected_delay_cost(uniform_curve(940, 1060), 1000);
  CHECK(r.value == doctest::Approx(60.0 * 60 * 60 / 360).epsilon(1e-6));
}

TEST_CASE("two deterministic flights overlapping for five minutes") {
  auto sc = fixtures::empty_scenario(1, 1, 3000, fixtures::deterministic_intent());
  sc.flights.push_back(fixtures::flight_through("A", {0}, 0, 600));
  sc.flights.push_back(fixtures::flight_through("B", {0}, 300, 600));
  const QuadratureModel model(sc, nominal_decision(sc), 1.0);
  const auto report = total_congestion_cost(model);
  CHECK(std::abs(report.value - 300.0) < 1e-6);
  CHECK(report.breakdown.size() == 1);
  const auto delay = total_delay_cost(model);
  CHECK(delay.value == 0.0);
}

TEST_CASE("capacity at least the number of flights gives zero") {
  auto sc = fixtures::empty_scenario(1, 2, 3000, fixtures::triangular_intent());
  sc.flights.push_back(fixtures::flight_through("A", {0}, 0, 600, Distribution::triangular(-60, 0, 60)));
  sc.flights.push_back(fixtures::flight_through("B", {0}, 300, 600, Distribution::triangular(-60, 0, 60)));
  const QuadratureModel model(sc, nominal_decision(sc), 1.0);
  CHECK(total_congestion_cost(model).value == 0.0);
}

TEST_CASE("congestion window clips the integral") {
  auto sc = fixtures::empty_scenario(1, 1, 3000, fixtures::deterministic_intent());
  sc.flights.push_back(fixtures::flight_through("A", {0}, 0, 600));
  sc.flights.push_back(fixtures::flight_through("B", {0}, 300, 600));
  sc.airspace.congestion_horizon = std::pair<double, double>{400, 3000};
  const QuadratureModel model(sc, nominal_decision(sc), 1.0);
  CHECK(std::abs(total_congestion_cost(model).value - 200.0) < 1e-6);
}

TEST_CASE("two-flight stochastic sector against a fine Riemann sum") {
  auto sc = fixtures::empty_scenario(1, 1, 5000, fixtures::triangular_intent());
  sc.flights.push_back(fixtures::flight_through("A", {0}, 1000, 600, Distribution::triangular(-200, 0, 200)));
  sc.flights.push_back(fixtures::flight_through("B", {0}, 1400, 600, Distribution::triangular(-150, 50, 150)));
  const QuadratureModel model(sc, nominal_decision(sc), 1.0);
  const auto quad = total_congestion_cost(model).value;
  const auto a = model.marginals(0), b = model.marginals(1);
  // With capacity 1 the integrand reduces to P(both present).
  double riemann = 0.0;
  const double dt = 0.01;
  for (double t = 700 + dt / 2; t < 2300; t += dt) {
    riemann += presence_probability(a[0], a[1], t) * presence_probability(b[0], b[1], t) * dt;
  }
  CHECK(quad > 0);
  CHECK(std::abs(quad - riemann) < 1e-3 * riemann);
}

TEST_CASE("property: deterministic reduction to the sweep cost") {
  std::mt19937_64 g(31);
  for (int i = 0; i < 40; ++i) {
    std::size_t capacity = 0;
    const auto sc = random_deterministic(g, capacity);
    const auto decision = nominal_decision(sc);
    const QuadratureModel model(sc, decision, 1.0);
    std::vector<Interval> iv;
    for (const auto& t : decision.flights) iv.push_back({t[0], t[1]});
    CHECK(std::abs(total_congestion_cost(model).value - congestion_cost_sweep(iv, capacity)) < 1e-6);
  }
}

TEST_CASE("property: costs are nonnegative and breakdowns add up") {
  GridParams p;
  p.rows = p.cols = 3;
  p.n_flights = 12;
  p.horizon = 4000;
  p.base_capacity = 2;
  const auto sc = gen_grid(p);
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    Stream rng(seed);
    const QuadratureModel model(sc, sample_decision_vector(sc, rng), 5.0, propagation_quadrature(), 2);
    for (const auto& report : {total_delay_cost(model), total_congestion_cost(model, {}, 2)}) {
      CHECK(report.value >= 0.0);
      double sum = 0.0;
      for (double b : report.breakdown) {
        CHECK(b >= 0.0);
        sum += b;
      }
      CHECK(std::abs(sum - report.value) <= report.error_estimate + 1e-9 * report.value);
    }
  }
}

TEST_CASE("delay cost vanishes when every flight lands early") {
  auto sc = fixtures::empty_scenario(2, 1, 6000, fixtures::triangular_intent());
  auto f = fixtures::flight_through("A", {0, 1}, 0, 600, Distribution::triangular(-60, 0, 60));
  f.scheduled_arrival = 1200 + 60 + 180 + 1;
  sc.flights.push_back(f);
  const QuadratureModel model(sc, nominal_decision(sc), 1.0);
  CHECK(total_delay_cost(model).value == 0.0);
}

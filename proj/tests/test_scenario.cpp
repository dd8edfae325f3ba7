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
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "pcong/error.hpp"
#include "pcong/scenario.hpp"

using namespace pcong;

namespace {

const char* kMinimal = R"({
  "horizon": [0, 5000],
  "sectors": [{"id": "A", "capacity": 1}],
  "intent": {"family": "pert", "support_s": 120},
  "flights": [{
    "id": "X1",
    "points": ["p", "q"],
    "durations": [600],
    "crossings": [{"sector": "A", "entry_idx": 0, "exit_idx": 1}],
    "scheduled_arrival": 1500,
    "takeoff_window": [800, 1000],
    "inbound": {"kind": "triangular", "min": -60, "mode": 0, "max": 60}
  }]
})";

std::string schema_path(const std::string& json) {
  try {
    (void)scenario_from_json(json);
  } catch (const SchemaError& e) {
    return e.path();
  }
  return "<accepted>";
}

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("pcong_test_" + name);
}

}  // namespace

TEST_CASE("minimal scenario loads with defaults") {
  const auto sc = scenario_from_json(kMinimal);
  CHECK(sc.flights.size() == 1);
  CHECK(sc.intent.family == IntentFamily::Pert);
  CHECK(sc.intent.lambda == 4.0);
  CHECK(sc.airspace.sectors[0].capacity == 1);
  CHECK(sc.flights[0].inbound.kind() == Distribution::Kind::Triangular);
  CHECK_FALSE(sc.airspace.congestion_horizon.has_value());
}

TEST_CASE("save-load-save is byte-stable") {
  for (const auto& sc : {scenario_from_json(kMinimal), gen_corridor(), gen_grid()}) {
    const std::string first = scenario_to_json(sc);
    const std::string second = scenario_to_json(scenario_from_json(first));
    CHECK(first == second);
  }
  const auto path = temp_file("roundtrip.json");
  save_scenario(gen_corridor(), path.string());
  const auto loaded = load_scenario(path.string());
  CHECK(scenario_to_json(loaded) == scenario_to_json(gen_corridor()));
  std::filesystem::remove(path);
}

TEST_CASE("corridor generator output loads back equal") {
  CorridorParams p;
  p.intent.family = IntentFamily::Pert;
  const auto sc = gen_corridor(p);
  const auto back = scenario_from_json(scenario_to_json(sc));
  CHECK(back.intent.family == IntentFamily::Pert);
  CHECK(back.flights[0].points == sc.flights[0].points);
  CHECK(back.flights[0].durations == sc.flights[0].durations);
  CHECK(back.flights[0].inbound.cumulative(450) == sc.flights[0].inbound.cumulative(450));
  CHECK(back.airspace.horizon == sc.airspace.horizon);
}

TEST_CASE("schema errors name the offending field") {
  CHECK(schema_path(replace(kMinimal, R"("capacity": 1)", R"("capacity": -1)")) == "sectors[0].capacity");
  CHECK(schema_path(replace(kMinimal, R"("capacity": 1)", R"("capacity": 1.5)")) == "sectors[0].capacity");
  CHECK(schema_path(replace(kMinimal, R"("capacity": 1)", R"("capacity": "two")")) == "sectors[0].capacity");
  CHECK(schema_path(replace(kMinimal, R"("horizon": [0, 5000],)", R"("horizon": [0, 5000], "extra": 1,)")) ==
        "extra");
  CHECK(schema_path(replace(kMinimal, R"("sector": "A")", R"("sector": "B")")) == "flights[0].crossings[0].sector");
  CHECK(schema_path(replace(kMinimal, R"("durations": [600])", R"("durations": [-600])")) ==
        "flights[0].durations[0]");
  CHECK(schema_path(replace(kMinimal, R"("kind": "triangular")", R"("kind": "gauss")")) ==
        "flights[0].inbound.kind");
  CHECK(schema_path(replace(kMinimal, R"("family": "pert")", R"("family": "normal")")) == "intent.family");
  CHECK(schema_path(replace(kMinimal, R"("id": "X1",)", "")) == "flights[0].id");
  CHECK(schema_path("{not json") == "$");
}

TEST_CASE("optional congestion horizon round-trips") {
  const auto text = replace(kMinimal, R"("horizon": [0, 5000],)", R"("horizon": [0, 5000], "congestion_horizon": [100, 4000],)");
  const auto sc = scenario_from_json(text);
  REQUIRE(sc.airspace.congestion_horizon.has_value());
  CHECK(sc.airspace.congestion_window() == std::pair<double, double>{100, 4000});
  CHECK(scenario_to_json(scenario_from_json(scenario_to_json(sc))) == scenario_to_json(sc));
}

TEST_CASE("missing files raise an I/O error") {
  CHECK_THROWS_AS(load_scenario("/nonexistent/pcong.json"), IoError);
}

TEST_CASE("decision vectors") {
  const auto sc = scenario_from_json(kMinimal);
  const auto d = decision_from_json(sc, R"({"flights":[{"id":"X1","targets":[900,1500]}]})");
  CHECK(d.flights[0] == std::vector<double>{900, 1500});
  CHECK(decision_from_json(sc, decision_to_json(sc, d)).flights == d.flights);
  try {
    (void)decision_from_json(sc, R"({"flights":[{"id":"X1","targets":[900,1700]}]})");
    FAIL("infeasible targets accepted");
  } catch (const SchemaError& e) {
    CHECK(e.path() == "flights[0].targets");
  }
  CHECK_THROWS_AS(decision_from_json(sc, R"({"flights":[]})"), SchemaError);
}

TEST_CASE("corridor generator") {
  const auto sc = gen_corridor();
  REQUIRE(sc.flights.size() == 1);
  const auto& f = sc.flights[0];
  CHECK(f.points.size() == 12);
  CHECK(f.crossings.size() == 11);
  CHECK(sc.airspace.sectors.size() == 11);
  const auto nominal = nominal_decision(sc);
  CHECK(nominal.flights[0].back() == 7800.0);
  CHECK(nominal.flights[0].front() == 7800.0 - 11 * 600.0);
  CHECK_NOTHROW(check_feasible(sc, nominal));

  CorridorParams one;
  one.n_sectors = 1;
  const auto small = gen_corridor(one);
  CHECK(small.flights[0].points.size() == 2);
  CHECK(small.flights[0].crossings.size() == 1);
}

TEST_CASE("grid generator") {
  const auto sc = gen_grid();
  CHECK(sc.airspace.sectors.size() == 121);
  CHECK(sc.flights.size() == 192);
  std::set<std::vector<std::string>> routes;
  for (const auto& f : sc.flights) routes.insert(f.points);
  CHECK(routes.size() == 44);
  CHECK_NOTHROW(check_feasible(sc, nominal_decision(sc)));
  for (const auto& f : sc.flights) CHECK(f.crossings.size() == 11);

  // Capacities are symmetric under a quarter turn.
  for (std::size_t r = 0; r < 11; ++r) {
    for (std::size_t c = 0; c < 11; ++c) {
      CHECK(sc.airspace.sectors[grid_sector(r, c, 11)].capacity ==
            sc.airspace.sectors[grid_sector(c, 10 - r, 11)].capacity);
    }
  }

  GridParams p;
  p.rows = p.cols = 1;
  p.n_flights = 7;
  const auto single = gen_grid(p);
  CHECK(single.airspace.sectors.size() == 1);
  CHECK(single.visits_by_sector()[0].size() == 7);
}

TEST_CASE("generators are deterministic") {
  CHECK(scenario_to_json(gen_grid()) == scenario_to_json(gen_grid()));
  Stream a(9), b(9);
  const auto sc = gen_grid();
  CHECK(sample_decision_vector(sc, a).flights == sample_decision_vector(sc, b).flights);
}

TEST_CASE("sampled decision vectors are feasible") {
  const auto sc = gen_corridor();
  Stream rng(1234);
  std::vector<double> gaps;
  for (int i = 0; i < 10000; ++i) {
    const auto d = sample_decision_vector(sc, rng);
    CHECK(feasibility_violation(sc.flights[0], sc.intent, d.flights[0]) == std::nullopt);
    gaps.push_back(d.flights[0][1] - d.flights[0][0]);
  }
  const auto tp = oracle::two_pass(gaps);
  CHECK(std::abs(tp.mean - 600.0) < 3 * tp.sem);

  CorridorParams fixed;
  fixed.takeoff_window = {1000, 1000};
  const auto sc2 = gen_corridor(fixed);
  for (int i = 0; i < 10; ++i) CHECK(sample_decision_vector(sc2, rng).flights[0][0] == 1000.0);
}

TEST_CASE("departure-delay stand-in tails") {
  const auto d = departure_delay_standin();
  CHECK(std::abs(1.0 - d.cumulative(300) - 0.36) <= 0.01);
  CHECK(std::abs(1.0 - d.cumulative(900) - 0.16) <= 0.01);
  CHECK(d.support() == std::pair<double, double>{0, 3600});
}

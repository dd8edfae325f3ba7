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

#ifndef PCONG_SCENARIO_HPP
#define PCONG_SCENARIO_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pcong/dist.hpp"
#include "pcong/flight.hpp"
#include "pcong/random.hpp"

namespace pcong {

struct Sector {
  std::string id;
  std::size_t capacity = 0;
};

/// Sectors with constant capacities over a time horizon. The congestion
/// horizon defaults to the full horizon.
struct Airspace {
  std::vector<Sector> sectors;
  std::pair<double, double> horizon{0.0, 0.0};
  std::optional<std::pair<double, double>> congestion_horizon;

  std::pair<double, double> congestion_window() const noexcept {
    return congestion_horizon.value_or(horizon);
  }
};

/// One flight's traversal of a sector.
struct SectorVisit {
  std::size_t flight = 0;
  Crossing crossing;
};

class Scenario {
 public:
  Airspace airspace;
  std::vector<FlightPlan> flights;
  IntentModel intent;

  /// Throws ValidationError naming the first broken invariant.
  void validate() const;

  std::optional<std::size_t> sector_index(const std::string& id) const;
  std::optional<std::size_t> flight_index(const std::string& id) const;

  /// Visits per sector, in flight order.
  std::vector<std::vector<SectorVisit>> visits_by_sector() const;
};

/// Scenario JSON. Throws SchemaError naming the offending field path.
Scenario scenario_from_json(const std::string& text);
std::string scenario_to_json(const Scenario& scenario);
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& scenario, const std::string& path);

/// Decision-vector JSON: {"flights":[{"id":..., "targets":[...]}, ...]}.
DecisionVector decision_from_json(const Scenario& scenario, const std::string& text);
std::string decision_to_json(const Scenario& scenario, const DecisionVector& decision);

DecisionVector nominal_decision(const Scenario& scenario);

/// Throws ValidationError when any flight's targets are infeasible.
void check_feasible(const Scenario& scenario, const DecisionVector& decision);

/**
 * Uniform draw over the feasible set: gamma_1 uniform on the takeoff window,
 * each next target uniform on [gamma_i + d_i - w/2, gamma_i + d_i + w/2].
 */
DecisionVector sample_decision_vector(const Scenario& scenario, Stream& rng);

/**
 * Departure-delay law (seconds after the takeoff target) with
 * Pr(delay >= 300 s) = 0.36 and Pr(delay >= 900 s) = 0.16, supported on
 * [0, 3600] s and linear between knots at 0, 300, 900 and 3600 s.
 */
Distribution departure_delay_standin();

struct CorridorParams {
  std::size_t n_sectors = 11;
  double crossing = 600.0;
  std::pair<double, double> takeoff_window{300.0, 3600.0};
  double scheduled_arrival = 7800.0;
  IntentModel intent{};
  std::size_t capacity = 1;
  /// Inbound delay law; the departure stand-in when empty.
  std::optional<Distribution> inbound;
};

/// One flight crossing `n_sectors` sectors in a row.
Scenario gen_corridor(const CorridorParams& params = {});

struct GridParams {
  std::size_t rows = 11;
  std::size_t cols = 11;
  std::size_t n_flights = 192;
  double horizon = 9000.0;
  double crossing = 600.0;
  IntentModel intent{};
  /// Inbound law is triangular(-w, 0, w) around the takeoff target.
  double inbound_half_width = 300.0;
  /// Takeoff window is the nominal takeoff +/- this.
  double takeoff_half_width = 150.0;
  /// Capacity of a sector on ring r (Chebyshev distance to the grid centre)
  /// is base_capacity + ring_step * r, floored at 0.
  double base_capacity = 10.0;
  double ring_step = -1.0;
};

/**
 * Grid of rows x cols sectors crossed by straight routes along every row and
 * column in both directions. Flight j flies direction j % 4 (W->E, N->S,
 * E->W, S->N) on line (j / 4) % lines, with takeoffs staggered by j / 4 over
 * the window that keeps every trajectory inside the horizon. For square grids
 * and n_flights divisible by 4 the scenario is invariant under a 90 degree
 * rotation, which maps flight j to the flight of the next direction with the
 * same j / 4.
 */
Scenario gen_grid(const GridParams& params = {});

/// Sector index of grid cell (row, col) in gen_grid scenarios.
inline std::size_t grid_sector(std::size_t row, std::size_t col, std::size_t cols) noexcept {
  return row * cols + col;
}

}  // namespace pcong

#endif  // PCONG_SCENARIO_HPP

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

#ifndef PCONG_COSTS_HPP
#define PCONG_COSTS_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "pcong/congestion.hpp"
#include "pcong/flight.hpp"
#include "pcong/quad.hpp"
#include "pcong/scenario.hpp"

namespace pcong {

/// Total cost with its per-flight (delay) or per-sector (congestion) parts.
struct CostReport {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = true;
  std::vector<double> breakdown;
  std::vector<double> breakdown_error;
  std::vector<bool> breakdown_converged;
  std::size_t evaluations = 0;
};

/// E[(T - arrival)_+^2] for T distributed as `final_marginal`.
QuadratureResult expected_delay_cost(const MarginalCurve& final_marginal, double scheduled_arrival,
                                     const QuadratureSpec& spec = {});

/**
 * Time integral over `window` of E[((K - capacity)_+)^2], K the occupancy
 * built from `sources`. The integral is split at every support endpoint and
 * grid node of the contributing curves.
 */
QuadratureResult expected_congestion_cost(std::span<const PresenceSource> sources,
                                          std::size_t capacity, std::pair<double, double> window,
                                          const QuadratureSpec& spec = {});

/// Propagated marginals of every flight of a scenario for one decision vector.
class QuadratureModel {
 public:
  /// `threads` == 0 uses the hardware concurrency.
  QuadratureModel(const Scenario& scenario, const DecisionVector& decision, double step,
                  const QuadratureSpec& propagation = propagation_quadrature(),
                  unsigned threads = 0);
  QuadratureModel(Scenario&&, const DecisionVector&, double,
                  const QuadratureSpec& = propagation_quadrature(), unsigned = 0) = delete;

  const Scenario& scenario() const noexcept { return *scenario_; }
  double step() const noexcept { return step_; }
  const std::vector<MarginalCurve>& marginals(std::size_t flight) const { return curves_.at(flight); }
  /// Presence sources of every visit of `sector`, in flight order.
  std::vector<PresenceSource> sources(std::size_t sector) const;

 private:
  const Scenario* scenario_;
  double step_;
  std::vector<std::vector<MarginalCurve>> curves_;
  std::vector<std::vector<SectorVisit>> visits_;
};

/// Delay cost summed over flights; breakdown per flight.
CostReport total_delay_cost(const QuadratureModel& model, const QuadratureSpec& spec = {});

/// Congestion cost summed over sectors; breakdown per sector.
CostReport total_congestion_cost(const QuadratureModel& model, const QuadratureSpec& spec = {},
                                 unsigned threads = 0);

}  // namespace pcong

#endif  // PCONG_COSTS_HPP

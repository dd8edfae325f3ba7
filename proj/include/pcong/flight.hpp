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

#ifndef PCONG_FLIGHT_HPP
#define PCONG_FLIGHT_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pcong/dist.hpp"
#include "pcong/quad.hpp"
#include "pcong/random.hpp"

namespace pcong {

/// A sector traversal: the flight is inside `sector` between the overfly
/// times of points `entry` and `exit`.
struct Crossing {
  std::size_t sector = 0;
  std::size_t entry = 0;
  std::size_t exit = 0;
};

enum class IntentFamily { Triangular, Pert };

/**
 * Conditional law of the next overfly time given the previous one. The
 * support has width `support_width` centered on the nominal duration; the
 * mode sits on the target time, clamped into the support.
 * A zero width makes the model deterministic.
 */
struct IntentModel {
  IntentFamily family = IntentFamily::Triangular;
  double support_width = 180.0;
  double lambda = kDefaultPertLambda;

  bool deterministic() const noexcept { return support_width < kDegenerateWidth; }
};

struct FlightPlan {
  std::string id;
  std::vector<std::string> points;
  /// Nominal crossing duration of each segment; size() == points.size() - 1.
  std::vector<double> durations;
  std::vector<Crossing> crossings;
  double scheduled_arrival = 0.0;
  /// Feasible range of the takeoff target gamma_1.
  std::pair<double, double> takeoff_window{0.0, 0.0};
  /// Law of the entry time relative to the takeoff target gamma_1.
  Distribution inbound;
};

/// Target times per point, one vector per flight.
using FlightTargets = std::vector<double>;

struct DecisionVector {
  std::vector<FlightTargets> flights;
};

/// Structural checks (points, durations, crossings). Throws ValidationError.
void validate_flight(const FlightPlan& flight, std::size_t n_sectors);

/// Empty when feasible, else a description of the first violation.
std::optional<std::string> feasibility_violation(const FlightPlan& flight, const IntentModel& intent,
                                                 std::span<const double> targets);

/// Throws ValidationError when the targets are infeasible.
void check_feasible(const FlightPlan& flight, const IntentModel& intent,
                    std::span<const double> targets);

/// Targets that follow the nominal durations from the takeoff that lands on
/// the scheduled arrival (clamped into the takeoff window).
FlightTargets nominal_targets(const FlightPlan& flight);

/**
 * Law of the next overfly time: support
 * [t_prev + duration - w/2, t_prev + duration + w/2], mode at the target
 * clamped into the support. Throws ConfigError when duration <= w/2.
 */
Distribution conditional(const IntentModel& intent, double t_prev, double duration, double target);

/// Same law as conditional(), sampled without materializing the distribution.
double sample_conditional(const IntentModel& intent, double t_prev, double duration, double target,
                          Stream& rng);

/// Density of conditional(intent, t_prev, duration, target) at t.
double conditional_density(const IntentModel& intent, double t_prev, double duration,
                           double target, double t);

/**
 * Marginal density of one overfly time, held as node values on a uniform
 * grid and linearly interpolated in between, or a point mass.
 *
 * The density is zero outside [first node, last node]. Cumulative values are
 * the exact integrals of the interpolant.
 */
class MarginalCurve {
 public:
  MarginalCurve() = default;

  static MarginalCurve atom(double at);

  /// Values at nodes origin + (first + k) * step. Rescaled to unit mass; the
  /// mass before rescaling is kept. Throws ConfigError on zero mass.
  static MarginalCurve on_grid(double origin, double step, std::int64_t first,
                               std::vector<double> values);

  bool is_atom() const noexcept { return atom_.has_value(); }
  double atom_time() const { return *atom_; }

  double origin() const noexcept { return origin_; }
  double step() const noexcept { return step_; }
  std::int64_t first() const noexcept { return first_; }
  std::size_t size() const noexcept { return values_.size(); }
  double node_time(std::size_t k) const noexcept {
    return origin_ + static_cast<double>(first_ + static_cast<std::int64_t>(k)) * step_;
  }
  std::span<const double> values() const noexcept { return values_; }

  /// Interpolated density; 0 for an atom.
  double density(double t) const noexcept;
  double cumulative(double t) const noexcept;
  double mean() const noexcept { return mean_; }
  double variance() const noexcept { return variance_; }
  double mass_before_normalization() const noexcept { return raw_mass_; }
  /// [first node, last node], or [atom, atom].
  std::pair<double, double> support() const noexcept;

 private:
  std::optional<double> atom_;
  double origin_ = 0.0;
  double step_ = 1.0;
  std::int64_t first_ = 0;
  std::vector<double> values_;
  std::vector<double> cumulative_;
  double mean_ = 0.0;
  double variance_ = 0.0;
  double raw_mass_ = 1.0;
};

/// Quadrature settings used per grid node during propagation.
QuadratureSpec propagation_quadrature();

/**
 * Marginals of every overfly time of a flight, one curve per point.
 *
 * Curve 0 is the inbound law shifted by targets[0] and sampled on the grid.
 * Curve i+1 is the integral of conditional_density against curve i, computed
 * by piecewise quadrature at each node, then rescaled to unit mass.
 * The grid starts at the inbound support start and has spacing `step`.
 *
 * Throws ConfigError when step exceeds the intent support width, and
 * ValidationError when the targets are infeasible.
 */
std::vector<MarginalCurve> propagate_marginals(const FlightPlan& flight,
                                               std::span<const double> targets,
                                               const IntentModel& intent, double step,
                                               const QuadratureSpec& spec = propagation_quadrature());

/// F_entry(t) - F_exit(t) before clamping.
double presence_probability_raw(const MarginalCurve& entry, const MarginalCurve& exit, double t) noexcept;

/// Probability the flight is between the two points at time t, clamped to [0, 1].
double presence_probability(const MarginalCurve& entry, const MarginalCurve& exit, double t) noexcept;

/// Samples one overfly time per point into `out` (size == points).
void forward_sample(const FlightPlan& flight, std::span<const double> targets,
                    const IntentModel& intent, Stream& rng, std::span<double> out);

std::vector<double> forward_sample(const FlightPlan& flight, std::span<const double> targets,
                                   const IntentModel& intent, Stream& rng);

}  // namespace pcong

#endif  // PCONG_FLIGHT_HPP

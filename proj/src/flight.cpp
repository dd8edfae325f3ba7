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

#include "pcong/flight.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "pcong/error.hpp"

namespace pcong {

namespace {

constexpr double kNodeSnap = 1e-9;

double feasibility_tolerance(double scale) { return 1e-9 * std::max(1.0, std::abs(scale)); }

void check_segment(const IntentModel& intent, double duration) {
  if (!(duration > 0.0)) throw ConfigError("segment duration must be > 0");
  if (!intent.deterministic() && !(duration > 0.5 * intent.support_width)) {
    std::ostringstream os;
    os << "segment duration " << duration << " s must exceed half the intent support ("
       << 0.5 * intent.support_width << " s)";
    throw ConfigError(os.str());
  }
}

struct Support {
  double lo;
  double mode;
  double hi;
};

Support conditional_support(const IntentModel& intent, double t_prev, double duration,
                            double target) {
  const double half = 0.5 * intent.support_width;
  const double lo = t_prev + duration - half;
  const double hi = t_prev + duration + half;
  return {lo, std::clamp(target, lo, hi), hi};
}

// Exact first and second moments about `ref` of the linear piece between two nodes.
void cell_moments(double t0, double v0, double t1, double v1, double ref, double& m1, double& m2) {
  const double h = t1 - t0;
  const double a = t0 - ref;
  const double b = t1 - ref;
  const double c = 0.5 * (a + b);
  const double vm = 0.5 * (v0 + v1);
  m1 += h / 6.0 * (a * v0 + 4.0 * c * vm + b * v1);
  m2 += h / 6.0 * (a * a * v0 + 4.0 * c * c * vm + b * b * v1);
}

std::int64_t node_floor(double t, double origin, double step) {
  return static_cast<std::int64_t>(std::floor((t - origin) / step + kNodeSnap));
}

std::int64_t node_ceil(double t, double origin, double step) {
  return static_cast<std::int64_t>(std::ceil((t - origin) / step - kNodeSnap));
}

}  // namespace

void validate_flight(const FlightPlan& flight, std::size_t n_sectors) {
  const std::string who = "flight '" + flight.id + "': ";
  if (flight.points.size() < 2) throw ValidationError(who + "needs at least 2 points");
  if (flight.durations.size() != flight.points.size() - 1) {
    throw ValidationError(who + "needs one duration per segment");
  }
  for (double d : flight.durations) {
    if (!std::isfinite(d) || !(d > 0.0)) throw ValidationError(who + "durations must be > 0");
  }
  if (!std::isfinite(flight.scheduled_arrival)) {
    throw ValidationError(who + "scheduled arrival must be finite");
  }
  const auto [w_lo, w_hi] = flight.takeoff_window;
  if (!std::isfinite(w_lo) || !std::isfinite(w_hi) || w_lo > w_hi) {
    throw ValidationError(who + "takeoff window must be an ordered finite pair");
  }
  std::vector<Crossing> sorted = flight.crossings;
  std::sort(sorted.begin(), sorted.end(),
            [](const Crossing& a, const Crossing& b) { return a.entry < b.entry; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto& c = sorted[i];
    if (c.sector >= n_sectors) throw ValidationError(who + "crossing references an unknown sector");
    if (!(c.entry < c.exit) || c.exit >= flight.points.size()) {
      throw ValidationError(who + "crossing point indices must satisfy entry < exit < points");
    }
    if (i > 0 && c.entry < sorted[i - 1].exit) {
      throw ValidationError(who + "crossings overlap; a flight occupies one sector at a time");
    }
  }
}

std::optional<std::string> feasibility_violation(const FlightPlan& flight, const IntentModel& intent,
                                                 std::span<const double> targets) {
  if (targets.size() != flight.points.size()) {
    return "expected " + std::to_string(flight.points.size()) + " targets, got " +
           std::to_string(targets.size());
  }
  const auto [w_lo, w_hi] = flight.takeoff_window;
  const double g1 = targets[0];
  if (!std::isfinite(g1) || g1 < w_lo - feasibility_tolerance(w_lo) ||
      g1 > w_hi + feasibility_tolerance(w_hi)) {
    std::ostringstream os;
    os << "takeoff target " << g1 << " outside window [" << w_lo << ", " << w_hi << "]";
    return os.str();
  }
  const double half = 0.5 * intent.support_width;
  for (std::size_t i = 0; i + 1 < targets.size(); ++i) {
    const double gap = targets[i + 1] - targets[i];
    const double d = flight.durations[i];
    const double tol = feasibility_tolerance(targets[i + 1]);
    if (!std::isfinite(gap) || gap < d - half - tol || gap > d + half + tol) {
      std::ostringstream os;
      os << "target gap " << gap << " on segment " << i << " outside [" << d - half << ", "
         << d + half << "]";
      return os.str();
    }
  }
  return std::nullopt;
}

void check_feasible(const FlightPlan& flight, const IntentModel& intent,
                    std::span<const double> targets) {
  if (auto v = feasibility_violation(flight, intent, targets)) {
    throw ValidationError("flight '" + flight.id + "': infeasible decision vector: " + *v);
  }
}

FlightTargets nominal_targets(const FlightPlan& flight) {
  const double total = std::accumulate(flight.durations.begin(), flight.durations.end(), 0.0);
  FlightTargets g(flight.points.size());
  g[0] = std::clamp(flight.scheduled_arrival - total, flight.takeoff_window.first,
                    flight.takeoff_window.second);
  for (std::size_t i = 0; i < flight.durations.size(); ++i) g[i + 1] = g[i] + flight.durations[i];
  return g;
}

Distribution conditional(const IntentModel& intent, double t_prev, double duration, double target) {
  check_segment(intent, duration);
  if (intent.deterministic()) return Distribution::point(t_prev + duration);
  const Support s = conditional_support(intent, t_prev, duration, target);
  if (intent.family == IntentFamily::Pert) return Distribution::pert(s.lo, s.mode, s.hi, intent.lambda);
  return Distribution::triangular(s.lo, s.mode, s.hi);
}

double sample_conditional(const IntentModel& intent, double t_prev, double duration, double target,
                          Stream& rng) {
  if (intent.deterministic()) return t_prev + duration;
  const Support s = conditional_support(intent, t_prev, duration, target);
  if (intent.family == IntentFamily::Pert) {
    const auto shape = detail::pert_shape(s.lo, s.mode, s.hi, intent.lambda);
    return s.lo + intent.support_width * detail::beta_sample(shape.alpha, shape.beta, rng);
  }
  return detail::triangular_quantile(s.lo, s.mode, s.hi, rng.uniform());
}

double conditional_density(const IntentModel& intent, double t_prev, double duration,
                           double target, double t) {
  const Support s = conditional_support(intent, t_prev, duration, target);
  if (t < s.lo || t > s.hi) return 0.0;
  if (intent.family == IntentFamily::Pert) {
    const auto shape = detail::pert_shape(s.lo, s.mode, s.hi, intent.lambda);
    const double w = intent.support_width;
    // Last shape seen by this thread and its log B.
    thread_local detail::BetaShape last{0.0, 0.0};
    thread_local double last_log_b = 0.0;
    if (shape.alpha != last.alpha || shape.beta != last.beta) {
      last = shape;
      last_log_b = detail::log_beta(shape.alpha, shape.beta);
    }
    return detail::beta_density(shape.alpha, shape.beta, last_log_b, (t - s.lo) / w) / w;
  }
  return detail::triangular_density(s.lo, s.mode, s.hi, t);
}

// ---------------------------------------------------------------------------
// MarginalCurve

MarginalCurve MarginalCurve::atom(double at) {
  MarginalCurve c;
  c.atom_ = at;
  c.mean_ = at;
  c.variance_ = 0.0;
  c.raw_mass_ = 1.0;
  return c;
}

MarginalCurve MarginalCurve::on_grid(double origin, double step, std::int64_t first,
                                     std::vector<double> values) {
  if (!(step > 0.0)) throw ConfigError("grid step must be > 0");
  MarginalCurve c;
  c.origin_ = origin;
  c.step_ = step;
  c.first_ = first;
  for (double& v : values) {
    if (!std::isfinite(v)) throw InternalError("non-finite marginal density value");
    v = std::max(0.0, v);
  }
  double mass = 0.0;
  for (std::size_t k = 1; k < values.size(); ++k) mass += 0.5 * step * (values[k - 1] + values[k]);
  if (!(mass > 0.0)) {
    throw ConfigError("grid step too coarse: marginal has no mass on the grid nodes");
  }
  c.raw_mass_ = mass;
  for (double& v : values) v /= mass;
  c.values_ = std::move(values);

  c.cumulative_.assign(c.values_.size(), 0.0);
  double m1 = 0.0, m2 = 0.0;
  const double ref = c.node_time(0);
  for (std::size_t k = 1; k < c.values_.size(); ++k) {
    c.cumulative_[k] = c.cumulative_[k - 1] + 0.5 * step * (c.values_[k - 1] + c.values_[k]);
    cell_moments(c.node_time(k - 1), c.values_[k - 1], c.node_time(k), c.values_[k], ref, m1, m2);
  }
  c.mean_ = ref + m1;
  c.variance_ = std::max(0.0, m2 - m1 * m1);
  return c;
}

double MarginalCurve::density(double t) const noexcept {
  if (atom_ || values_.empty()) return 0.0;
  const double u = (t - origin_) / step_ - static_cast<double>(first_);
  const double last = static_cast<double>(values_.size() - 1);
  if (u < 0.0 || u > last) return 0.0;
  const auto k = static_cast<std::size_t>(u);
  if (k + 1 >= values_.size()) return values_.back();
  const double frac = u - static_cast<double>(k);
  return values_[k] + frac * (values_[k + 1] - values_[k]);
}

double MarginalCurve::cumulative(double t) const noexcept {
  if (atom_) return t >= *atom_ ? 1.0 : 0.0;
  if (values_.empty()) return 0.0;
  const double u = (t - origin_) / step_ - static_cast<double>(first_);
  const double last = static_cast<double>(values_.size() - 1);
  if (u <= 0.0) return 0.0;
  if (u >= last) return 1.0;
  const auto k = static_cast<std::size_t>(u);
  const double frac = u - static_cast<double>(k);
  const double v0 = values_[k];
  const double v1 = values_[k + 1];
  return std::min(1.0, cumulative_[k] + step_ * frac * (v0 + 0.5 * (v1 - v0) * frac));
}

std::pair<double, double> MarginalCurve::support() const noexcept {
  if (atom_) return {*atom_, *atom_};
  if (values_.empty()) return {origin_, origin_};
  return {node_time(0), node_time(values_.size() - 1)};
}

// ---------------------------------------------------------------------------
// Propagation

QuadratureSpec propagation_quadrature() {
  QuadratureSpec spec;
  spec.rel_tol = 1e-8;
  spec.abs_tol = 1e-14;
  spec.abs_tol_scaled = true;
  spec.max_subdivisions = 50;
  return spec;
}

std::vector<MarginalCurve> propagate_marginals(const FlightPlan& flight,
                                               std::span<const double> targets,
                                               const IntentModel& intent, double step,
                                               const QuadratureSpec& spec) {
  validate_flight(flight, static_cast<std::size_t>(-1));
  check_feasible(flight, intent, targets);
  if (!(step > 0.0)) throw ConfigError("grid step must be > 0");
  if (!intent.deterministic() && step > intent.support_width) {
    throw ConfigError("grid step exceeds the conditional support width");
  }
  for (double d : flight.durations) check_segment(intent, d);

  const double half = 0.5 * intent.support_width;
  std::vector<MarginalCurve> curves;
  curves.reserve(flight.points.size());

  const Distribution inbound = flight.inbound.shifted(targets[0]);
  double origin = inbound.support().first;
  if (inbound.is_point_mass()) {
    curves.push_back(MarginalCurve::atom(inbound.support().first));
  } else {
    const auto [lo, hi] = inbound.support();
    const std::int64_t last = node_ceil(hi, origin, step);
    std::vector<double> v(static_cast<std::size_t>(last + 1));
    for (std::int64_t k = 0; k <= last; ++k) v[k] = inbound.density(origin + k * step);
    curves.push_back(MarginalCurve::on_grid(origin, step, 0, std::move(v)));
  }

  std::vector<double> breaks;
  for (std::size_t i = 0; i + 1 < flight.points.size(); ++i) {
    const MarginalCurve& prev = curves.back();
    const double d = flight.durations[i];
    const double target = targets[i + 1];

    if (prev.is_atom()) {
      const double t0 = prev.atom_time();
      if (intent.deterministic()) {
        curves.push_back(MarginalCurve::atom(t0 + d));
        continue;
      }
      const std::int64_t k_lo = node_floor(t0 + d - half, origin, step);
      const std::int64_t k_hi = node_ceil(t0 + d + half, origin, step);
      std::vector<double> v(static_cast<std::size_t>(k_hi - k_lo + 1));
      for (std::int64_t k = k_lo; k <= k_hi; ++k) {
        v[k - k_lo] = conditional_density(intent, t0, d, target, origin + k * step);
      }
      curves.push_back(MarginalCurve::on_grid(origin, step, k_lo, std::move(v)));
      continue;
    }

    const auto [prev_lo, prev_hi] = prev.support();
    if (intent.deterministic()) {
      const std::int64_t k_lo = node_floor(prev_lo + d, origin, step);
      const std::int64_t k_hi = node_ceil(prev_hi + d, origin, step);
      std::vector<double> v(static_cast<std::size_t>(k_hi - k_lo + 1));
      for (std::int64_t k = k_lo; k <= k_hi; ++k) v[k - k_lo] = prev.density(origin + k * step - d);
      curves.push_back(MarginalCurve::on_grid(origin, step, k_lo, std::move(v)));
      continue;
    }

    const std::int64_t k_lo = node_floor(prev_lo + d - half, origin, step);
    const std::int64_t k_hi = node_ceil(prev_hi + d + half, origin, step);
    std::vector<double> v(static_cast<std::size_t>(k_hi - k_lo + 1), 0.0);
    const double kink_lo = target - d - half;
    const double kink_hi = target - d + half;
    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
      const double t = origin + k * step;
      const double w_lo = std::max(t - d - half, prev_lo);
      const double w_hi = std::min(t - d + half, prev_hi);
      if (!(w_lo < w_hi)) continue;
      breaks.clear();
      for (std::int64_t m = node_ceil(w_lo, origin, step); m <= node_floor(w_hi, origin, step); ++m) {
        breaks.push_back(origin + m * step);
      }
      for (double kink : {kink_lo, kink_hi}) {
        if (kink > w_lo && kink < w_hi) {
          breaks.insert(std::lower_bound(breaks.begin(), breaks.end(), kink), kink);
        }
      }
      auto integrand = [&](double tau) {
        return conditional_density(intent, tau, d, target, t) * prev.density(tau);
      };
      v[k - k_lo] = try_integrate_piecewise(integrand, w_lo, w_hi, breaks, spec).value;
    }
    curves.push_back(MarginalCurve::on_grid(origin, step, k_lo, std::move(v)));
  }
  return curves;
}

double presence_probability_raw(const MarginalCurve& entry, const MarginalCurve& exit,
                                double t) noexcept {
  return entry.cumulative(t) - exit.cumulative(t);
}

double presence_probability(const MarginalCurve& entry, const MarginalCurve& exit, double t) noexcept {
  return std::clamp(presence_probability_raw(entry, exit, t), 0.0, 1.0);
}

void forward_sample(const FlightPlan& flight, std::span<const double> targets,
                    const IntentModel& intent, Stream& rng, std::span<double> out) {
  out[0] = targets[0] + flight.inbound.sample(rng);
  for (std::size_t i = 0; i + 1 < out.size(); ++i) {
    out[i + 1] = sample_conditional(intent, out[i], flight.durations[i], targets[i + 1], rng);
  }
}

std::vector<double> forward_sample(const FlightPlan& flight, std::span<const double> targets,
                                   const IntentModel& intent, Stream& rng) {
  std::vector<double> out(flight.points.size());
  forward_sample(flight, targets, intent, rng, out);
  return out;
}

}  // namespace pcong

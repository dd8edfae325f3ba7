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

#include "pcong/costs.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"
#include "pcong/error.hpp"

namespace pcong {

namespace {

void add_nodes(const MarginalCurve& c, double lo, double hi, std::vector<double>& out) {
  if (c.is_atom()) {
    out.push_back(c.atom_time());
    return;
  }
  for (std::size_t k = 0; k < c.size(); ++k) {
    const double t = c.node_time(k);
    if (t > lo && t < hi) out.push_back(t);
  }
  out.push_back(c.support().first);
  out.push_back(c.support().second);
}

void sort_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void merge_into(CostReport& report, const QuadratureResult& r) {
  report.value += r.value;
  report.error_estimate += r.error_estimate;
  report.evaluations += r.evaluations;
  report.converged = report.converged && r.converged;
  report.breakdown.push_back(r.value);
  report.breakdown_error.push_back(r.error_estimate);
  report.breakdown_converged.push_back(r.converged);
}

}  // namespace

QuadratureResult expected_delay_cost(const MarginalCurve& final_marginal, double scheduled_arrival,
                                     const QuadratureSpec& spec) {
  QuadratureResult out;
  if (final_marginal.is_atom()) {
    const double late = std::max(0.0, final_marginal.atom_time() - scheduled_arrival);
    out.value = late * late;
    return out;
  }
  const auto [lo, hi] = final_marginal.support();
  const double a = std::max(lo, scheduled_arrival);
  if (!(a < hi)) return out;
  std::vector<double> breaks;
  add_nodes(final_marginal, a, hi, breaks);
  sort_unique(breaks);
  auto f = [&](double t) {
    const double late = t - scheduled_arrival;
    return late > 0.0 ? late * late * final_marginal.density(t) : 0.0;
  };
  return try_integrate_piecewise(f, a, hi, breaks, spec);
}

QuadratureResult expected_congestion_cost(std::span<const PresenceSource> sources,
                                          std::size_t capacity, std::pair<double, double> window,
                                          const QuadratureSpec& spec) {
  QuadratureResult out;
  if (sources.size() <= capacity) return out;
  double lo = window.second;
  double hi = window.first;
  for (const auto& s : sources) {
    lo = std::min(lo, s.entry->support().first);
    hi = std::max(hi, s.exit->support().second);
  }
  lo = std::max(lo, window.first);
  hi = std::min(hi, window.second);
  if (!(lo < hi)) return out;

  std::vector<double> breaks;
  for (const auto& s : sources) {
    add_nodes(*s.entry, lo, hi, breaks);
    add_nodes(*s.exit, lo, hi, breaks);
  }
  sort_unique(breaks);

  auto f = [&](double t) { return expected_overload_cost(occupancy_at(sources, t), capacity); };
  return try_integrate_piecewise(f, lo, hi, breaks, spec);
}

QuadratureModel::QuadratureModel(const Scenario& scenario, const DecisionVector& decision,
                                 double step, const QuadratureSpec& propagation, unsigned threads)
    : scenario_(&scenario), step_(step) {
  check_feasible(scenario, decision);
  curves_.resize(scenario.flights.size());
  detail::parallel_for(scenario.flights.size(), threads, [&](std::size_t f) {
    curves_[f] = propagate_marginals(scenario.flights[f], decision.flights[f], scenario.intent,
                                     step, propagation);
  });
  visits_ = scenario.visits_by_sector();
}

std::vector<PresenceSource> QuadratureModel::sources(std::size_t sector) const {
  std::vector<PresenceSource> out;
  for (const auto& v : visits_.at(sector)) {
    const auto& c = curves_[v.flight];
    out.push_back({&c[v.crossing.entry], &c[v.crossing.exit]});
  }
  return out;
}

CostReport total_delay_cost(const QuadratureModel& model, const QuadratureSpec& spec) {
  CostReport report;
  const auto& flights = model.scenario().flights;
  for (std::size_t f = 0; f < flights.size(); ++f) {
    merge_into(report,
               expected_delay_cost(model.marginals(f).back(), flights[f].scheduled_arrival, spec));
  }
  return report;
}

CostReport total_congestion_cost(const QuadratureModel& model, const QuadratureSpec& spec,
                                 unsigned threads) {
  const auto& sc = model.scenario();
  const std::size_t n = sc.airspace.sectors.size();
  std::vector<QuadratureResult> parts(n);
  detail::parallel_for(n, threads, [&](std::size_t s) {
    const auto sources = model.sources(s);
    parts[s] = expected_congestion_cost(sources, sc.airspace.sectors[s].capacity,
                                        sc.airspace.congestion_window(), spec);
  });
  CostReport report;
  for (const auto& r : parts) merge_into(report, r);
  return report;
}

}  // namespace pcong

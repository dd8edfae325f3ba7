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

#ifndef PCONG_MC_HPP
#define PCONG_MC_HPP

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pcong/flight.hpp"
#include "pcong/scenario.hpp"

namespace pcong {

/// Online mean and variance (Welford), mergeable across workers.
class MeanAccumulator {
 public:
  void add(double x) noexcept;
  void merge(const MeanAccumulator& other) noexcept;

  std::size_t count() const noexcept { return n_; }
  double mean() const noexcept { return mean_; }
  /// Unbiased sample variance; 0 below two samples.
  double variance() const noexcept;
  /// Standard error of the mean; 0 below two samples.
  double sem() const noexcept;

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

enum class StopReason { Relative, Absolute, MaxSamples };

std::string_view to_string(StopReason reason) noexcept;

/**
 * Standard-error stopping rule, checked once at least n_init samples exist.
 *
 * Default: stop when x̄ + 3 SEM <= eps_abs (Absolute) or SEM <= eps_rel x̄
 * (Relative). With `literal` set, sampling continues only while
 * SEM > eps_rel x̄ and SEM < eps_abs. Reaching n_max stops with MaxSamples.
 */
struct StoppingRule {
  double eps_rel = 0.01;
  double eps_abs = 0.1;
  std::size_t n_init = 30;
  std::size_t n_max = 10'000'000;
  bool literal = false;

  /// Throws ValidationError on eps <= 0 or n_init < 2 or n_max < n_init.
  void validate() const;
  std::optional<StopReason> check(const MeanAccumulator& acc) const noexcept;
};

struct TracePoint {
  std::size_t n = 0;
  double mean = 0.0;
  double sem = 0.0;
};

struct McEstimate {
  double mean = 0.0;
  double sem = 0.0;
  std::size_t n = 0;
  StopReason reason = StopReason::MaxSamples;
  /// Accumulator state at n = 2, 4, 8, ... when tracing was requested.
  std::vector<TracePoint> trace;

  bool converged() const noexcept { return reason != StopReason::MaxSamples; }
};

struct McOptions {
  /// Worker threads for particle evaluation; 0 uses the hardware concurrency.
  unsigned threads = 1;
  /// Particles evaluated per parallel batch.
  std::size_t batch = 4096;
  bool trace = false;
  /// When set, exactly this many particles are drawn and the rule is ignored.
  std::optional<std::size_t> fixed_count;
};

/// Value of one particle; must be a pure function of the particle id.
using ParticleFunction = std::function<double(std::uint64_t particle)>;

/**
 * Accumulates particle values 0, 1, 2, ... in order until the rule stops.
 * Batches are evaluated in parallel and folded sequentially, so the result
 * does not depend on the thread count.
 */
McEstimate run_monte_carlo(const ParticleFunction& value, const StoppingRule& rule,
                           const McOptions& options = {});

// ---------------------------------------------------------------------------
// Sweep line

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

struct Event {
  double time = 0.0;
  int delta = 0;
};

/// Entry (+1) and exit (-1) events sorted by time, exits first on ties.
void build_events(std::span<const Interval> intervals, std::vector<Event>& events);

/// A maximal stretch of constant occupancy.
struct CountSegment {
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
};

/// Sweeps sorted events into positive-length constant-count segments.
std::vector<CountSegment> sweep_counts(std::span<const Event> events);

/// Sum over stretches with count > capacity of (count - capacity)^2 * length.
double congestion_cost_sweep(std::span<const Interval> intervals, std::size_t capacity,
                             std::vector<Event>& scratch);
double congestion_cost_sweep(std::span<const Interval> intervals, std::size_t capacity);

/// Maximal intervals where count > capacity, ascending and disjoint.
void congested_intervals(std::span<const Interval> intervals, std::size_t capacity,
                         std::vector<Event>& scratch, std::vector<Interval>& out);
std::vector<Interval> congested_intervals(std::span<const Interval> intervals,
                                          std::size_t capacity);

// ---------------------------------------------------------------------------
// Particles

/// Default memory budget of a ParticleStore.
inline constexpr std::size_t kParticleStoreBudget = std::size_t{256} << 20;

/**
 * Memoized forward-sampled trajectories keyed by (particle, flight). The
 * trajectory of a key is drawn from Stream::keyed(seed, particle, flight), so
 * it is a pure function of the key; particles beyond the memory budget are
 * regenerated on demand with identical values.
 *
 * Safe for concurrent use: the first writer of a key publishes it, later
 * readers see the stored copy.
 */
class ParticleStore {
 public:
  ParticleStore(const Scenario& scenario, const DecisionVector& decision, std::uint64_t seed,
                std::size_t memory_budget = kParticleStoreBudget);
  /// The store refers to the scenario, which must outlive it.
  ParticleStore(Scenario&&, const DecisionVector&, std::uint64_t,
                std::size_t = kParticleStoreBudget) = delete;
  ~ParticleStore();
  ParticleStore(const ParticleStore&) = delete;
  ParticleStore& operator=(const ParticleStore&) = delete;

  /// Trajectory of `flight` for `particle`. The span points into the store
  /// or into `scratch`.
  std::span<const double> trajectory(std::uint64_t particle, std::size_t flight,
                                     std::vector<double>& scratch) const;

  /// Draws a trajectory without touching the store.
  void generate(std::uint64_t particle, std::size_t flight, std::span<double> out) const;

  std::uint64_t seed() const noexcept { return seed_; }
  std::size_t particle_capacity() const noexcept { return capacity_; }
  const Scenario& scenario() const noexcept { return *scenario_; }
  const DecisionVector& decision() const noexcept { return decision_; }

 private:
  struct Chunk;
  struct FlightSlots;

  const Scenario* scenario_;
  DecisionVector decision_;
  std::uint64_t seed_;
  std::size_t capacity_;
  std::vector<std::unique_ptr<FlightSlots>> slots_;
};

/// Sector intervals of the visits for one particle.
void visit_intervals(const ParticleStore& store, std::span<const SectorVisit> visits,
                     std::uint64_t particle, std::vector<double>& scratch,
                     std::vector<Interval>& out);

/// Congestion cost of one particle in a sector.
double congestion_cost_sample(const ParticleStore& store, std::span<const SectorVisit> visits,
                              std::size_t capacity, std::uint64_t particle);

/// SEM-stopped expected congestion cost of one sector.
McEstimate expected_congestion_cost_mc(const ParticleStore& store,
                                       std::span<const SectorVisit> visits, std::size_t capacity,
                                       const StoppingRule& rule, const McOptions& options = {});

/// Delay cost (T_last - arrival)_+^2 of one flight for one particle.
double delay_cost_sample(const ParticleStore& store, std::size_t flight, std::uint64_t particle);

/// SEM-stopped expected delay cost of one flight.
McEstimate expected_delay_cost_mc(const ParticleStore& store, std::size_t flight,
                                  const StoppingRule& rule, const McOptions& options = {});

// ---------------------------------------------------------------------------
// Monitoring

struct MonitorOptions {
  /// Endpoints closer than this to an existing key reuse it.
  double merge_eps = 1.0;
  double eps_rel = 0.01;
  std::size_t n_init = 30;
  std::size_t n_max = 10'000'000;
  /// Extra keys tracked from the first particle on.
  std::vector<double> probes;
};

/// One monitored timestamp: the congestion indicator averaged over particles.
struct MonitorPoint {
  double time = 0.0;
  double probability = 0.0;
  double sem = 0.0;
  std::size_t count = 0;
};

/**
 * Timestamps with running estimates of Pr(sector congested at the key).
 * The estimate holds from a key up to the next one.
 */
class MonitorMap {
 public:
  explicit MonitorMap(double merge_eps = 1.0) : eps_(merge_eps) {}

  double merge_eps() const noexcept { return eps_; }
  std::size_t size() const noexcept { return keys_.size(); }
  bool empty() const noexcept { return keys_.empty(); }
  const std::map<double, MeanAccumulator>& keys() const noexcept { return keys_; }

  /// Key within merge_eps of t, if any.
  std::optional<double> find(double t) const;
  /// Estimate of the last key at or before t; 0 before the first key.
  double probability_at(double t) const;
  double sem_at(double t) const;
  std::vector<MonitorPoint> points() const;

  /// Largest SEM over all keys.
  double max_sem() const noexcept;

  /// Inserts a key; the caller supplies its accumulator.
  void insert(double t, MeanAccumulator acc) { keys_.emplace(t, acc); }
  std::map<double, MeanAccumulator>& mutable_keys() noexcept { return keys_; }

 private:
  double eps_;
  std::map<double, MeanAccumulator> keys_;
};

struct MonitorResult {
  MonitorMap map;
  std::size_t particles = 0;
  bool converged = true;
};

/**
 * Adaptive congestion monitoring of one sector. Each particle contributes
 * one Bernoulli sample per key: whether the key lies in a congested interval
 * [lo, hi) of that particle. Keys created later are backfilled from the
 * stored interval history. Stops once n >= n_init and every key has
 * SEM <= eps_rel.
 */
MonitorResult congestion_monitoring(const ParticleStore& store,
                                    std::span<const SectorVisit> visits, std::size_t capacity,
                                    const MonitorOptions& options = {});

/// congestion_monitoring for every sector, sectors spread over threads.
std::vector<MonitorResult> monitor_all(const ParticleStore& store, const MonitorOptions& options,
                                       unsigned threads = 0);

}  // namespace pcong

#endif  // PCONG_MC_HPP

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

#include "pcong/mc.hpp"

#include <algorithm>
#include <cmath>

#include "parallel.hpp"
#include "pcong/error.hpp"

namespace pcong {

// ---------------------------------------------------------------------------
// Accumulator and stopping

void MeanAccumulator::add(double x) noexcept {
  ++n_;
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(n_);
  m2_ += delta * (x - mean_);
}

void MeanAccumulator::merge(const MeanAccumulator& other) noexcept {
  if (other.n_ == 0) return;
  if (n_ == 0) {
    *this = other;
    return;
  }
  const double na = static_cast<double>(n_);
  const double nb = static_cast<double>(other.n_);
  const double n = na + nb;
  const double delta = other.mean_ - mean_;
  mean_ += delta * nb / n;
  m2_ += other.m2_ + delta * delta * na * nb / n;
  n_ += other.n_;
}

double MeanAccumulator::variance() const noexcept {
  if (n_ < 2) return 0.0;
  return std::max(0.0, m2_ / static_cast<double>(n_ - 1));
}

double MeanAccumulator::sem() const noexcept {
  if (n_ < 2) return 0.0;
  return std::sqrt(variance() / static_cast<double>(n_));
}

std::string_view to_string(StopReason reason) noexcept {
  switch (reason) {
    case StopReason::Relative:
      return "rel-stop";
    case StopReason::Absolute:
      return "abs-stop";
    case StopReason::MaxSamples:
      break;
  }
  return "max-samples";
}

void StoppingRule::validate() const {
  if (!(eps_rel > 0.0)) throw ValidationError("eps_rel must be > 0");
  if (!(eps_abs > 0.0)) throw ValidationError("eps_abs must be > 0");
  if (n_init < 2) throw ValidationError("n_init must be >= 2");
  if (n_max < n_init) throw ValidationError("n_max must be >= n_init");
}

std::optional<StopReason> StoppingRule::check(const MeanAccumulator& acc) const noexcept {
  if (acc.count() < n_init) return std::nullopt;
  const double mean = acc.mean();
  const double sem = acc.sem();
  const bool relative = sem <= eps_rel * std::abs(mean);
  if (literal) {
    if (sem > eps_rel * std::abs(mean) && sem < eps_abs) return std::nullopt;
    return relative ? StopReason::Relative : StopReason::Absolute;
  }
  if (mean + 3.0 * sem <= eps_abs) return StopReason::Absolute;
  if (relative) return StopReason::Relative;
  return std::nullopt;
}

McEstimate run_monte_carlo(const ParticleFunction& value, const StoppingRule& rule,
                           const McOptions& options) {
  if (!options.fixed_count) rule.validate();
  const std::size_t limit = options.fixed_count ? *options.fixed_count : rule.n_max;
  const unsigned threads = detail::resolve_threads(options.threads);
  const std::size_t max_batch = std::max<std::size_t>(1, options.batch);

  McEstimate out;
  MeanAccumulator acc;
  std::size_t next_trace = 2;
  std::vector<double> values;
  bool done = limit == 0;
  while (!done) {
    const std::size_t n = acc.count();
    std::size_t size = n == 0 ? std::max<std::size_t>(rule.n_init, 1) : std::max(n, rule.n_init);
    size = std::min({size, max_batch, limit - n});
    values.resize(size);

    const std::size_t pieces = std::min<std::size_t>(threads, size);
    detail::parallel_for(pieces, threads, [&](std::size_t piece) {
      const std::size_t begin = size * piece / pieces;
      const std::size_t end = size * (piece + 1) / pieces;
      for (std::size_t i = begin; i < end; ++i) values[i] = value(n + i);
    });

    for (double v : values) {
      acc.add(v);
      if (options.trace && acc.count() == next_trace) {
        out.trace.push_back({acc.count(), acc.mean(), acc.sem()});
        next_trace *= 2;
      }
      if (!options.fixed_count) {
        if (auto reason = rule.check(acc)) {
          out.reason = *reason;
          done = true;
          break;
        }
      }
      if (acc.count() >= limit) {
        out.reason = StopReason::MaxSamples;
        done = true;
        break;
      }
    }
  }
  out.mean = acc.mean();
  out.sem = acc.sem();
  out.n = acc.count();
  return out;
}

// ---------------------------------------------------------------------------
// Sweep line

void build_events(std::span<const Interval> intervals, std::vector<Event>& events) {
  events.clear();
  for (const auto& iv : intervals) {
    if (!(iv.hi > iv.lo)) continue;
    events.push_back({iv.lo, +1});
    events.push_back({iv.hi, -1});
  }
  std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) {
    return a.time < b.time || (a.time == b.time && a.delta < b.delta);
  });
}

std::vector<CountSegment> sweep_counts(std::span<const Event> events) {
  std::vector<CountSegment> out;
  int count = 0;
  for (std::size_t i = 0; i < events.size(); ++i) {
    count += events[i].delta;
    if (i + 1 < events.size() && events[i + 1].time > events[i].time) {
      out.push_back({events[i].time, events[i + 1].time, count});
    }
  }
  return out;
}

double congestion_cost_sweep(std::span<const Interval> intervals, std::size_t capacity,
                             std::vector<Event>& scratch) {
  build_events(intervals, scratch);
  const long cap = static_cast<long>(capacity);
  double cost = 0.0;
  long count = 0;
  for (std::size_t i = 0; i + 1 < scratch.size(); ++i) {
    count += scratch[i].delta;
    if (count > cap) {
      const double excess = static_cast<double>(count - cap);
      cost += excess * excess * (scratch[i + 1].time - scratch[i].time);
    }
  }
  return cost;
}

double congestion_cost_sweep(std::span<const Interval> intervals, std::size_t capacity) {
  std::vector<Event> scratch;
  return congestion_cost_sweep(intervals, capacity, scratch);
}

void congested_intervals(std::span<const Interval> intervals, std::size_t capacity,
                         std::vector<Event>& scratch, std::vector<Interval>& out) {
  out.clear();
  build_events(intervals, scratch);
  const long cap = static_cast<long>(capacity);
  long count = 0;
  for (std::size_t i = 0; i + 1 < scratch.size(); ++i) {
    count += scratch[i].delta;
    const double lo = scratch[i].time;
    const double hi = scratch[i + 1].time;
    if (count <= cap || !(hi > lo)) continue;
    if (!out.empty() && out.back().hi == lo) {
      out.back().hi = hi;
    } else {
      out.push_back({lo, hi});
    }
  }
}

std::vector<Interval> congested_intervals(std::span<const Interval> intervals,
                                          std::size_t capacity) {
  std::vector<Event> scratch;
  std::vector<Interval> out;
  congested_intervals(intervals, capacity, scratch, out);
  return out;
}

// ---------------------------------------------------------------------------
// Particle store

namespace {

constexpr std::size_t kChunkParticles = 1024;

enum : std::uint8_t { kEmpty = 0, kWriting = 1, kReady = 2 };

}  // namespace

struct ParticleStore::Chunk {
  explicit Chunk(std::size_t points)
      : data(kChunkParticles * points), state(new std::atomic<std::uint8_t>[kChunkParticles]) {
    for (std::size_t i = 0; i < kChunkParticles; ++i) state[i].store(kEmpty, std::memory_order_relaxed);
  }
  std::vector<double> data;
  std::unique_ptr<std::atomic<std::uint8_t>[]> state;
};

struct ParticleStore::FlightSlots {
  FlightSlots(std::size_t pts, std::size_t n_chunks) : points(pts), chunks(n_chunks) {}
  ~FlightSlots() {
    for (auto& c : chunks) delete c.load(std::memory_order_acquire);
  }
  std::size_t points;
  std::vector<std::atomic<Chunk*>> chunks;
};

ParticleStore::ParticleStore(const Scenario& scenario, const DecisionVector& decision,
                             std::uint64_t seed, std::size_t memory_budget)
    : scenario_(&scenario), decision_(decision), seed_(seed), capacity_(0) {
  check_feasible(scenario, decision);
  std::size_t bytes = 0;
  for (const auto& f : scenario.flights) bytes += f.points.size() * sizeof(double) + 1;
  capacity_ = bytes > 0 ? memory_budget / bytes : 0;
  const std::size_t n_chunks = (capacity_ + kChunkParticles - 1) / kChunkParticles;
  for (const auto& f : scenario.flights) {
    slots_.push_back(std::make_unique<FlightSlots>(f.points.size(), n_chunks));
  }
}

ParticleStore::~ParticleStore() = default;

void ParticleStore::generate(std::uint64_t particle, std::size_t flight,
                             std::span<double> out) const {
  Stream rng = Stream::keyed(seed_, particle, flight);
  forward_sample(scenario_->flights[flight], decision_.flights[flight], scenario_->intent, rng,
                 out);
}

std::span<const double> ParticleStore::trajectory(std::uint64_t particle, std::size_t flight,
                                                  std::vector<double>& scratch) const {
  FlightSlots& fs = *slots_.at(flight);
  const std::size_t pts = fs.points;
  if (particle >= capacity_) {
    scratch.resize(pts);
    generate(particle, flight, scratch);
    return {scratch.data(), pts};
  }
  auto& slot = fs.chunks[particle / kChunkParticles];
  Chunk* chunk = slot.load(std::memory_order_acquire);
  if (chunk == nullptr) {
    auto fresh = std::make_unique<Chunk>(pts);
    if (slot.compare_exchange_strong(chunk, fresh.get(), std::memory_order_acq_rel,
                                     std::memory_order_acquire)) {
      chunk = fresh.release();
    }
  }
  const std::size_t i = particle % kChunkParticles;
  double* data = chunk->data.data() + i * pts;
  std::uint8_t state = chunk->state[i].load(std::memory_order_acquire);
  if (state == kReady) return {data, pts};
  if (state == kEmpty &&
      chunk->state[i].compare_exchange_strong(state, kWriting, std::memory_order_acq_rel)) {
    generate(particle, flight, {data, pts});
    chunk->state[i].store(kReady, std::memory_order_release);
    return {data, pts};
  }
  scratch.resize(pts);
  generate(particle, flight, scratch);
  return {scratch.data(), pts};
}

void visit_intervals(const ParticleStore& store, std::span<const SectorVisit> visits,
                     std::uint64_t particle, std::vector<double>& scratch,
                     std::vector<Interval>& out) {
  out.clear();
  for (const auto& v : visits) {
    const auto t = store.trajectory(particle, v.flight, scratch);
    out.push_back({t[v.crossing.entry], t[v.crossing.exit]});
  }
}

namespace {

struct Workspace {
  std::vector<double> scratch;
  std::vector<Interval> intervals;
  std::vector<Event> events;
};

Workspace& workspace() {
  thread_local Workspace ws;
  return ws;
}

}  // namespace

double congestion_cost_sample(const ParticleStore& store, std::span<const SectorVisit> visits,
                              std::size_t capacity, std::uint64_t particle) {
  Workspace& ws = workspace();
  visit_intervals(store, visits, particle, ws.scratch, ws.intervals);
  return congestion_cost_sweep(ws.intervals, capacity, ws.events);
}

McEstimate expected_congestion_cost_mc(const ParticleStore& store,
                                       std::span<const SectorVisit> visits, std::size_t capacity,
                                       const StoppingRule& rule, const McOptions& options) {
  return run_monte_carlo(
      [&](std::uint64_t p) { return congestion_cost_sample(store, visits, capacity, p); }, rule,
      options);
}

double delay_cost_sample(const ParticleStore& store, std::size_t flight, std::uint64_t particle) {
  Workspace& ws = workspace();
  // Drawn directly; the store cache is not consulted.
  ws.scratch.resize(store.scenario().flights[flight].points.size());
  store.generate(particle, flight, ws.scratch);
  const double late =
      std::max(0.0, ws.scratch.back() - store.scenario().flights[flight].scheduled_arrival);
  return late * late;
}

McEstimate expected_delay_cost_mc(const ParticleStore& store, std::size_t flight,
                                  const StoppingRule& rule, const McOptions& options) {
  if (flight >= store.scenario().flights.size()) throw ValidationError("unknown flight index");
  return run_monte_carlo([&](std::uint64_t p) { return delay_cost_sample(store, flight, p); },
                         rule, options);
}

// ---------------------------------------------------------------------------
// Monitoring

std::optional<double> MonitorMap::find(double t) const {
  auto it = keys_.upper_bound(t - eps_);
  std::optional<double> best;
  for (int k = 0; k < 2 && it != keys_.end() && it->first < t + eps_; ++k, ++it) {
    if (!best || std::abs(it->first - t) < std::abs(*best - t)) best = it->first;
  }
  return best;
}

double MonitorMap::probability_at(double t) const {
  auto it = keys_.upper_bound(t);
  if (it == keys_.begin()) return 0.0;
  return std::prev(it)->second.mean();
}

double MonitorMap::sem_at(double t) const {
  auto it = keys_.upper_bound(t);
  if (it == keys_.begin()) return 0.0;
  return std::prev(it)->second.sem();
}

std::vector<MonitorPoint> MonitorMap::points() const {
  std::vector<MonitorPoint> out;
  out.reserve(keys_.size());
  for (const auto& [t, acc] : keys_) out.push_back({t, acc.mean(), acc.sem(), acc.count()});
  return out;
}

double MonitorMap::max_sem() const noexcept {
  double m = 0.0;
  for (const auto& [t, acc] : keys_) m = std::max(m, acc.sem());
  return m;
}

namespace {

bool covered(std::span<const Interval> set, double t) {
  auto it = std::upper_bound(set.begin(), set.end(), t,
                             [](double v, const Interval& iv) { return v < iv.hi; });
  return it != set.end() && it->lo <= t;
}

}  // namespace

MonitorResult congestion_monitoring(const ParticleStore& store,
                                    std::span<const SectorVisit> visits, std::size_t capacity,
                                    const MonitorOptions& options) {
  if (!(options.merge_eps > 0.0)) throw ValidationError("merge radius must be > 0");
  if (!(options.eps_rel > 0.0)) throw ValidationError("eps_rel must be > 0");
  if (options.n_init < 2) throw ValidationError("n_init must be >= 2");

  MonitorResult res{MonitorMap(options.merge_eps), 0, true};
  MonitorMap& map = res.map;
  for (double t : options.probes) {
    if (!map.find(t)) map.insert(t, MeanAccumulator{});
  }
  if (visits.size() <= capacity && map.empty()) return res;

  std::vector<std::vector<Interval>> history;
  std::vector<double> scratch;
  std::vector<Interval> intervals;
  std::vector<Event> events;
  auto& keys = map.mutable_keys();

  for (std::size_t p = 0; p < options.n_max; ++p) {
    visit_intervals(store, visits, p, scratch, intervals);
    std::vector<Interval> congested;
    congested_intervals(intervals, capacity, events, congested);

    for (const auto& iv : congested) {
      for (double x : {iv.lo, iv.hi}) {
        if (map.find(x)) continue;
        MeanAccumulator acc;
        for (const auto& past : history) acc.add(covered(past, x) ? 1.0 : 0.0);
        map.insert(x, acc);
      }
    }

    std::size_t j = 0;
    double worst = 0.0;
    for (auto& [t, acc] : keys) {
      while (j < congested.size() && congested[j].hi <= t) ++j;
      const bool in = j < congested.size() && congested[j].lo <= t;
      acc.add(in ? 1.0 : 0.0);
      worst = std::max(worst, acc.sem());
    }
    history.push_back(std::move(congested));
    res.particles = p + 1;
    if (res.particles >= options.n_init && worst <= options.eps_rel) return res;
  }
  res.converged = false;
  return res;
}

std::vector<MonitorResult> monitor_all(const ParticleStore& store, const MonitorOptions& options,
                                       unsigned threads) {
  const Scenario& sc = store.scenario();
  const auto visits = sc.visits_by_sector();
  std::vector<MonitorResult> out(sc.airspace.sectors.size());
  detail::parallel_for(out.size(), threads, [&](std::size_t s) {
    out[s] = congestion_monitoring(store, visits[s], sc.airspace.sectors[s].capacity, options);
  });
  return out;
}

}  // namespace pcong

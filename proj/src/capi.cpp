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

#include "pcong/pcong.h"

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "pcong/congestion.hpp"
#include "pcong/costs.hpp"
#include "pcong/error.hpp"
#include "pcong/mc.hpp"
#include "pcong/scenario.hpp"

struct pcong_scenario {
  std::shared_ptr<const pcong::Scenario> scenario;
};

struct pcong_decision {
  std::shared_ptr<const pcong::Scenario> scenario;
  std::shared_ptr<const pcong::DecisionVector> decision;
};

struct pcong_model {
  std::shared_ptr<const pcong::Scenario> scenario;
  std::shared_ptr<const pcong::DecisionVector> decision;
  std::unique_ptr<pcong::QuadratureModel> model;
};

struct pcong_particles {
  std::shared_ptr<const pcong::Scenario> scenario;
  std::shared_ptr<const pcong::DecisionVector> decision;
  std::unique_ptr<pcong::ParticleStore> store;
};

struct pcong_monitor {
  std::vector<std::size_t> sectors;
  std::vector<pcong::MonitorResult> results;
  std::vector<std::vector<pcong_monitor_point>> points;
};

namespace {

thread_local std::string g_error;
thread_local std::string g_error_path;

pcong_status fail(pcong_status status, const std::string& message, const std::string& path = {}) {
  g_error = message;
  g_error_path = path;
  return status;
}

template <class F>
pcong_status guarded(F&& body) {
  try {
    body();
    g_error.clear();
    g_error_path.clear();
    return PCONG_OK;
  } catch (const pcong::SchemaError& e) {
    return fail(PCONG_ERR_SCHEMA, e.what(), e.path());
  } catch (const pcong::Error& e) {
    return fail(static_cast<pcong_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(PCONG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PCONG_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PCONG_ERR_INTERNAL, "unknown error");
  }
}

void require(const void* p, const char* name) {
  if (p == nullptr) throw pcong::ValidationError(std::string(name) + " must not be NULL");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

pcong::IntentModel intent_of(pcong_intent_family family, double width, double lambda) {
  pcong::IntentModel m;
  if (family != PCONG_INTENT_TRIANGULAR && family != PCONG_INTENT_PERT) {
    throw pcong::ValidationError("unknown intent family");
  }
  m.family = family == PCONG_INTENT_PERT ? pcong::IntentFamily::Pert : pcong::IntentFamily::Triangular;
  m.support_width = width;
  m.lambda = lambda;
  return m;
}

pcong::QuadratureSpec spec_of(const pcong_quad_spec* spec) {
  pcong::QuadratureSpec s;
  if (spec != nullptr) {
    s.rel_tol = spec->rel_tol;
    s.abs_tol = spec->abs_tol;
    s.abs_tol_scaled = spec->abs_tol_scaled != 0;
    s.max_subdivisions = spec->max_subdivisions;
  }
  return s;
}

pcong::StoppingRule rule_of(const pcong_stopping_rule* rule) {
  pcong::StoppingRule r;
  if (rule != nullptr) {
    r.eps_rel = rule->eps_rel;
    r.eps_abs = rule->eps_abs;
    r.n_init = rule->n_init;
    r.n_max = rule->n_max;
    r.literal = rule->literal != 0;
  }
  r.validate();
  return r;
}

void fill(const pcong::QuadratureResult& r, pcong_quad_result* out) {
  out->value = r.value;
  out->error_estimate = r.error_estimate;
  out->evaluations = r.evaluations;
  out->converged = r.converged ? 1 : 0;
}

void fill(const pcong::McEstimate& e, pcong_mc_estimate* out) {
  out->mean = e.mean;
  out->sem = e.sem;
  out->n = e.n;
  switch (e.reason) {
    case pcong::StopReason::Relative:
      out->reason = PCONG_STOP_RELATIVE;
      break;
    case pcong::StopReason::Absolute:
      out->reason = PCONG_STOP_ABSOLUTE;
      break;
    case pcong::StopReason::MaxSamples:
      out->reason = PCONG_STOP_MAX_SAMPLES;
      break;
  }
}

const pcong::Scenario& scenario_of(const pcong_scenario* s) {
  require(s, "scenario");
  return *s->scenario;
}

std::shared_ptr<const pcong::Scenario> shared_of(const pcong_scenario* s) {
  require(s, "scenario");
  return s->scenario;
}

void check_index(std::size_t i, std::size_t n, const char* what) {
  if (i >= n) throw pcong::ValidationError(std::string(what) + " index out of range");
}

pcong_scenario* wrap(pcong::Scenario s) {
  return new pcong_scenario{std::make_shared<const pcong::Scenario>(std::move(s))};
}

pcong_decision* wrap(std::shared_ptr<const pcong::Scenario> sc, pcong::DecisionVector d) {
  return new pcong_decision{std::move(sc), std::make_shared<const pcong::DecisionVector>(std::move(d))};
}

std::string read_text(const char* path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw pcong::IoError(std::string("cannot open '") + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<pcong::SectorVisit> visits_of(const pcong::Scenario& sc, std::size_t sector) {
  std::vector<pcong::SectorVisit> out;
  for (std::size_t f = 0; f < sc.flights.size(); ++f) {
    for (const auto& c : sc.flights[f].crossings) {
      if (c.sector == sector) out.push_back({f, c});
    }
  }
  return out;
}

}  // namespace

extern "C" {

const char* pcong_version(void) { return "0.1.0"; }

const char* pcong_last_error(void) { return g_error.c_str(); }

const char* pcong_last_error_path(void) { return g_error_path.c_str(); }

void pcong_string_free(char* s) { std::free(s); }

// ---------------------------------------------------------------------------
// Scenarios

void pcong_corridor_params_default(pcong_corridor_params* p) {
  if (p == nullptr) return;
  const pcong::CorridorParams d;
  p->n_sectors = d.n_sectors;
  p->crossing = d.crossing;
  p->takeoff_earliest = d.takeoff_window.first;
  p->takeoff_latest = d.takeoff_window.second;
  p->scheduled_arrival = d.scheduled_arrival;
  p->family = PCONG_INTENT_TRIANGULAR;
  p->support_width = d.intent.support_width;
  p->lambda = d.intent.lambda;
  p->capacity = d.capacity;
  p->deterministic_inbound = 0;
}

void pcong_grid_params_default(pcong_grid_params* p) {
  if (p == nullptr) return;
  const pcong::GridParams d;
  p->rows = d.rows;
  p->cols = d.cols;
  p->n_flights = d.n_flights;
  p->horizon = d.horizon;
  p->crossing = d.crossing;
  p->family = PCONG_INTENT_TRIANGULAR;
  p->support_width = d.intent.support_width;
  p->lambda = d.intent.lambda;
  p->inbound_half_width = d.inbound_half_width;
  p->takeoff_half_width = d.takeoff_half_width;
  p->base_capacity = d.base_capacity;
  p->ring_step = d.ring_step;
}

pcong_status pcong_scenario_load(const char* path, pcong_scenario** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = wrap(pcong::load_scenario(path));
  });
}

pcong_status pcong_scenario_from_json(const char* json, pcong_scenario** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = wrap(pcong::scenario_from_json(json));
  });
}

pcong_status pcong_scenario_corridor(const pcong_corridor_params* params, pcong_scenario** out) {
  return guarded([&] {
    require(params, "params");
    require(out, "out");
    pcong::CorridorParams p;
    p.n_sectors = params->n_sectors;
    p.crossing = params->crossing;
    p.takeoff_window = {params->takeoff_earliest, params->takeoff_latest};
    p.scheduled_arrival = params->scheduled_arrival;
    p.intent = intent_of(params->family, params->support_width, params->lambda);
    p.capacity = params->capacity;
    if (params->deterministic_inbound) p.inbound = pcong::Distribution::point(0.0);
    *out = wrap(pcong::gen_corridor(p));
  });
}

pcong_status pcong_scenario_grid(const pcong_grid_params* params, pcong_scenario** out) {
  return guarded([&] {
    require(params, "params");
    require(out, "out");
    pcong::GridParams p;
    p.rows = params->rows;
    p.cols = params->cols;
    p.n_flights = params->n_flights;
    p.horizon = params->horizon;
    p.crossing = params->crossing;
    p.intent = intent_of(params->family, params->support_width, params->lambda);
    p.inbound_half_width = params->inbound_half_width;
    p.takeoff_half_width = params->takeoff_half_width;
    p.base_capacity = params->base_capacity;
    p.ring_step = params->ring_step;
    *out = wrap(pcong::gen_grid(p));
  });
}

void pcong_scenario_free(pcong_scenario* scenario) { delete scenario; }

pcong_status pcong_scenario_to_json(const pcong_scenario* scenario, char** out) {
  return guarded([&] {
    require(out, "out");
    *out = copy_string(pcong::scenario_to_json(scenario_of(scenario)));
  });
}

pcong_status pcong_scenario_save(const pcong_scenario* scenario, const char* path) {
  return guarded([&] {
    require(path, "path");
    pcong::save_scenario(scenario_of(scenario), path);
  });
}

size_t pcong_scenario_flight_count(const pcong_scenario* scenario) {
  return scenario ? scenario->scenario->flights.size() : 0;
}

size_t pcong_scenario_sector_count(const pcong_scenario* scenario) {
  return scenario ? scenario->scenario->airspace.sectors.size() : 0;
}

pcong_status pcong_scenario_flight_id(const pcong_scenario* scenario, size_t flight,
                                      const char** out) {
  return guarded([&] {
    require(out, "out");
    const auto& sc = scenario_of(scenario);
    check_index(flight, sc.flights.size(), "flight");
    *out = sc.flights[flight].id.c_str();
  });
}

pcong_status pcong_scenario_sector_id(const pcong_scenario* scenario, size_t sector,
                                      const char** out) {
  return guarded([&] {
    require(out, "out");
    const auto& sc = scenario_of(scenario);
    check_index(sector, sc.airspace.sectors.size(), "sector");
    *out = sc.airspace.sectors[sector].id.c_str();
  });
}

pcong_status pcong_scenario_sector_capacity(const pcong_scenario* scenario, size_t sector,
                                            size_t* out) {
  return guarded([&] {
    require(out, "out");
    const auto& sc = scenario_of(scenario);
    check_index(sector, sc.airspace.sectors.size(), "sector");
    *out = sc.airspace.sectors[sector].capacity;
  });
}

pcong_status pcong_scenario_sector_visits(const pcong_scenario* scenario, size_t sector,
                                          size_t* out) {
  return guarded([&] {
    require(out, "out");
    const auto& sc = scenario_of(scenario);
    check_index(sector, sc.airspace.sectors.size(), "sector");
    *out = visits_of(sc, sector).size();
  });
}

pcong_status pcong_scenario_flight_arrival(const pcong_scenario* scenario, size_t flight,
                                           double* out) {
  return guarded([&] {
    require(out, "out");
    const auto& sc = scenario_of(scenario);
    check_index(flight, sc.flights.size(), "flight");
    *out = sc.flights[flight].scheduled_arrival;
  });
}

// ---------------------------------------------------------------------------
// Decisions

pcong_status pcong_decision_nominal(const pcong_scenario* scenario, pcong_decision** out) {
  return guarded([&] {
    require(out, "out");
    *out = wrap(shared_of(scenario), pcong::nominal_decision(scenario_of(scenario)));
  });
}

pcong_status pcong_decision_sample(const pcong_scenario* scenario, uint64_t seed, uint64_t index,
                                   pcong_decision** out) {
  return guarded([&] {
    require(out, "out");
    pcong::Stream rng = pcong::Stream::keyed(seed, index, 0x6465636973696f6eULL);
    *out = wrap(shared_of(scenario), pcong::sample_decision_vector(scenario_of(scenario), rng));
  });
}

pcong_status pcong_decision_from_json(const pcong_scenario* scenario, const char* json,
                                      pcong_decision** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = wrap(shared_of(scenario), pcong::decision_from_json(scenario_of(scenario), json));
  });
}

pcong_status pcong_decision_load(const pcong_scenario* scenario, const char* path,
                                 pcong_decision** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    const auto& sc = scenario_of(scenario);
    *out = wrap(shared_of(scenario), pcong::decision_from_json(sc, read_text(path)));
  });
}

pcong_status pcong_decision_to_json(const pcong_decision* decision, char** out) {
  return guarded([&] {
    require(decision, "decision");
    require(out, "out");
    *out = copy_string(pcong::decision_to_json(*decision->scenario, *decision->decision));
  });
}

pcong_status pcong_decision_targets(const pcong_decision* decision, size_t flight,
                                    const double** targets, size_t* count) {
  return guarded([&] {
    require(decision, "decision");
    require(targets, "targets");
    require(count, "count");
    check_index(flight, decision->decision->flights.size(), "flight");
    const auto& g = decision->decision->flights[flight];
    *targets = g.data();
    *count = g.size();
  });
}

void pcong_decision_free(pcong_decision* decision) { delete decision; }

// ---------------------------------------------------------------------------
// Quadrature

void pcong_quad_spec_default(pcong_quad_spec* spec) {
  if (spec == nullptr) return;
  const pcong::QuadratureSpec d;
  spec->rel_tol = d.rel_tol;
  spec->abs_tol = d.abs_tol;
  spec->abs_tol_scaled = d.abs_tol_scaled ? 1 : 0;
  spec->max_subdivisions = d.max_subdivisions;
}

pcong_status pcong_model_build(const pcong_decision* decision, double step, unsigned threads,
                               pcong_model** out) {
  return guarded([&] {
    require(decision, "decision");
    require(out, "out");
    auto m = std::make_unique<pcong_model>();
    m->scenario = decision->scenario;
    m->decision = decision->decision;
    m->model = std::make_unique<pcong::QuadratureModel>(*m->scenario, *m->decision, step,
                                                        pcong::propagation_quadrature(), threads);
    *out = m.release();
  });
}

void pcong_model_free(pcong_model* model) { delete model; }

pcong_status pcong_model_delay_cost(const pcong_model* model, size_t flight,
                                    const pcong_quad_spec* spec, pcong_quad_result* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    const auto& sc = *model->scenario;
    check_index(flight, sc.flights.size(), "flight");
    fill(pcong::expected_delay_cost(model->model->marginals(flight).back(),
                                    sc.flights[flight].scheduled_arrival, spec_of(spec)),
         out);
  });
}

pcong_status pcong_model_congestion_cost(const pcong_model* model, size_t sector,
                                         const pcong_quad_spec* spec, pcong_quad_result* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    const auto& sc = *model->scenario;
    check_index(sector, sc.airspace.sectors.size(), "sector");
    const auto sources = model->model->sources(sector);
    fill(pcong::expected_congestion_cost(sources, sc.airspace.sectors[sector].capacity,
                                         sc.airspace.congestion_window(), spec_of(spec)),
         out);
  });
}

pcong_status pcong_model_point_mean(const pcong_model* model, size_t flight, size_t point,
                                    double* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    check_index(flight, model->scenario->flights.size(), "flight");
    const auto& curves = model->model->marginals(flight);
    check_index(point, curves.size(), "point");
    *out = curves[point].mean();
  });
}

pcong_status pcong_model_occupancy(const pcong_model* model, size_t sector, double t,
                                   double* pmf, size_t capacity, size_t* len) {
  return guarded([&] {
    require(model, "model");
    require(len, "len");
    check_index(sector, model->scenario->airspace.sectors.size(), "sector");
    const auto sources = model->model->sources(sector);
    const auto occ = pcong::occupancy_at(sources, t);
    *len = occ.pmf.size();
    if (capacity > 0) require(pmf, "pmf");
    for (std::size_t i = 0; i < occ.pmf.size() && i < capacity; ++i) pmf[i] = occ.pmf[i];
  });
}

pcong_status pcong_model_overload_probability(const pcong_model* model, size_t sector, double t,
                                              double* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    const auto& sc = *model->scenario;
    check_index(sector, sc.airspace.sectors.size(), "sector");
    const auto sources = model->model->sources(sector);
    *out = pcong::overload_probability(pcong::occupancy_at(sources, t),
                                       sc.airspace.sectors[sector].capacity);
  });
}

// ---------------------------------------------------------------------------
// Monte-Carlo

void pcong_stopping_rule_default(pcong_stopping_rule* rule) {
  if (rule == nullptr) return;
  const pcong::StoppingRule d;
  rule->eps_rel = d.eps_rel;
  rule->eps_abs = d.eps_abs;
  rule->n_init = d.n_init;
  rule->n_max = d.n_max;
  rule->literal = d.literal ? 1 : 0;
}

pcong_status pcong_particles_create(const pcong_decision* decision, uint64_t seed,
                                    size_t memory_budget, pcong_particles** out) {
  return guarded([&] {
    require(decision, "decision");
    require(out, "out");
    auto p = std::make_unique<pcong_particles>();
    p->scenario = decision->scenario;
    p->decision = decision->decision;
    p->store = std::make_unique<pcong::ParticleStore>(
        *p->scenario, *p->decision, seed,
        memory_budget == 0 ? pcong::kParticleStoreBudget : memory_budget);
    *out = p.release();
  });
}

void pcong_particles_free(pcong_particles* particles) { delete particles; }

pcong_status pcong_mc_delay_cost(const pcong_particles* particles, size_t flight,
                                 const pcong_stopping_rule* rule, unsigned threads,
                                 pcong_mc_estimate* out) {
  return guarded([&] {
    require(particles, "particles");
    require(out, "out");
    check_index(flight, particles->scenario->flights.size(), "flight");
    pcong::McOptions opt;
    opt.threads = threads;
    fill(pcong::expected_delay_cost_mc(*particles->store, flight, rule_of(rule), opt), out);
  });
}

pcong_status pcong_mc_congestion_cost(const pcong_particles* particles, size_t sector,
                                      const pcong_stopping_rule* rule, unsigned threads,
                                      pcong_mc_estimate* out) {
  return guarded([&] {
    require(particles, "particles");
    require(out, "out");
    const auto& sc = *particles->scenario;
    check_index(sector, sc.airspace.sectors.size(), "sector");
    const auto visits = visits_of(sc, sector);
    pcong::McOptions opt;
    opt.threads = threads;
    fill(pcong::expected_congestion_cost_mc(*particles->store, visits,
                                            sc.airspace.sectors[sector].capacity, rule_of(rule),
                                            opt),
         out);
  });
}

pcong_status pcong_mc_trace(const pcong_particles* particles, pcong_target target, size_t entity,
                            uint64_t n, unsigned threads, pcong_trace_point* points,
                            size_t capacity, size_t* count) {
  return guarded([&] {
    require(particles, "particles");
    require(count, "count");
    const auto& sc = *particles->scenario;
    const auto& store = *particles->store;
    pcong::McOptions opt;
    opt.threads = threads;
    opt.trace = true;
    opt.fixed_count = n;
    pcong::McEstimate est;
    std::vector<pcong::SectorVisit> visits;
    std::size_t cap = 0;
    pcong::ParticleFunction fn;
    if (target == PCONG_TARGET_DELAY) {
      check_index(entity, sc.flights.size(), "flight");
      fn = [&](std::uint64_t p) { return pcong::delay_cost_sample(store, entity, p); };
    } else if (target == PCONG_TARGET_CONGESTION) {
      check_index(entity, sc.airspace.sectors.size(), "sector");
      visits = visits_of(sc, entity);
      cap = sc.airspace.sectors[entity].capacity;
      fn = [&](std::uint64_t p) { return pcong::congestion_cost_sample(store, visits, cap, p); };
    } else {
      throw pcong::ValidationError("unknown trace target");
    }
    est = pcong::run_monte_carlo(fn, pcong::StoppingRule{}, opt);
    *count = est.trace.size();
    if (capacity > 0) require(points, "points");
    for (std::size_t i = 0; i < est.trace.size() && i < capacity; ++i) {
      points[i] = {est.trace[i].n, est.trace[i].mean, est.trace[i].sem};
    }
  });
}

// ---------------------------------------------------------------------------
// Monitoring

void pcong_monitor_options_default(pcong_monitor_options* options) {
  if (options == nullptr) return;
  const pcong::MonitorOptions d;
  options->merge_eps = d.merge_eps;
  options->eps_rel = d.eps_rel;
  options->n_init = d.n_init;
  options->n_max = d.n_max;
}

pcong_status pcong_monitor_run(const pcong_particles* particles,
                               const pcong_monitor_options* options, size_t sector,
                               const double* probes, size_t n_probes, unsigned threads,
                               pcong_monitor** out) {
  return guarded([&] {
    require(particles, "particles");
    require(out, "out");
    if (n_probes > 0) require(probes, "probes");
    const auto& sc = *particles->scenario;
    pcong::MonitorOptions opt;
    if (options != nullptr) {
      opt.merge_eps = options->merge_eps;
      opt.eps_rel = options->eps_rel;
      opt.n_init = options->n_init;
      opt.n_max = options->n_max;
    }
    opt.probes.assign(probes, probes + n_probes);
    auto m = std::make_unique<pcong_monitor>();
    if (sector == SIZE_MAX) {
      m->results = pcong::monitor_all(*particles->store, opt, threads);
      for (std::size_t s = 0; s < m->results.size(); ++s) m->sectors.push_back(s);
    } else {
      check_index(sector, sc.airspace.sectors.size(), "sector");
      const auto visits = visits_of(sc, sector);
      m->results.push_back(pcong::congestion_monitoring(
          *particles->store, visits, sc.airspace.sectors[sector].capacity, opt));
      m->sectors.push_back(sector);
    }
    for (const auto& r : m->results) {
      std::vector<pcong_monitor_point> pts;
      for (const auto& p : r.map.points()) pts.push_back({p.time, p.probability, p.sem, p.count});
      m->points.push_back(std::move(pts));
    }
    *out = m.release();
  });
}

void pcong_monitor_free(pcong_monitor* monitor) { delete monitor; }

namespace {

std::size_t monitored_slot(const pcong_monitor* monitor, std::size_t sector) {
  require(monitor, "monitor");
  for (std::size_t i = 0; i < monitor->sectors.size(); ++i) {
    if (monitor->sectors[i] == sector) return i;
  }
  throw pcong::ValidationError("sector was not monitored");
}

}  // namespace

pcong_status pcong_monitor_points(const pcong_monitor* monitor, size_t sector,
                                  const pcong_monitor_point** points, size_t* count) {
  return guarded([&] {
    require(points, "points");
    require(count, "count");
    const auto& pts = monitor->points[monitored_slot(monitor, sector)];
    *points = pts.data();
    *count = pts.size();
  });
}

pcong_status pcong_monitor_info(const pcong_monitor* monitor, size_t sector, uint64_t* particles,
                                int* converged) {
  return guarded([&] {
    const auto& r = monitor->results[monitored_slot(monitor, sector)];
    if (particles) *particles = r.particles;
    if (converged) *converged = r.converged ? 1 : 0;
  });
}

pcong_status pcong_monitor_probability_at(const pcong_monitor* monitor, size_t sector, double t,
                                          double* probability, double* sem) {
  return guarded([&] {
    const auto& r = monitor->results[monitored_slot(monitor, sector)];
    if (probability) *probability = r.map.probability_at(t);
    if (sem) *sem = r.map.sem_at(t);
  });
}

// ---------------------------------------------------------------------------
// Building blocks

pcong_status pcong_pb_pmf_dft(const double* probs, size_t n, double* pmf) {
  return guarded([&] {
    if (n > 0) require(probs, "probs");
    require(pmf, "pmf");
    const auto occ = pcong::pb_pmf_dft({probs, n});
    std::copy(occ.pmf.begin(), occ.pmf.end(), pmf);
  });
}

pcong_status pcong_pb_pmf_dp(const double* probs, size_t n, double* pmf) {
  return guarded([&] {
    if (n > 0) require(probs, "probs");
    require(pmf, "pmf");
    const auto occ = pcong::pb_pmf_dp({probs, n});
    std::copy(occ.pmf.begin(), occ.pmf.end(), pmf);
  });
}

pcong_status pcong_sweep_cost(const double* lo, const double* hi, size_t n, size_t capacity,
                              double* out) {
  return guarded([&] {
    if (n > 0) {
      require(lo, "lo");
      require(hi, "hi");
    }
    require(out, "out");
    std::vector<pcong::Interval> iv(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (!(lo[i] <= hi[i])) throw pcong::ValidationError("interval must satisfy lo <= hi");
      iv[i] = {lo[i], hi[i]};
    }
    *out = pcong::congestion_cost_sweep(iv, capacity);
  });
}

}  // extern "C"

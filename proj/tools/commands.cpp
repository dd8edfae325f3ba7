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

#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pcong/pcong.h"

namespace pcong::cli {

namespace {

// ---------------------------------------------------------------------------
// C API plumbing

class ApiError : public std::runtime_error {
 public:
  ApiError(pcong_status status, const std::string& what)
      : std::runtime_error(what), status_(status) {}
  pcong_status status() const noexcept { return status_; }

 private:
  pcong_status status_;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void check(pcong_status s) {
  if (s != PCONG_OK) throw ApiError(s, pcong_last_error());
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const noexcept { Free(p); }
};

using ScenarioPtr = std::unique_ptr<pcong_scenario, Deleter<pcong_scenario, pcong_scenario_free>>;
using DecisionPtr = std::unique_ptr<pcong_decision, Deleter<pcong_decision, pcong_decision_free>>;
using ModelPtr = std::unique_ptr<pcong_model, Deleter<pcong_model, pcong_model_free>>;
using ParticlesPtr =
    std::unique_ptr<pcong_particles, Deleter<pcong_particles, pcong_particles_free>>;
using MonitorPtr = std::unique_ptr<pcong_monitor, Deleter<pcong_monitor, pcong_monitor_free>>;

// ---------------------------------------------------------------------------
// Formatting

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string num(std::uint64_t v) { return std::to_string(v); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string stop_label(pcong_stop_reason r) {
  switch (r) {
    case PCONG_STOP_RELATIVE:
      return "rel-stop";
    case PCONG_STOP_ABSOLUTE:
      return "abs-stop";
    case PCONG_STOP_MAX_SAMPLES:
      break;
  }
  return "max-samples";
}

double relative_disagreement(double quad, double mc) {
  const double diff = std::abs(quad - mc);
  if (diff == 0.0) return 0.0;
  if (mc == 0.0) return std::numeric_limits<double>::infinity();
  return diff / std::abs(mc);
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// ---------------------------------------------------------------------------
// Configuration

struct Config {
  std::string scenario;
  std::string method = "quadrature";
  double step = 1.0;
  double eps_rel = 0.01;
  double eps_abs = 0.1;
  std::uint64_t n_init = 30;
  std::uint64_t n_max = 10'000'000;
  bool literal_stop = false;
  double merge_eps = 1.0;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string gamma_file;
  std::optional<std::uint64_t> sweep;
  unsigned threads = 0;
  bool timing = false;
  std::string target = "delay";
  std::uint64_t max_n = 65536;
  std::string entity;

  bool quadrature() const { return method == "quadrature" || method == "both"; }
  bool mc() const { return method == "mc" || method == "both"; }
};

struct GenConfig {
  std::string kind;
  std::string out;
  std::string family = "triangular";
  double support = 180.0;
  double lambda = 4.0;
  std::size_t n_sectors = 11;
  std::size_t capacity = 1;
  bool deterministic = false;
  std::size_t rows = 11;
  std::size_t cols = 11;
  std::size_t flights = 192;
  double horizon = 9000.0;
  double base_capacity = 10.0;
  double ring_step = -1.0;
};

std::uint64_t particle_seed(std::uint64_t seed, std::uint64_t run) {
  return seed + 0x9e3779b97f4a7c15ULL * run;
}

ScenarioPtr load(const Config& cfg) {
  pcong_scenario* s = nullptr;
  check(pcong_scenario_load(cfg.scenario.c_str(), &s));
  return ScenarioPtr(s);
}

std::uint64_t run_count(const Config& cfg) { return cfg.sweep.value_or(1); }

DecisionPtr decision_for(const Config& cfg, const pcong_scenario* sc, std::uint64_t run) {
  pcong_decision* d = nullptr;
  if (!cfg.gamma_file.empty()) {
    check(pcong_decision_load(sc, cfg.gamma_file.c_str(), &d));
  } else if (cfg.sweep) {
    check(pcong_decision_sample(sc, *cfg.seed, run, &d));
  } else {
    check(pcong_decision_nominal(sc, &d));
  }
  return DecisionPtr(d);
}

pcong_stopping_rule rule_of(const Config& cfg) {
  pcong_stopping_rule r;
  pcong_stopping_rule_default(&r);
  r.eps_rel = cfg.eps_rel;
  r.eps_abs = cfg.eps_abs;
  r.n_init = cfg.n_init;
  r.n_max = cfg.n_max;
  r.literal = cfg.literal_stop ? 1 : 0;
  return r;
}

void validate(const Config& cfg, bool needs_seed) {
  if (cfg.method != "quadrature" && cfg.method != "mc" && cfg.method != "both") {
    throw UsageError("--method must be quadrature, mc or both");
  }
  if (needs_seed && !cfg.seed) throw UsageError("--seed is required for Monte-Carlo runs");
  if (cfg.sweep && !cfg.seed) throw UsageError("--sweep needs --seed to draw decision vectors");
  if (cfg.sweep && *cfg.sweep == 0) throw UsageError("--sweep must be >= 1");
  if (cfg.sweep && !cfg.gamma_file.empty()) {
    throw UsageError("--sweep and --gamma-file are mutually exclusive");
  }
}

/// Entities of a scenario in id order: (id, index).
std::vector<std::pair<std::string, std::size_t>> sorted_ids(const pcong_scenario* sc,
                                                            bool sectors) {
  std::vector<std::pair<std::string, std::size_t>> out;
  const std::size_t n =
      sectors ? pcong_scenario_sector_count(sc) : pcong_scenario_flight_count(sc);
  for (std::size_t i = 0; i < n; ++i) {
    const char* id = nullptr;
    check(sectors ? pcong_scenario_sector_id(sc, i, &id) : pcong_scenario_flight_id(sc, i, &id));
    out.emplace_back(id, i);
  }
  std::stable_sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Commands

struct Row {
  std::string method;
  double value = 0.0;
  double error = 0.0;
  std::optional<std::uint64_t> n;
  double wall_ms = 0.0;
  std::string status;
};

int cost_command(const Config& cfg, std::ostream& out, bool congestion) {
  validate(cfg, cfg.mc());
  ScenarioPtr sc = load(cfg);
  const auto entities = sorted_ids(sc.get(), congestion);
  const pcong_stopping_rule rule = rule_of(cfg);
  bool all_converged = true;

  out << "run," << (congestion ? "sector_id" : "flight_id")
      << ",method,value,error,n_samples,wall_ms,status,rel_disagreement\n";
  for (std::uint64_t run = 0; run < run_count(cfg); ++run) {
    DecisionPtr decision = decision_for(cfg, sc.get(), run);
    ModelPtr model;
    double model_ms = 0.0;
    if (cfg.quadrature()) {
      Stopwatch sw;
      pcong_model* m = nullptr;
      check(pcong_model_build(decision.get(), cfg.step, cfg.threads, &m));
      model.reset(m);
      model_ms = sw.ms();
    }
    ParticlesPtr particles;
    if (cfg.mc()) {
      pcong_particles* p = nullptr;
      check(pcong_particles_create(decision.get(), particle_seed(*cfg.seed, run), 0, &p));
      particles.reset(p);
    }

    for (const auto& [id, index] : entities) {
      std::vector<Row> rows;
      if (model) {
        Stopwatch sw;
        pcong_quad_result r;
        check(congestion ? pcong_model_congestion_cost(model.get(), index, nullptr, &r)
                         : pcong_model_delay_cost(model.get(), index, nullptr, &r));
        all_converged = all_converged && r.converged;
        rows.push_back({"quadrature", r.value, r.error_estimate, std::nullopt,
                        sw.ms() + model_ms / static_cast<double>(entities.size()),
                        r.converged ? "ok" : "non-converged"});
      }
      if (particles) {
        Stopwatch sw;
        pcong_mc_estimate e;
        check(congestion
                  ? pcong_mc_congestion_cost(particles.get(), index, &rule, cfg.threads, &e)
                  : pcong_mc_delay_cost(particles.get(), index, &rule, cfg.threads, &e));
        all_converged = all_converged && e.reason != PCONG_STOP_MAX_SAMPLES;
        rows.push_back({"mc", e.mean, e.sem, e.n, sw.ms(), stop_label(e.reason)});
      }
      std::string disagreement;
      if (rows.size() == 2) disagreement = num(relative_disagreement(rows[0].value, rows[1].value));
      for (const auto& r : rows) {
        out << run << ',' << csv_field(id) << ',' << r.method << ',' << num(r.value) << ','
            << num(r.error) << ',' << (r.n ? num(*r.n) : std::string()) << ','
            << (cfg.timing ? num(r.wall_ms) : std::string()) << ',' << r.status << ','
            << disagreement << '\n';
      }
    }
  }
  return all_converged ? kExitOk : kExitNonConvergence;
}

int monitor_command(const Config& cfg, std::ostream& out) {
  validate(cfg, true);
  if (cfg.sweep) throw UsageError("monitor takes a single decision vector; drop --sweep");
  ScenarioPtr sc = load(cfg);
  DecisionPtr decision = decision_for(cfg, sc.get(), 0);
  pcong_particles* p = nullptr;
  check(pcong_particles_create(decision.get(), *cfg.seed, 0, &p));
  ParticlesPtr particles(p);

  pcong_monitor_options opt;
  pcong_monitor_options_default(&opt);
  opt.merge_eps = cfg.merge_eps;
  opt.eps_rel = cfg.eps_rel;
  opt.n_init = cfg.n_init;
  opt.n_max = cfg.n_max;

  auto sectors = sorted_ids(sc.get(), true);
  std::size_t only = SIZE_MAX;
  if (!cfg.entity.empty()) {
    auto it = std::find_if(sectors.begin(), sectors.end(),
                           [&](const auto& s) { return s.first == cfg.entity; });
    if (it == sectors.end()) throw UsageError("unknown sector '" + cfg.entity + "'");
    only = it->second;
    sectors = {*it};
  }
  pcong_monitor* m = nullptr;
  check(pcong_monitor_run(particles.get(), &opt, only, nullptr, 0, cfg.threads, &m));
  MonitorPtr monitor(m);

  bool all_converged = true;
  out << "sector_id,time,probability,sem\n";
  for (const auto& [id, index] : sectors) {
    int converged = 1;
    check(pcong_monitor_info(monitor.get(), index, nullptr, &converged));
    all_converged = all_converged && converged;
    const pcong_monitor_point* pts = nullptr;
    std::size_t n = 0;
    check(pcong_monitor_points(monitor.get(), index, &pts, &n));
    for (std::size_t i = 0; i < n; ++i) {
      out << csv_field(id) << ',' << num(pts[i].time) << ',' << num(pts[i].probability) << ','
          << num(pts[i].sem) << '\n';
    }
  }
  return all_converged ? kExitOk : kExitNonConvergence;
}

int convergence_command(const Config& cfg, std::ostream& out) {
  validate(cfg, true);
  if (cfg.target != "delay" && cfg.target != "congestion") {
    throw UsageError("--target must be delay or congestion");
  }
  const bool congestion = cfg.target == "congestion";
  ScenarioPtr sc = load(cfg);

  const auto ids = sorted_ids(sc.get(), congestion);
  std::optional<std::pair<std::string, std::size_t>> entity;
  for (const auto& e : ids) {
    if (!cfg.entity.empty()) {
      if (e.first == cfg.entity) entity = e;
      continue;
    }
    if (!congestion) {
      entity = e;
      break;
    }
    std::size_t cap = 0, visits = 0;
    check(pcong_scenario_sector_capacity(sc.get(), e.second, &cap));
    check(pcong_scenario_sector_visits(sc.get(), e.second, &visits));
    if (visits > cap) {
      entity = e;
      break;
    }
  }
  if (!entity) {
    throw UsageError(cfg.entity.empty() ? "scenario has no entity to trace"
                                        : "unknown entity '" + cfg.entity + "'");
  }

  out << "run,entity,n,mean,sem\n";
  const pcong_target target = congestion ? PCONG_TARGET_CONGESTION : PCONG_TARGET_DELAY;
  for (std::uint64_t run = 0; run < run_count(cfg); ++run) {
    DecisionPtr decision = decision_for(cfg, sc.get(), run);
    pcong_particles* p = nullptr;
    check(pcong_particles_create(decision.get(), particle_seed(*cfg.seed, run), 0, &p));
    ParticlesPtr particles(p);
    std::size_t count = 0;
    check(pcong_mc_trace(particles.get(), target, entity->second, cfg.max_n, cfg.threads, nullptr,
                         0, &count));
    std::vector<pcong_trace_point> pts(count);
    check(pcong_mc_trace(particles.get(), target, entity->second, cfg.max_n, cfg.threads,
                         pts.data(), pts.size(), &count));
    for (const auto& pt : pts) {
      out << run << ',' << csv_field(entity->first) << ',' << pt.n << ',' << num(pt.mean) << ','
          << num(pt.sem) << '\n';
    }
  }
  return kExitOk;
}

int generate_command(const GenConfig& g) {
  pcong_intent_family family;
  if (g.family == "triangular") {
    family = PCONG_INTENT_TRIANGULAR;
  } else if (g.family == "pert") {
    family = PCONG_INTENT_PERT;
  } else {
    throw UsageError("--family must be triangular or pert");
  }
  pcong_scenario* s = nullptr;
  if (g.kind == "corridor") {
    pcong_corridor_params p;
    pcong_corridor_params_default(&p);
    p.n_sectors = g.n_sectors;
    p.family = family;
    p.support_width = g.support;
    p.lambda = g.lambda;
    p.capacity = g.capacity;
    p.deterministic_inbound = g.deterministic ? 1 : 0;
    check(pcong_scenario_corridor(&p, &s));
  } else {
    pcong_grid_params p;
    pcong_grid_params_default(&p);
    p.rows = g.rows;
    p.cols = g.cols;
    p.n_flights = g.flights;
    p.horizon = g.horizon;
    p.family = family;
    p.support_width = g.support;
    p.lambda = g.lambda;
    p.base_capacity = g.base_capacity;
    p.ring_step = g.ring_step;
    check(pcong_scenario_grid(&p, &s));
  }
  ScenarioPtr sc(s);
  check(pcong_scenario_save(sc.get(), g.out.c_str()));
  return kExitOk;
}

void add_common(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--scenario", cfg.scenario, "Scenario JSON file")->required();
  cmd->add_option("--seed", cfg.seed, "Random seed (required for Monte-Carlo)");
  cmd->add_option("--out", cfg.out, "CSV output path (default: stdout)");
  cmd->add_option("--gamma-file", cfg.gamma_file, "Decision-vector JSON overriding the nominal targets");
  cmd->add_option("--sweep", cfg.sweep, "Number of random decision vectors drawn with --seed");
  cmd->add_option("--threads", cfg.threads, "Worker threads (0: hardware concurrency)");
  cmd->add_option("--eps-rel", cfg.eps_rel, "Relative SEM threshold")->capture_default_str();
  cmd->add_option("--n-init", cfg.n_init, "Particles before the first stopping check")
      ->capture_default_str();
  cmd->add_option("--n-max", cfg.n_max, "Particle limit")->capture_default_str();
}

void add_cost_options(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--method", cfg.method, "quadrature, mc or both")->capture_default_str();
  cmd->add_option("--step", cfg.step, "Quadrature grid step (s)")->capture_default_str();
  cmd->add_option("--eps-abs", cfg.eps_abs, "Absolute cost threshold")->capture_default_str();
  cmd->add_flag("--literal-stop", cfg.literal_stop,
                "Continue only while SEM > eps_rel*mean and SEM < eps_abs");
  cmd->add_flag("--timing", cfg.timing, "Fill the wall_ms column");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Expected delay and congestion costs of probabilistic air-traffic scenarios"};
  app.name("pcong-cli");
  app.require_subcommand(1);

  Config cfg;
  GenConfig gen;

  auto* delay = app.add_subcommand("delay-cost", "Expected delay cost per flight");
  add_common(delay, cfg);
  add_cost_options(delay, cfg);

  auto* congestion = app.add_subcommand("congestion-cost", "Expected congestion cost per sector");
  add_common(congestion, cfg);
  add_cost_options(congestion, cfg);

  auto* monitor = app.add_subcommand("monitor", "Congestion probability over time per sector");
  add_common(monitor, cfg);
  monitor->add_option("--merge-eps", cfg.merge_eps, "Key merge radius (s)")->capture_default_str();
  monitor->add_option("--sector", cfg.entity, "Monitor only this sector id");

  auto* convergence = app.add_subcommand("convergence", "Monte-Carlo accumulator at n = 2, 4, 8, ...");
  add_common(convergence, cfg);
  convergence->add_option("--target", cfg.target, "delay or congestion")->capture_default_str();
  convergence->add_option("--max-n", cfg.max_n, "Particles per run")->capture_default_str();
  convergence->add_option("--entity", cfg.entity,
                          "Flight or sector id (default: first flight, or first sector that can congest)");

  auto* generate = app.add_subcommand("generate", "Write a benchmark scenario");
  generate->require_subcommand(1);
  auto* corridor = generate->add_subcommand("corridor", "One flight crossing sectors in a row");
  auto* grid = generate->add_subcommand("grid", "Square grid crossed along rows and columns");
  for (auto* g : {corridor, grid}) {
    g->add_option("--out", gen.out, "Scenario JSON path")->required();
    g->add_option("--family", gen.family, "Intent family: triangular or pert")->capture_default_str();
    g->add_option("--support", gen.support, "Intent support width (s)")->capture_default_str();
    g->add_option("--lambda", gen.lambda, "PERT shape weight")->capture_default_str();
  }
  corridor->add_option("--n-sectors", gen.n_sectors)->capture_default_str();
  corridor->add_option("--capacity", gen.capacity)->capture_default_str();
  corridor->add_flag("--deterministic-inbound", gen.deterministic, "Point-mass inbound law");
  grid->add_option("--rows", gen.rows)->capture_default_str();
  grid->add_option("--cols", gen.cols)->capture_default_str();
  grid->add_option("--flights", gen.flights)->capture_default_str();
  grid->add_option("--horizon", gen.horizon)->capture_default_str();
  grid->add_option("--base-capacity", gen.base_capacity)->capture_default_str();
  grid->add_option("--ring-step", gen.ring_step)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitFailure;
  }

  try {
    if (generate->parsed()) {
      gen.kind = corridor->parsed() ? "corridor" : "grid";
      return generate_command(gen);
    }
    std::ostringstream buffer;
    int code = kExitOk;
    if (delay->parsed()) {
      code = cost_command(cfg, buffer, false);
    } else if (congestion->parsed()) {
      code = cost_command(cfg, buffer, true);
    } else if (monitor->parsed()) {
      code = monitor_command(cfg, buffer);
    } else {
      code = convergence_command(cfg, buffer);
    }
    if (cfg.out.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
      if (!file) throw ApiError(PCONG_ERR_IO, "cannot open '" + cfg.out + "' for writing");
      file << buffer.str();
    }
    if (code == kExitNonConvergence) err << "warning: some estimates did not converge\n";
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const ApiError& e) {
    err << "error: " << e.what() << '\n';
    if (e.status() == PCONG_ERR_SCHEMA) return kExitSchema;
    if (e.status() == PCONG_ERR_NONCONVERGENCE) return kExitNonConvergence;
    return kExitFailure;
  }
}

}  // namespace pcong::cli

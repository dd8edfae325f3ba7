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

#include "pcong/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <set>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "pcong/error.hpp"

namespace pcong {

using Json = nlohmann::ordered_json;

namespace {

std::string at_index(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

std::string at_key(const std::string& base, const char* key) {
  return base.empty() ? std::string(key) : base + "." + key;
}

void require_object(const Json& j, const std::string& path,
                    std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw SchemaError(path.empty() ? "$" : path, "expected an object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) throw SchemaError(at_key(path, key.c_str()), "unknown key");
  }
}

const Json& field(const Json& j, const std::string& path, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(at_key(path, key), "missing required key");
  return *it;
}

double number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw SchemaError(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) throw SchemaError(path, "expected a finite number");
  return v;
}

std::string text(const Json& j, const std::string& path) {
  if (!j.is_string()) throw SchemaError(path, "expected a string");
  return j.get<std::string>();
}

std::size_t count(const Json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  if (j.is_number_integer()) throw SchemaError(path, "must be a non-negative integer");
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (v >= 0.0 && std::floor(v) == v && v < 9.0e15) return static_cast<std::size_t>(v);
  }
  throw SchemaError(path, "must be a non-negative integer");
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw SchemaError(path, "expected an array");
  return j;
}

std::pair<double, double> ordered_pair(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(path, "expected [start, end]");
  const double a = number(j[0], at_index(path, 0));
  const double b = number(j[1], at_index(path, 1));
  if (a > b) throw SchemaError(path, "start must not exceed end");
  return {a, b};
}

template <class F>
auto rethrow_as_schema(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    throw SchemaError(path, e.what());
  }
}

Distribution distribution_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw SchemaError(path, "expected a distribution record");
  const std::string kind = text(field(j, path, "kind"), at_key(path, "kind"));
  if (kind == "triangular") {
    require_object(j, path, {"kind", "min", "mode", "max"});
    const double a = number(field(j, path, "min"), at_key(path, "min"));
    const double m = number(field(j, path, "mode"), at_key(path, "mode"));
    const double b = number(field(j, path, "max"), at_key(path, "max"));
    return rethrow_as_schema(path, [&] { return Distribution::triangular(a, m, b); });
  }
  if (kind == "pert") {
    require_object(j, path, {"kind", "min", "mode", "max", "lambda"});
    const double a = number(field(j, path, "min"), at_key(path, "min"));
    const double m = number(field(j, path, "mode"), at_key(path, "mode"));
    const double b = number(field(j, path, "max"), at_key(path, "max"));
    const double lambda =
        j.contains("lambda") ? number(j["lambda"], at_key(path, "lambda")) : kDefaultPertLambda;
    return rethrow_as_schema(path, [&] { return Distribution::pert(a, m, b, lambda); });
  }
  if (kind == "pwl") {
    require_object(j, path, {"kind", "knots"});
    const std::string kpath = at_key(path, "knots");
    const Json& ks = array(field(j, path, "knots"), kpath);
    std::vector<Knot> knots;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      const std::string p = at_index(kpath, i);
      if (!ks[i].is_array() || ks[i].size() != 2) throw SchemaError(p, "expected [time, density]");
      knots.push_back({number(ks[i][0], at_index(p, 0)), number(ks[i][1], at_index(p, 1))});
    }
    return rethrow_as_schema(path, [&] { return Distribution::piecewise_linear(knots); });
  }
  throw SchemaError(at_key(path, "kind"), "expected \"triangular\", \"pert\" or \"pwl\"");
}

Json distribution_to_json(const Distribution& d) {
  Json j;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Triangular>) {
          j["kind"] = "triangular";
          j["min"] = p.min;
          j["mode"] = p.mode;
          j["max"] = p.max;
        } else if constexpr (std::is_same_v<T, Pert>) {
          j["kind"] = "pert";
          j["min"] = p.min;
          j["mode"] = p.mode;
          j["max"] = p.max;
          j["lambda"] = p.lambda;
        } else if constexpr (std::is_same_v<T, PiecewiseLinear>) {
          j["kind"] = "pwl";
          Json ks = Json::array();
          for (const auto& k : p.raw) ks.push_back(Json::array({k.time, k.density}));
          j["knots"] = std::move(ks);
        } else {
          j["kind"] = "triangular";
          j["min"] = p.at;
          j["mode"] = p.at;
          j["max"] = p.at;
        }
      },
      d.params());
  return j;
}

IntentModel intent_from_json(const Json& j) {
  const std::string path = "intent";
  require_object(j, path, {"family", "support_s", "lambda"});
  IntentModel m;
  const std::string family = text(field(j, path, "family"), "intent.family");
  if (family == "triangular") {
    m.family = IntentFamily::Triangular;
  } else if (family == "pert") {
    m.family = IntentFamily::Pert;
  } else {
    throw SchemaError("intent.family", "expected \"triangular\" or \"pert\"");
  }
  m.support_width = number(field(j, path, "support_s"), "intent.support_s");
  if (m.support_width < 0.0) throw SchemaError("intent.support_s", "must be >= 0");
  if (j.contains("lambda")) {
    m.lambda = number(j["lambda"], "intent.lambda");
    if (!(m.lambda > 0.0)) throw SchemaError("intent.lambda", "must be > 0");
  }
  return m;
}

FlightPlan flight_from_json(const Json& j, const std::string& path,
                            const std::unordered_map<std::string, std::size_t>& sectors) {
  require_object(j, path, {"id", "points", "durations", "crossings", "scheduled_arrival",
                           "takeoff_window", "inbound"});
  FlightPlan f;
  f.id = text(field(j, path, "id"), at_key(path, "id"));

  const std::string ppath = at_key(path, "points");
  const Json& pts = array(field(j, path, "points"), ppath);
  for (std::size_t i = 0; i < pts.size(); ++i) f.points.push_back(text(pts[i], at_index(ppath, i)));
  if (f.points.size() < 2) throw SchemaError(ppath, "needs at least 2 points");

  const std::string dpath = at_key(path, "durations");
  const Json& ds = array(field(j, path, "durations"), dpath);
  if (ds.size() + 1 != f.points.size()) {
    throw SchemaError(dpath, "needs exactly one duration per segment");
  }
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const double d = number(ds[i], at_index(dpath, i));
    if (!(d > 0.0)) throw SchemaError(at_index(dpath, i), "must be > 0");
    f.durations.push_back(d);
  }

  const std::string cpath = at_key(path, "crossings");
  const Json& cs = array(field(j, path, "crossings"), cpath);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const std::string p = at_index(cpath, i);
    require_object(cs[i], p, {"sector", "entry_idx", "exit_idx"});
    const std::string sid = text(field(cs[i], p, "sector"), at_key(p, "sector"));
    auto it = sectors.find(sid);
    if (it == sectors.end()) throw SchemaError(at_key(p, "sector"), "unknown sector '" + sid + "'");
    Crossing c;
    c.sector = it->second;
    c.entry = count(field(cs[i], p, "entry_idx"), at_key(p, "entry_idx"));
    c.exit = count(field(cs[i], p, "exit_idx"), at_key(p, "exit_idx"));
    if (!(c.entry < c.exit) || c.exit >= f.points.size()) {
      throw SchemaError(p, "expected entry_idx < exit_idx < number of points");
    }
    f.crossings.push_back(c);
  }

  f.scheduled_arrival =
      number(field(j, path, "scheduled_arrival"), at_key(path, "scheduled_arrival"));
  f.takeoff_window = ordered_pair(field(j, path, "takeoff_window"), at_key(path, "takeoff_window"));
  f.inbound = distribution_from_json(field(j, path, "inbound"), at_key(path, "inbound"));
  return f;
}

Json pair_json(std::pair<double, double> p) { return Json::array({p.first, p.second}); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("failed writing '" + path + "'");
}

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError("$", std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Scenario

void Scenario::validate() const {
  const auto [h0, h1] = airspace.horizon;
  if (!std::isfinite(h0) || !std::isfinite(h1) || !(h0 < h1)) {
    throw ValidationError("horizon must be a nonempty finite interval");
  }
  if (airspace.congestion_horizon) {
    const auto [c0, c1] = *airspace.congestion_horizon;
    if (!(c0 < c1) || c0 < h0 || c1 > h1) {
      throw ValidationError("congestion horizon must be a nonempty sub-interval of the horizon");
    }
  }
  std::set<std::string> ids;
  for (const auto& s : airspace.sectors) {
    if (!ids.insert(s.id).second) throw ValidationError("duplicate sector id '" + s.id + "'");
  }
  if (!(intent.support_width >= 0.0) || !std::isfinite(intent.support_width)) {
    throw ValidationError("intent support width must be >= 0");
  }
  if (!(intent.lambda > 0.0)) throw ValidationError("intent lambda must be > 0");
  ids.clear();
  for (const auto& f : flights) {
    if (!ids.insert(f.id).second) throw ValidationError("duplicate flight id '" + f.id + "'");
    validate_flight(f, airspace.sectors.size());
    if (!intent.deterministic()) {
      for (double d : f.durations) {
        if (!(d > 0.5 * intent.support_width)) {
          throw ValidationError("flight '" + f.id +
                                "': every duration must exceed half the intent support");
        }
      }
    }
    check_feasible(f, intent, nominal_targets(f));
  }
}

std::optional<std::size_t> Scenario::sector_index(const std::string& id) const {
  for (std::size_t i = 0; i < airspace.sectors.size(); ++i) {
    if (airspace.sectors[i].id == id) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Scenario::flight_index(const std::string& id) const {
  for (std::size_t i = 0; i < flights.size(); ++i) {
    if (flights[i].id == id) return i;
  }
  return std::nullopt;
}

std::vector<std::vector<SectorVisit>> Scenario::visits_by_sector() const {
  std::vector<std::vector<SectorVisit>> out(airspace.sectors.size());
  for (std::size_t f = 0; f < flights.size(); ++f) {
    for (const auto& c : flights[f].crossings) out[c.sector].push_back({f, c});
  }
  return out;
}

// ---------------------------------------------------------------------------
// JSON

Scenario scenario_from_json(const std::string& content) {
  const Json j = parse(content);
  require_object(j, "", {"horizon", "congestion_horizon", "sectors", "intent", "flights"});
  Scenario s;
  s.airspace.horizon = ordered_pair(field(j, "", "horizon"), "horizon");
  if (!(s.airspace.horizon.first < s.airspace.horizon.second)) {
    throw SchemaError("horizon", "must be nonempty");
  }
  if (j.contains("congestion_horizon")) {
    s.airspace.congestion_horizon = ordered_pair(j["congestion_horizon"], "congestion_horizon");
  }

  std::unordered_map<std::string, std::size_t> sector_ids;
  const Json& secs = array(field(j, "", "sectors"), "sectors");
  for (std::size_t i = 0; i < secs.size(); ++i) {
    const std::string p = at_index("sectors", i);
    require_object(secs[i], p, {"id", "capacity"});
    Sector sec;
    sec.id = text(field(secs[i], p, "id"), at_key(p, "id"));
    sec.capacity = count(field(secs[i], p, "capacity"), at_key(p, "capacity"));
    if (!sector_ids.emplace(sec.id, i).second) throw SchemaError(at_key(p, "id"), "duplicate id");
    s.airspace.sectors.push_back(std::move(sec));
  }

  s.intent = intent_from_json(field(j, "", "intent"));

  const Json& fls = array(field(j, "", "flights"), "flights");
  for (std::size_t i = 0; i < fls.size(); ++i) {
    const std::string p = at_index("flights", i);
    FlightPlan f = flight_from_json(fls[i], p, sector_ids);
    rethrow_as_schema(p, [&] {
      validate_flight(f, s.airspace.sectors.size());
      return 0;
    });
    s.flights.push_back(std::move(f));
  }
  rethrow_as_schema("$", [&] {
    s.validate();
    return 0;
  });
  return s;
}

std::string scenario_to_json(const Scenario& s) {
  Json j;
  j["horizon"] = pair_json(s.airspace.horizon);
  if (s.airspace.congestion_horizon) {
    j["congestion_horizon"] = pair_json(*s.airspace.congestion_horizon);
  }
  Json secs = Json::array();
  for (const auto& sec : s.airspace.sectors) {
    Json o;
    o["id"] = sec.id;
    o["capacity"] = sec.capacity;
    secs.push_back(std::move(o));
  }
  j["sectors"] = std::move(secs);

  Json intent;
  intent["family"] = s.intent.family == IntentFamily::Pert ? "pert" : "triangular";
  intent["support_s"] = s.intent.support_width;
  intent["lambda"] = s.intent.lambda;
  j["intent"] = std::move(intent);

  Json fls = Json::array();
  for (const auto& f : s.flights) {
    Json o;
    o["id"] = f.id;
    o["points"] = f.points;
    o["durations"] = f.durations;
    Json cs = Json::array();
    for (const auto& c : f.crossings) {
      Json co;
      co["sector"] = s.airspace.sectors.at(c.sector).id;
      co["entry_idx"] = c.entry;
      co["exit_idx"] = c.exit;
      cs.push_back(std::move(co));
    }
    o["crossings"] = std::move(cs);
    o["scheduled_arrival"] = f.scheduled_arrival;
    o["takeoff_window"] = pair_json(f.takeoff_window);
    o["inbound"] = distribution_to_json(f.inbound);
    fls.push_back(std::move(o));
  }
  j["flights"] = std::move(fls);
  return j.dump(2) + "\n";
}

Scenario load_scenario(const std::string& path) { return scenario_from_json(read_file(path)); }

void save_scenario(const Scenario& scenario, const std::string& path) {
  write_file(path, scenario_to_json(scenario));
}

DecisionVector decision_from_json(const Scenario& scenario, const std::string& content) {
  const Json j = parse(content);
  require_object(j, "", {"flights"});
  const Json& fls = array(field(j, "", "flights"), "flights");
  DecisionVector out;
  out.flights.resize(scenario.flights.size());
  std::vector<bool> seen(scenario.flights.size(), false);
  for (std::size_t i = 0; i < fls.size(); ++i) {
    const std::string p = at_index("flights", i);
    require_object(fls[i], p, {"id", "targets"});
    const std::string id = text(field(fls[i], p, "id"), at_key(p, "id"));
    const auto idx = scenario.flight_index(id);
    if (!idx) throw SchemaError(at_key(p, "id"), "unknown flight '" + id + "'");
    if (seen[*idx]) throw SchemaError(at_key(p, "id"), "duplicate flight '" + id + "'");
    seen[*idx] = true;
    const std::string tpath = at_key(p, "targets");
    const Json& ts = array(field(fls[i], p, "targets"), tpath);
    FlightTargets g;
    for (std::size_t k = 0; k < ts.size(); ++k) g.push_back(number(ts[k], at_index(tpath, k)));
    const FlightPlan& f = scenario.flights[*idx];
    if (auto v = feasibility_violation(f, scenario.intent, g)) throw SchemaError(tpath, *v);
    out.flights[*idx] = std::move(g);
  }
  for (std::size_t f = 0; f < seen.size(); ++f) {
    if (!seen[f]) throw SchemaError("flights", "missing targets for flight '" + scenario.flights[f].id + "'");
  }
  return out;
}

std::string decision_to_json(const Scenario& scenario, const DecisionVector& decision) {
  Json fls = Json::array();
  for (std::size_t f = 0; f < scenario.flights.size(); ++f) {
    Json o;
    o["id"] = scenario.flights[f].id;
    o["targets"] = decision.flights.at(f);
    fls.push_back(std::move(o));
  }
  Json j;
  j["flights"] = std::move(fls);
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Decisions

DecisionVector nominal_decision(const Scenario& scenario) {
  DecisionVector d;
  for (const auto& f : scenario.flights) d.flights.push_back(nominal_targets(f));
  return d;
}

void check_feasible(const Scenario& scenario, const DecisionVector& decision) {
  if (decision.flights.size() != scenario.flights.size()) {
    throw ValidationError("decision vector must hold one target list per flight");
  }
  for (std::size_t f = 0; f < scenario.flights.size(); ++f) {
    check_feasible(scenario.flights[f], scenario.intent, decision.flights[f]);
  }
}

DecisionVector sample_decision_vector(const Scenario& scenario, Stream& rng) {
  const double half = 0.5 * scenario.intent.support_width;
  DecisionVector out;
  for (const auto& f : scenario.flights) {
    FlightTargets g(f.points.size());
    const auto [lo, hi] = f.takeoff_window;
    g[0] = lo + (hi - lo) * rng.uniform();
    for (std::size_t i = 0; i < f.durations.size(); ++i) {
      g[i + 1] = g[i] + f.durations[i] - half + 2.0 * half * rng.uniform();
    }
    out.flights.push_back(std::move(g));
  }
  return out;
}

Distribution departure_delay_standin() {
  // Linear tail between knots: mass on [900, 3600] is 0.16, on [300, 900]
  // 0.20 and on [0, 300] 0.64.
  const double h2 = 0.16 / 1350.0;
  const double h1 = 0.20 / 300.0 - h2;
  const double h0 = 0.64 / 150.0 - h1;
  return Distribution::piecewise_linear({{0.0, h0}, {300.0, h1}, {900.0, h2}, {3600.0, 0.0}});
}

// ---------------------------------------------------------------------------
// Generators

Scenario gen_corridor(const CorridorParams& params) {
  if (params.n_sectors < 1) throw ValidationError("corridor needs at least one sector");
  if (!(params.crossing > 0.0)) throw ValidationError("crossing duration must be > 0");
  Scenario s;
  s.intent = params.intent;
  FlightPlan f;
  f.id = "F000";
  for (std::size_t i = 0; i <= params.n_sectors; ++i) f.points.push_back("P" + std::to_string(i));
  for (std::size_t i = 0; i < params.n_sectors; ++i) {
    s.airspace.sectors.push_back({"S" + std::to_string(i + 1), params.capacity});
    f.durations.push_back(params.crossing);
    f.crossings.push_back({i, i, i + 1});
  }
  f.scheduled_arrival = params.scheduled_arrival;
  f.takeoff_window = params.takeoff_window;
  f.inbound = params.inbound ? *params.inbound : departure_delay_standin();

  const auto [in_lo, in_hi] = f.inbound.support();
  const double half = 0.5 * params.intent.support_width;
  const double span = static_cast<double>(params.n_sectors) * (params.crossing + half);
  const double start = std::min(0.0, std::floor(params.takeoff_window.first + in_lo));
  const double end = std::ceil(params.takeoff_window.second + in_hi + span);
  s.airspace.horizon = {start, end};
  s.flights.push_back(std::move(f));
  s.validate();
  return s;
}

Scenario gen_grid(const GridParams& p) {
  if (p.rows < 1 || p.cols < 1) throw ValidationError("grid needs at least one row and column");
  if (p.n_flights < 1) throw ValidationError("grid needs at least one flight");
  if (!(p.crossing > 0.0)) throw ValidationError("crossing duration must be > 0");
  Scenario s;
  s.intent = p.intent;
  s.airspace.horizon = {0.0, p.horizon};

  const double centre_r = 0.5 * static_cast<double>(p.rows - 1);
  const double centre_c = 0.5 * static_cast<double>(p.cols - 1);
  for (std::size_t r = 0; r < p.rows; ++r) {
    for (std::size_t c = 0; c < p.cols; ++c) {
      const double ring = std::max(std::abs(static_cast<double>(r) - centre_r),
                                   std::abs(static_cast<double>(c) - centre_c));
      const double cap = std::max(0.0, std::round(p.base_capacity + p.ring_step * ring));
      char id[32];
      std::snprintf(id, sizeof id, "R%02zuC%02zu", r, c);
      s.airspace.sectors.push_back({id, static_cast<std::size_t>(cap)});
    }
  }

  const std::size_t per_direction = (p.n_flights + 3) / 4;
  const std::size_t longest = std::max(p.rows, p.cols);
  const double half = 0.5 * p.intent.support_width;
  const double first = p.inbound_half_width + p.takeoff_half_width;
  const double last = p.horizon - static_cast<double>(longest) * (p.crossing + half) -
                      p.inbound_half_width - p.takeoff_half_width;
  if (last < first) throw ValidationError("grid horizon too short for the route length");
  const Distribution inbound =
      p.inbound_half_width > 0.0
          ? Distribution::triangular(-p.inbound_half_width, 0.0, p.inbound_half_width)
          : Distribution::point(0.0);

  for (std::size_t j = 0; j < p.n_flights; ++j) {
    const std::size_t dir = j % 4;
    const std::size_t m = j / 4;
    const bool along_row = dir == 0 || dir == 2;
    const std::size_t lines = along_row ? p.rows : p.cols;
    const std::size_t len = along_row ? p.cols : p.rows;
    const std::size_t line = m % lines;

    // Cells in flight order, and the boundary-point naming of the line.
    std::vector<std::size_t> cells;
    std::string line_name;
    bool reversed = false;
    for (std::size_t k = 0; k < len; ++k) {
      switch (dir) {
        case 0:
          cells.push_back(grid_sector(line, k, p.cols));
          break;
        case 1:
          cells.push_back(grid_sector(k, p.cols - 1 - line, p.cols));
          break;
        case 2:
          cells.push_back(grid_sector(p.rows - 1 - line, p.cols - 1 - k, p.cols));
          break;
        default:
          cells.push_back(grid_sector(p.rows - 1 - k, line, p.cols));
          break;
      }
    }
    switch (dir) {
      case 0:
        line_name = "H" + std::to_string(line);
        break;
      case 1:
        line_name = "V" + std::to_string(p.cols - 1 - line);
        break;
      case 2:
        line_name = "H" + std::to_string(p.rows - 1 - line);
        reversed = true;
        break;
      default:
        line_name = "V" + std::to_string(line);
        reversed = true;
        break;
    }

    FlightPlan f;
    char id[32];
    std::snprintf(id, sizeof id, "F%03zu", j);
    f.id = id;
    for (std::size_t k = 0; k <= len; ++k) {
      const std::size_t b = reversed ? len - k : k;
      f.points.push_back(line_name + "." + std::to_string(b));
    }
    for (std::size_t k = 0; k < len; ++k) {
      f.durations.push_back(p.crossing);
      f.crossings.push_back({cells[k], k, k + 1});
    }
    const double takeoff =
        per_direction > 1
            ? first + (last - first) * static_cast<double>(m) / static_cast<double>(per_direction - 1)
            : first;
    f.takeoff_window = {takeoff - p.takeoff_half_width, takeoff + p.takeoff_half_width};
    f.scheduled_arrival = takeoff + static_cast<double>(len) * p.crossing;
    f.inbound = inbound;
    s.flights.push_back(std::move(f));
  }
  s.validate();
  return s;
}

}  // namespace pcong

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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "pcong-cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = pcong::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Workdir {
  fs::path dir;
  Workdir() : dir(fs::temp_directory_path() / "pcong_cli_test") {
    fs::create_directories(dir);
  }
  ~Workdir() { fs::remove_all(dir); }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("generate and cost a corridor with both backends") {
  Workdir w;
  REQUIRE(cli({"generate", "corridor", "--out", w / "c.json"}).code == 0);
  const auto r = cli({"delay-cost", "--scenario", w / "c.json", "--method", "both", "--seed", "3"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == std::vector<std::string>{"run", "flight_id", "method", "value", "error", "n_samples",
                                            "wall_ms", "status", "rel_disagreement"});
  CHECK(rows[1][2] == "quadrature");
  CHECK(rows[2][2] == "mc");
  CHECK(rows[2][7] == "rel-stop");
  CHECK(rows[1][6].empty());
  CHECK(std::stod(rows[1][8]) < 0.05);
  CHECK(rows[1][8] == rows[2][8]);
}

TEST_CASE("deterministic corridor delay equals the analytic square") {
  Workdir w;
  REQUIRE(cli({"generate", "corridor", "--out", w / "d.json", "--support", "0", "--deterministic-inbound"}).code == 0);
  std::ostringstream g;
  g << R"({"flights":[{"id":"F000","targets":[)";
  for (int i = 0; i <= 11; ++i) g << (i ? "," : "") << 1500 + 600 * i;
  g << "]}]}";
  std::ofstream(w / "g.json") << g.str();
  const auto r = cli({"delay-cost", "--scenario", w / "d.json", "--method", "both", "--seed", "1",
                      "--gamma-file", w / "g.json"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  CHECK(rows[1][3] == "90000");
  CHECK(rows[2][3] == "90000");
  CHECK(rows[2][7] == "rel-stop");
}

TEST_CASE("sweeps are reproducible and timing is opt-in") {
  Workdir w;
  REQUIRE(cli({"generate", "corridor", "--out", w / "c.json"}).code == 0);
  const std::vector<std::string> args{"delay-cost", "--scenario", w / "c.json", "--sweep", "30", "--seed", "9", "--step", "5"};
  const auto a = cli(args), b = cli(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto rows = parse_csv(a.out);
  CHECK(rows.size() == 31);
  CHECK(rows[30][0] == "29");

  auto timed = args;
  timed.push_back("--timing");
  const auto t = parse_csv(cli(timed).out);
  CHECK_FALSE(t[1][6].empty());
}

TEST_CASE("congestion cost flags absolute stops") {
  Workdir w;
  REQUIRE(cli({"generate", "corridor", "--out", w / "c.json", "--capacity", "5"}).code == 0);
  const auto r = cli({"congestion-cost", "--scenario", w / "c.json", "--method", "both", "--seed", "2"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 23);
  CHECK(rows[0][1] == "sector_id");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i][3] == "0");
    if (rows[i][2] == "mc") CHECK(rows[i][7] == "abs-stop");
  }
}

TEST_CASE("monitor output of a deterministic corridor") {
  Workdir w;
  REQUIRE(cli({"generate", "corridor", "--out", w / "d.json", "--support", "0", "--deterministic-inbound",
               "--capacity", "0"}).code == 0);
  const auto r = cli({"monitor", "--scenario", w / "d.json", "--seed", "1", "--out", w / "m.csv"});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  const auto rows = parse_csv(read(w.dir / "m.csv"));
  CHECK(rows[0] == std::vector<std::string>{"sector_id", "time", "probability", "sem"});
  std::map<std::string, int> keys;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    ++keys[rows[i][0]];
    const double p = std::stod(rows[i][2]);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
  }
  CHECK(keys.size() == 11);
  for (const auto& [id, n] : keys) CHECK(n == 2);

  const auto one = cli({"monitor", "--scenario", w / "d.json", "--seed", "1", "--sector", "S3"});
  CHECK(parse_csv(one.out).size() == 3);
}

TEST_CASE("convergence checkpoints double") {
  Workdir w;
  REQUIRE(cli({"generate", "corridor", "--out", w / "c.json"}).code == 0);
  const auto r = cli({"convergence", "--scenario", w / "c.json", "--seed", "4", "--max-n", "4096", "--sweep", "2"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  CHECK(rows[0] == std::vector<std::string>{"run", "entity", "n", "mean", "sem"});
  REQUIRE(rows.size() == 1 + 2 * 12);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(std::stod(rows[i][4]) > 0.0);
    if (i > 1 && rows[i][0] == rows[i - 1][0]) CHECK(std::stoul(rows[i][2]) == 2 * std::stoul(rows[i - 1][2]));
  }
}

TEST_CASE("exit codes") {
  Workdir w;
  std::ofstream(w / "bad.json") << R"({"horizon":[0,1],"sectors":[{"id":"A","capacity":-1}],"intent":{"family":"pert","support_s":1},"flights":[]})";
  const auto schema = cli({"delay-cost", "--scenario", w / "bad.json"});
  CHECK(schema.code == 2);
  CHECK(schema.err.find("sectors[0].capacity") != std::string::npos);

  REQUIRE(cli({"generate", "corridor", "--out", w / "c.json"}).code == 0);
  const auto capped = cli({"delay-cost", "--scenario", w / "c.json", "--method", "mc", "--seed", "1",
                           "--n-init", "2", "--n-max", "5", "--eps-rel", "1e-6"});
  CHECK(capped.code == 3);
  CHECK(parse_csv(capped.out)[1][7] == "max-samples");

  CHECK(cli({"delay-cost", "--scenario", w / "c.json", "--method", "mc"}).code == 1);
  CHECK(cli({"delay-cost", "--scenario", w / "c.json", "--method", "simplex"}).code == 1);
  CHECK(cli({"delay-cost", "--scenario", w / "missing.json"}).code == 1);
  CHECK(cli({"frobnicate"}).code == 1);
  CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("literal stopping flag changes the congestion stop") {
  Workdir w;
  REQUIRE(cli({"generate", "grid", "--out", w / "g.json", "--rows", "3", "--cols", "3", "--flights", "24",
               "--horizon", "4000", "--base-capacity", "3"}).code == 0);
  const auto normal = cli({"congestion-cost", "--scenario", w / "g.json", "--method", "mc", "--seed", "5"});
  const auto literal = cli({"congestion-cost", "--scenario", w / "g.json", "--method", "mc", "--seed", "5", "--literal-stop"});
  CHECK(normal.code == 0);
  CHECK(literal.code == 0);
  CHECK(normal.out != literal.out);
}

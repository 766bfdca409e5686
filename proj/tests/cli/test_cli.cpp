// Copyright 2026 The dapt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dapt/models.hpp"
#include "dapt_tools/cli.hpp"
#include "dapt_tools/commands.hpp"
#include "dapt_tools/config.hpp"
#include "dapt_tools/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

using namespace dapt;
using namespace dapt::tools;
namespace fs = std::filesystem;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::kConfigError;
}

/// Fresh scratch directory per test case.
struct Scratch {
  fs::path dir;
  Scratch() {
    std::random_device rd;
    dir = fs::temp_directory_path() / ("dapt_cli_" + std::to_string(rd()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string operator/(const std::string& name) const { return (dir / name).string(); }
};

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "dapt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::vector<CMatrix> constant_samples(std::size_t nodes) {
  CMatrix h = CMatrix::Zero(2, 2);
  h(0, 0) = -0.5;
  h(1, 1) = 1.5;
  return std::vector<CMatrix>(nodes, h);
}

}  // namespace

TEST_CASE("config layering") {
  RunConfig c;
  c.merge({{"w", 0.02}, {"order", 2}, {"v_list", {0.1, 0.2}}, {"high_order", true}});
  CHECK(c.w == 0.02);
  CHECK(c.order == 2);
  CHECK(c.v_list == std::vector<double>{0.1, 0.2});
  CHECK(c.high_order);
  CHECK(c.nodes == 2001);
  CHECK(kind_of([&] { c.merge({{"omega", 1.0}}); }) == ErrorKind::kConfigError);
  CHECK(kind_of([&] { c.merge({{"nodes", "many"}}); }) == ErrorKind::kConfigError);

  SUBCASE("round trip through JSON") {
    RunConfig d;
    d.merge(c.to_json());
    CHECK(d.to_json() == c.to_json());
  }
  SUBCASE("validation") {
    RunConfig bad;
    bad.order = 3;
    CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::kConfigError);
    bad = RunConfig{};
    bad.nodes = 2;
    CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::kConfigError);
    bad = RunConfig{};
    bad.model = "ising";
    CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::kConfigError);
    CHECK_NOTHROW(RunConfig{}.validate());
  }
  SUBCASE("file layer") {
    Scratch tmp;
    std::ofstream(tmp / "c.json") << R"({"theta": 0.5, "nodes": 301})";
    const RunConfig f = load_config_file(tmp / "c.json");
    CHECK(f.theta == 0.5);
    CHECK(f.nodes == 301);
    CHECK(kind_of([&] { load_config_file(tmp / "missing.json"); }) == ErrorKind::kIoError);
    std::ofstream(tmp / "broken.json") << "{nodes: ";
    CHECK(kind_of([&] { load_config_file(tmp / "broken.json"); }) == ErrorKind::kConfigError);
  }
}

TEST_CASE("flags override the config file") {
  Scratch tmp;
  std::ofstream(tmp / "c.json") << R"({"theta": 0.5, "nodes": 301, "w": 0.05})";
  REQUIRE(run({"validate", "-c", tmp / "c.json", "-N", "201", "-o", tmp / "v"}) == 0);
  std::ifstream in(tmp / "v.json");
  const auto j = nlohmann::json::parse(in);
  CHECK(j["config"]["nodes"] == 201);
  CHECK(j["config"]["theta"] == 0.5);
  CHECK(j["config"]["w"] == 0.05);
}

TEST_CASE("CSV keeps 17 significant digits") {
  Scratch tmp;
  Table t;
  t.columns = {"a", "b"};
  t.rows = {{std::numbers::pi, 1e-300}, {-1.0 / 3.0, 6.02214076e23}};
  write_csv(tmp / "t.csv", t);
  const Table back = read_csv(tmp / "t.csv");
  CHECK(back.columns == t.columns);
  CHECK(back.rows == t.rows);
  CHECK(back.column("b") == 1);
  CHECK(kind_of([&] { back.column("c"); }) == ErrorKind::kConfigError);
  CHECK(kind_of([&] { read_csv(tmp / "none.csv"); }) == ErrorKind::kIoError);
}

TEST_CASE("Hamiltonian file round trip") {
  Scratch tmp;
  const GammaModel m{1.0, 0.9, 0.05, 1.0};
  const Grid grid(21);
  std::vector<CMatrix> samples;
  for (double s : grid.points()) samples.push_back(gamma_hamiltonian(m, m.time(s)));
  write_hamiltonian_file(tmp / "h.txt", samples);
  const SampledHamiltonian h = read_hamiltonian_file(tmp / "h.txt");
  CHECK(h.dim() == 4);
  for (std::size_t k = 0; k < grid.size(); ++k) CHECK((h.at(grid[k]) - samples[k]).norm() == 0.0);

  SUBCASE("malformed files") {
    std::ofstream(tmp / "short.txt") << "2 3\n0 1,0 0,0 0,0 1,0\n";
    CHECK(kind_of([&] { read_hamiltonian_file(tmp / "short.txt"); }) == ErrorKind::kIoError);
    std::ofstream(tmp / "offgrid.txt") << "1 2\n0 1,0\n0.7 1,0\n";
    CHECK(kind_of([&] { read_hamiltonian_file(tmp / "offgrid.txt"); }) == ErrorKind::kIoError);
    CHECK(kind_of([&] { read_hamiltonian_file(tmp / "absent.txt"); }) == ErrorKind::kIoError);
  }
}

TEST_CASE("exit codes") {
  Scratch tmp;
  CHECK(run({"evolve", "-o", tmp / "x", "--hamiltonian-file", tmp / "missing.txt", "--model", "file"}) == 3);
  CHECK(run({"evolve", "-o", tmp / "x", "-N", "2"}) == 2);
  CHECK(run({"evolve", "--no-such-flag"}) == 2);
  CHECK(run({"sweep", "-o", tmp / "x", "--v-list", "0.1", "0.1", "0.2", "0.3"}) == 6);
  CHECK(run({"sweep", "-o", tmp / "x", "--w-list", "0.01", "0.02", "0.03", "0.04"}) == 6);
  CHECK(run({"evolve", "-o", tmp / "x", "-N", "101", "--gap-floor", "10"}) == 4);

  // Two levels that cross at s = 1/2.
  std::vector<CMatrix> crossing;
  for (int k = 0; k < 11; ++k) {
    CMatrix h = CMatrix::Zero(2, 2);
    h(0, 0) = k / 10.0 - 0.5;
    h(1, 1) = 0.5 - k / 10.0;
    crossing.push_back(h);
  }
  write_hamiltonian_file(tmp / "cross.txt", crossing);
  CHECK(run({"dapt", "-o", tmp / "x", "--model", "file", "--hamiltonian-file", tmp / "cross.txt"}) == 5);
  CHECK(exit_code(ErrorKind::kConfigError) == 2);
  CHECK(exit_code(ErrorKind::kDimensionMismatch) == 15);
}

TEST_CASE("evolve") {
  Scratch tmp;
  SUBCASE("default Gamma run") {
    RunConfig c;
    c.out = tmp / "e";
    const auto j = cmd_evolve(c);
    CHECK(j["sup_residual"].get<double>() <= 1e-3);
    CHECK(j["max_norm_drift"].get<double>() <= 1e-10);
    const Table t = read_csv(tmp / "e.csv");
    CHECK(t.rows.size() == 2001);
    CHECK(t.columns.front() == "s");
    CHECK(fs::exists(tmp / "e.json"));
  }
  SUBCASE("constant file Hamiltonian at order 0") {
    write_hamiltonian_file(tmp / "c.txt", constant_samples(101));
    RunConfig c;
    c.model = "file";
    c.hamiltonian_file = tmp / "c.txt";
    c.v = 0.05;
    c.order = 0;
    c.out = tmp / "e";
    CHECK(cmd_evolve(c)["sup_residual"].get<double>() <= 1e-9);
  }
}

TEST_CASE("holonomy") {
  Scratch tmp;
  SUBCASE("perpendicular field has a diagonal holonomy") {
    RunConfig c;
    c.theta = std::numbers::pi / 2;
    c.out = tmp / "h";
    const auto j = cmd_holonomy(c);
    const Table t = read_csv(tmp / "h.csv");
    double off = 0.0;
    for (const auto& row : t.rows) {
      for (const char* name : {"U0_01_re", "U0_01_im", "U0_10_re", "U0_10_im"}) off = std::max(off, std::abs(row[t.column(name)]));
    }
    CHECK(off <= 1e-10);
    CHECK(j["closed_form_final_error"].get<double>() <= 1e-6);
    CHECK(j.contains("cyclic_holonomy"));
  }
  SUBCASE("closed form at the default angle") {
    RunConfig c;
    c.out = tmp / "h";
    const auto j = cmd_holonomy(c);
    CHECK(j["closed_form_final_error"].get<double>() <= 1e-6);
    for (const auto& e : j["holonomy_unitarity_error"]) CHECK(e.get<double>() <= 1e-8);
  }
  SUBCASE("constant Hamiltonian has trivial holonomy") {
    write_hamiltonian_file(tmp / "c.txt", constant_samples(51));
    RunConfig c;
    c.model = "file";
    c.hamiltonian_file = tmp / "c.txt";
    c.out = tmp / "h";
    cmd_holonomy(c);
    const Table t = read_csv(tmp / "h.csv");
    for (const auto& row : t.rows) {
      CHECK(std::abs(row[t.column("U0_00_re")] - 1.0) <= 1e-12);
      CHECK(std::abs(row[t.column("U0_00_im")]) <= 1e-12);
      CHECK(std::abs(row[t.column("U1_00_re")] - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("dapt reports vanishing start values") {
  Scratch tmp;
  RunConfig c;
  c.order = 2;
  c.nodes = 501;
  c.out = tmp / "d";
  const auto j = cmd_dapt(c);
  CHECK(j["dims"] == std::vector<int>{2, 2});
  for (std::size_t p = 1; p < j["start_norm_per_order"].size(); ++p) CHECK(j["start_norm_per_order"][p].get<double>() <= 1e-10);
  CHECK(read_csv(tmp / "d.csv").rows.size() == 501);
}

TEST_CASE("validate") {
  Scratch tmp;
  RunConfig c;
  c.out = tmp / "v";
  c.nodes = 501;
  CHECK(cmd_validate(c)["adiabatic_ok"].get<bool>());
  c.w = 10.0;
  CHECK_FALSE(cmd_validate(c)["adiabatic_ok"].get<bool>());
}

TEST_CASE("sweep and fit-order agree on the orders") {
  Scratch tmp;
  RunConfig c;
  c.nodes = 1001;
  c.w_list = {0.004, 0.008, 0.016, 0.04};
  c.workers = 2;
  c.out = tmp / "s";
  const auto j = cmd_sweep(c);
  const double s0 = j["slopes"]["residual_order0"]["slope"].get<double>();
  const double s1 = j["slopes"]["residual_order1"]["slope"].get<double>();
  CHECK(s0 == doctest::Approx(1.0).epsilon(0.1));
  CHECK(s1 == doctest::Approx(2.0).epsilon(0.1));

  RunConfig f;
  f.input = tmp / "s.csv";
  f.out = tmp / "f";
  const auto g = cmd_fit_order(f);
  CHECK(g["slopes"]["residual_order0"]["slope"].get<double>() == doctest::Approx(s0).epsilon(1e-12));
  CHECK(g["slopes"]["residual_order1"]["slope"].get<double>() == doctest::Approx(s1).epsilon(1e-12));
  CHECK(kind_of([&] {
          RunConfig both = c;
          both.v_list = {0.1, 0.2, 0.5, 1.0};
          cmd_sweep(both);
        }) == ErrorKind::kConfigError);
}

TEST_CASE("version string") { CHECK(version().rfind("0.1.0", 0) == 0); }

// Copyright 2026 The gsprep Authors
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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "gsprep/config.hpp"
#include "gsprep/fit.hpp"
#include "gsprep/io.hpp"
#include "gsprep/plot.hpp"
#include "gsprep/runner.hpp"

using namespace gsprep;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("gsprep_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string field_error(const std::string& text, bool is_json = false) {
  try {
    validate(parse_config_text(text, is_json));
  } catch (const Error& e) {
    CHECK(is_config_kind(e.kind()));
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("toml subset") {
    json j = parse_toml(R"(
# comment
engine = "quasifree"   # trailing
scan = [20, 40,
        60]
flag = true
x = -1.5e-3
[model]
name = "tfim"
g = 1.5
[filter]
delta = 0.5
inline = { a = 1, b = "two" }
a.b.c = 3
)");
    CHECK(j["engine"] == "quasifree");
    CHECK(j["scan"] == json::array({20, 40, 60}));
    CHECK(j["flag"] == true);
    CHECK(j["x"].get<double>() == doctest::Approx(-1.5e-3));
    CHECK(j["model"]["g"].get<double>() == 1.5);
    CHECK(j["filter"]["inline"]["b"] == "two");
    CHECK(j["filter"]["a"]["b"]["c"] == 3);
    CHECK_THROWS_AS(parse_toml("[[runs]]\nx = 1\n"), Error);
    CHECK_THROWS_AS(parse_toml("x = \n"), Error);
  }

  TEST_CASE("config round trip") {
    ExperimentConfig c = parse_config_text(R"(
engine = "dense"
couplings = ["X0", "0.5*Y1 Z2"]
scan = [3, 4, 5]
seed = 42
initial_states = ["all_up", "random_pure:2"]
[model]
name = "cluster"
h1 = 0.3
[filter]
delta = 0.2
quadrature = true
)", false);
    validate(c);
    CHECK(c.couplings == "custom");
    CHECK(c.coupling_list.size() == 2);
    CHECK(c.model.h1 == 0.3);
    CHECK(c.filter.quadrature);
    json j = to_json(c);
    ExperimentConfig back = config_from_json(j);
    CHECK(to_json(back) == j);
    CHECK(config_hash(to_json(back)) == config_hash(j));
    CHECK(hex64(config_hash(j)).size() == 16);
    // JSON and TOML spellings of the same config hash alike
    ExperimentConfig again = parse_config_text(j.dump(), true);
    CHECK(config_hash(to_json(again)) == config_hash(j));
  }

  TEST_CASE("validation names the field") {
    CHECK(field_error("enigne = \"dense\"\n").find("enigne") != std::string::npos);
    CHECK(field_error("[model]\nname = \"potts\"\n").find("model.name") != std::string::npos);
    CHECK(field_error("couplings = \"nope\"\n").find("couplings") != std::string::npos);
    CHECK(field_error("couplings = \"bulk\"\n").find("couplings") != std::string::npos);
    CHECK(field_error("engine = \"dense\"\nscan = [4, 13]\n").find("scan") != std::string::npos);
    CHECK(field_error("dt = -1\n").find("dt") != std::string::npos);
    CHECK(field_error("eta = 1.5\n").find("eta") != std::string::npos);
    CHECK(field_error("initial = \"sideways\"\n").find("initial") != std::string::npos);
    CHECK(field_error("[filter]\ndelta = 3.0\nomega_max = 4.0\n").find("filter.delta") != std::string::npos);
    CHECK(field_error("{\"n\": \"four\"}", true).find("n") != std::string::npos);
    CHECK(field_error("engine = \"dense\"\n").empty());
  }

  TEST_CASE("csv io") {
    fs::path dir = scratch("csv");
    CsvTable t{{"t", "v"}, {{0.0, 1.0 / 3.0}, {0.1, std::nan("")}, {1e-300, -2.5}}};
    write_csv((dir / "a.csv").string(), t);
    CsvTable back = read_csv((dir / "a.csv").string());
    CHECK(back.header == t.header);
    CHECK(back.rows[0][1] == t.rows[0][1]);  // shortest round-trip formatting
    CHECK(std::isnan(back.rows[1][1]));
    CHECK(back.rows[2][0] == 1e-300);
    CHECK(back.values("v").size() == 3);
    CHECK_THROWS_AS(back.values("w"), Error);
    CHECK_THROWS_AS(parse_csv(""), Error);
    CHECK_THROWS_AS(parse_csv("a,b\n1\n"), Error);
    CHECK_THROWS_AS(parse_csv("a\nx\n"), Error);
    fs::remove_all(dir);
  }

  TEST_CASE("hamiltonian json") {
    SpinHamiltonian h = build_cluster(5, 1.0, 0.4);
    json j = to_json(h, {{"model", "cluster"}});
    SpinHamiltonian back = hamiltonian_from_json(j);
    CHECK(back.n_sites == 5);
    CHECK((dense_matrix(back) - dense_matrix(h)).norm() == 0.0);
    j["terms"][0]["sites"] = {7};
    j["terms"][0]["letters"] = "X";
    CHECK_THROWS_AS(hamiltonian_from_json(j), Error);
  }

  TEST_CASE("scaling fits") {
    std::vector<double> xs = {2, 4, 8, 16, 32}, ys, ls;
    for (double x : xs) ys.push_back(std::pow(x, -3.0));
    ScanFit f = scan_fit(xs, ys);
    CHECK(f.fit.slope == doctest::Approx(-3.0).epsilon(1e-12));
    CHECK(f.fit.r2 == doctest::Approx(1.0));
    CHECK(f.ok);
    for (double x : xs) ls.push_back(2.5 * std::log(x));
    ScanFit s = scan_fit_semilog(xs, ls);
    CHECK(s.fit.r2 > 0.99);
    CHECK(s.fit.slope == doctest::Approx(2.5));
    CHECK_THROWS_AS(fit_scaling({1, 2, -3}, {1, 2, 3}), Error);
    CHECK(!scan_fit({1, 2, 3}, {1, 2, 3}).ok);
  }

  TEST_CASE("plots") {
    fs::path dir = scratch("plot");
    CsvTable scan{{"N", "gap", "fit_rate", "e0", "t_end"}, {}};
    for (double n : {20.0, 40.0, 60.0, 80.0}) scan.rows.push_back({n, std::pow(n, -3.0), 1.05 * std::pow(n, -3.0), -1, 1});
    write_csv((dir / "scan.csv").string(), scan);
    plot_csv((dir / "scan.csv").string(), PlotKind::loglog, (dir / "scan.svg").string());
    std::string svg = read_text((dir / "scan.svg").string());
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("slope -3") != std::string::npos);
    CHECK(svg.find("fit_rate") != std::string::npos);

    CsvTable traj{{"t", "energy", "sop", "tracedist_proxy"}, {}};
    for (int i = 0; i < 50; ++i) traj.rows.push_back({0.1 * i, -1.0 + std::exp(-0.1 * i), 0.0, std::exp(-0.05 * i)});
    CHECK(render_svg(traj, PlotKind::semilogy).find("energy - final") != std::string::npos);
    CHECK_THROWS_AS(recognize_schema(CsvTable{{"q", "r"}, {{1, 2}}}), Error);
    CHECK_THROWS_AS(recognize_schema(CsvTable{{"t", "norm"}, {}}), Error);
    CHECK_THROWS_AS(parse_plot_kind("pie"), Error);
    fs::remove_all(dir);
  }

  TEST_CASE("parallel map merges by index") {
    auto f = [](std::size_t i) { return static_cast<int>(i * i); };
    auto serial = parallel_map<int>(37, f, 1);
    auto threaded = parallel_map<int>(37, f, 4);
    CHECK(serial == threaded);
    CHECK(serial[6] == 36);
    CHECK_THROWS_AS(parallel_map<int>(5, [](std::size_t i) -> int {
                      if (i == 3) throw Error(ErrorKind::domain, "boom");
                      return 0;
                    }, 3),
                    Error);
  }

  TEST_CASE("sop endpoints stay in the bulk with even span") {
    ExperimentConfig c;
    for (int n : {10, 20, 21, 33}) {
      auto [a, b] = sop_endpoints(c, n);
      CHECK(a >= 1);
      CHECK(b <= n - 2);
      CHECK((b - a) % 2 == 0);
    }
  }

  TEST_CASE("runs are deterministic and serial equals parallel") {
    ExperimentConfig c;
    c.engine = "quasifree";
    c.scan = {6, 8, 10, 12};
    c.t_end = 5.0;
    c.dt = 0.05;
    c.stride = 5;
    fs::path d1 = scratch("run1"), d2 = scratch("run2");
    c.output = d1.string();
    setenv("GSPREP_WORKERS", "1", 1);
    json a = run_quasifree(c);
    c.output = d2.string();
    setenv("GSPREP_WORKERS", "3", 1);
    json b = run_quasifree(c);
    unsetenv("GSPREP_WORKERS");
    for (const char* f : {"scan.csv", "quasifree_N6.csv", "quasifree_N12.csv"})
      CHECK(read_text((d1 / f).string()) == read_text((d2 / f).string()));
    CHECK(a["records"] == b["records"]);
    CHECK(a["config_hash"].get<std::string>().size() == 16);
    CHECK(read_json((d1 / "run.json").string())["command"] == "quasifree-run");
    fs::remove_all(d1);
    fs::remove_all(d2);
  }

  TEST_CASE("small dense and oscillator runs write their artifacts") {
    ExperimentConfig c;
    c.engine = "dense";
    c.model.name = "zfield";
    c.model.g = 1.0;
    c.couplings = "bulk";
    c.scan = {2, 3};
    c.t_end = 12.0;
    c.dt = 0.02;
    c.stride = 10;
    c.filter.omega_max = 4.0;
    fs::path d = scratch("dense");
    c.output = d.string();
    json r = run_dense(c);
    CHECK(fs::exists(d / "dense_N2_maximally_mixed.csv"));
    CHECK(fs::exists(d / "scan.csv"));
    CHECK(r["records"].size() == 2);
    CHECK(!r["records"][0]["tau_fidelity"].is_null());

    c.couplings = "theorem2";
    c.coherent = false;
    c.scan = {2};
    c.observable = "Z0";
    c.t_end = 6.0;
    json o = run_oscillator_check(c);
    CHECK(o["rate"].get<double>() == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(fs::exists(d / "oscillator.csv"));
    fs::remove_all(d);
  }
}

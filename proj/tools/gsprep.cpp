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

// gsprep command line: one subcommand per experiment kind plus fit and plot utilities.

#include <CLI11.hpp>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>

#include "gsprep/config.hpp"
#include "gsprep/fit.hpp"
#include "gsprep/plot.hpp"
#include "gsprep/runner.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct RunArgs {
  std::string config;
  std::string output;
  int workers = 0;
};

void add_run_options(CLI::App* sub, RunArgs& a) {
  sub->add_option("config", a.config, "experiment config (.toml or .json)")->required()->check(CLI::ExistingFile);
  sub->add_option("-o,--output", a.output, "output directory (overrides the config)");
  sub->add_option("-w,--workers", a.workers, "worker threads (overrides GSPREP_WORKERS)")->check(CLI::PositiveNumber);
}

gsprep::ExperimentConfig load(const RunArgs& a) {
  gsprep::ExperimentConfig c = gsprep::load_config(a.config);
  if (!a.output.empty()) c.output = a.output;
  gsprep::validate(c);
  return c;
}

int report(const gsprep::Error& e, const std::string& context) {
  std::cerr << "gsprep " << context << ": " << e.what() << '\n';
  return gsprep::is_config_kind(e.kind()) ? kExitConfig : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dissipative ground-state preparation experiments"};
  app.require_subcommand(1);

  using Driver = std::function<gsprep::json(const gsprep::ExperimentConfig&)>;
  const std::vector<std::pair<std::string, Driver>> drivers = {
      {"quasifree-run", gsprep::run_quasifree},   {"dense-run", gsprep::run_dense},
      {"gap-scan", gsprep::run_gap_scan},         {"sop-run", gsprep::run_sop},
      {"oscillator-check", gsprep::run_oscillator_check}, {"asp-compare", gsprep::run_asp_compare},
  };
  std::map<std::string, RunArgs> run_args;
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, driver] : drivers) {
    subs[name] = app.add_subcommand(name, "run the " + name + " experiment");
    add_run_options(subs[name], run_args[name]);
  }

  std::string fit_csv, fit_x = "N", fit_y = "gap";
  bool fit_semilog = false;
  CLI::App* fit = app.add_subcommand("fit", "least-squares scaling fit of two CSV columns");
  fit->add_option("csv", fit_csv, "input CSV")->required()->check(CLI::ExistingFile);
  fit->add_option("-x", fit_x, "x column")->capture_default_str();
  fit->add_option("-y", fit_y, "y column")->capture_default_str();
  fit->add_flag("--semilog", fit_semilog, "fit y against ln x instead of ln y against ln x");

  std::string plot_csv_path, plot_kind = "line", plot_out;
  CLI::App* plot = app.add_subcommand("plot", "render a recognized CSV as SVG");
  plot->add_option("csv", plot_csv_path, "input CSV")->required()->check(CLI::ExistingFile);
  plot->add_option("-k,--kind", plot_kind, "line | loglog | semilogy")->capture_default_str();
  plot->add_option("-o,--out", plot_out, "output SVG (default: CSV path with .svg)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  for (const auto& [name, driver] : drivers) {
    if (!subs[name]->parsed()) continue;
    const RunArgs& a = run_args[name];
    try {
      if (a.workers > 0) setenv("GSPREP_WORKERS", std::to_string(a.workers).c_str(), 1);
      gsprep::ExperimentConfig c = load(a);
      gsprep::json summary = driver(c);
      summary.erase("config");
      std::cout << summary.dump(2) << '\n';
      return 0;
    } catch (const gsprep::Error& e) {
      return report(e, name);
    } catch (const std::exception& e) {
      std::cerr << "gsprep " << name << ": " << e.what() << '\n';
      return kExitNumerical;
    }
  }

  try {
    if (fit->parsed()) {
      gsprep::CsvTable t = gsprep::read_csv(fit_csv);
      auto xs = t.values(fit_x), ys = t.values(fit_y);
      gsprep::ScanFit f = fit_semilog ? gsprep::scan_fit_semilog(xs, ys) : gsprep::scan_fit(xs, ys);
      gsprep::json j{{"x", fit_x},         {"y", fit_y},   {"semilog", fit_semilog},
                     {"slope", f.fit.slope}, {"intercept", f.fit.intercept}, {"r2", f.fit.r2},
                     {"ci95", f.ci95},       {"points", xs.size()}};
      if (!f.note.empty()) j["note"] = f.note;
      std::cout << j.dump(2) << '\n';
      return 0;
    }
    if (plot->parsed()) {
      std::string out = plot_out;
      if (out.empty()) {
        out = plot_csv_path;
        auto dot = out.rfind('.');
        out = (dot == std::string::npos ? out : out.substr(0, dot)) + ".svg";
      }
      gsprep::plot_csv(plot_csv_path, gsprep::parse_plot_kind(plot_kind), out);
      std::cout << out << '\n';
      return 0;
    }
  } catch (const gsprep::Error& e) {
    return report(e, fit->parsed() ? "fit" : "plot");
  }
  return kExitConfig;
}

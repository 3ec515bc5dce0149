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

#ifndef GSPREP_CONFIG_HPP
#define GSPREP_CONFIG_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gsprep/io.hpp"

namespace gsprep {

// TOML subset: tables, dotted keys, strings, numbers, booleans, arrays and inline tables.
json parse_toml(const std::string& text);

struct ModelConfig {
  std::string name = "tfim";  // tfim | cluster | random_tfim | annni | heisenberg | zfield
  double j = 1.0;
  double g = 1.5;
  double h1 = 0.5;
  double j1 = 2.0, j2 = 0.6, gamma = 0.2;
  double xi = 0.0;
  double mean = 2.0, variance = 0.0;
  std::string boundary = "open";
};

struct FilterConfig {
  double delta = 0.0;      // 0 picks a per-model default
  double omega_max = 0.0;  // 0 means 2 * norm_bound
  bool quadrature = false; // dense engine: jumps from the time-domain table
};

struct AdiabaticConfig {
  double total_time = 1000.0;
  double dt = 0.0125;
  double h0 = 1.0;
  double dsp_time = 100.0;
  double dsp_dt = 0.1;
  int stride = 80;
};

struct ExperimentConfig {
  ModelConfig model;
  std::string engine = "quasifree";  // quasifree | dense | adiabatic
  std::string couplings = "boundary";
  std::vector<std::string> coupling_list;  // explicit Pauli strings override the preset
  FilterConfig filter;
  std::string initial = "maximally_mixed";
  std::vector<std::string> initial_states;  // dense engine: several starts
  double t_end = 10.0;
  double dt = 0.01;
  int stride = 10;
  double horizon = 0.0;  // quasifree: t_end = horizon / gap when positive
  int steps = 2000;      // step count used with horizon
  std::string method;  // empty picks the engine default (propagator, interaction_rk4)
  bool coherent = true;
  std::vector<int> scan;  // site counts; empty means {n}
  int n = 4;
  double eta = 0.5;
  double cluster_tol = 0.0;
  int sop_a = -1, sop_b = -1;  // -1 picks bulk endpoints
  std::vector<double> sweep;   // h1 values for sop-run ground sweep
  std::string observable = "Z0";
  double ground_tol = 1e-4;
  std::uint64_t seed = 0;
  std::string output = "out";
  AdiabaticConfig adiabatic;

  std::vector<int> sizes() const { return scan.empty() ? std::vector<int>{n} : scan; }
};

// Throws Error(config) naming the offending field.
ExperimentConfig config_from_json(const json& j);
json to_json(const ExperimentConfig& c);
void validate(const ExperimentConfig& c);

// Chooses the parser by extension (.json, otherwise TOML).
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, bool is_json);

}  // namespace gsprep

#endif  // GSPREP_CONFIG_HPP

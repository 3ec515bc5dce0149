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

#ifndef GSPREP_FILTER_HPP
#define GSPREP_FILTER_HPP

#include <limits>
#include <string>
#include <vector>

#include "gsprep/types.hpp"

namespace gsprep {

// Frequency window: rises from 0 at omega = 0 to 1 at -delta, flat on the
// passband [a, b] = [-omega_max + delta, -delta], falls to 0 at -omega_max.
struct FilterSpec {
  double delta = 0.0;
  double omega_max = 0.0;
  double a = 0.0, b = 0.0;
};

struct FilterTable {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::vector<cplx> values;
  double truncation = 0.0;
  double eps_quad = 0.0;

  // sum_j p_j f(s_j) exp(+i omega s_j)
  cplx reconstruct(double omega) const;
};

FilterSpec design_filter(double delta, double omega_max);
double eval_fhat(const FilterSpec& spec, double omega);

// Smooth step S(x) = g(x) / (g(x) + g(1-x)), g(x) = exp(-1/x); and S'(x).
double smooth_step(double x);
double smooth_step_derivative(double x);

// f(s) = (1/2pi) int fhat(omega) exp(-i omega s) d omega.
cplx filter_time_value(const FilterSpec& spec, double s);

inline double default_truncation(const FilterSpec& spec) { return 8.0 * 2.0 * 3.141592653589793 / spec.delta; }
// Node count giving a trapezoid step of 0.8 pi / omega_max on [-T, T].
int default_node_count(const FilterSpec& spec, double truncation);

FilterTable time_domain_samples(const FilterSpec& spec, int n_nodes, double truncation,
                                double tolerance = std::numeric_limits<double>::infinity());
FilterTable time_domain_samples(const FilterSpec& spec);

// max over a uniform omega grid on [-omega_max, omega_max].
double quadrature_error(const FilterSpec& spec, const FilterTable& table, int grid = 2001);

// Gauss-Legendre rule on [-1, 1] (Golub-Welsch).
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

void write_filter_csv(const FilterTable& table, const std::string& path);

}  // namespace gsprep

#endif  // GSPREP_FILTER_HPP

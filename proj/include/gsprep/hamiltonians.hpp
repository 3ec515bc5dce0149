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

#ifndef GSPREP_HAMILTONIANS_HPP
#define GSPREP_HAMILTONIANS_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gsprep/majorana.hpp"
#include "gsprep/types.hpp"

namespace gsprep {

enum class Boundary { open, periodic };

Boundary parse_boundary(const std::string& s);
std::string to_string(Boundary b);

struct PauliString {
  std::vector<int> sites;
  std::vector<char> letters;
  double coeff = 1.0;

  // Accepts unordered (site, letter) pairs; validates and sorts.
  static PauliString make(double coeff, std::vector<std::pair<int, char>> ops);
  // Parses "X0 Z1 X2" (optionally with a leading coefficient "0.5*").
  static PauliString parse(const std::string& text);

  std::string str() const;
  int max_site() const { return sites.empty() ? -1 : sites.back(); }
};

struct SpinHamiltonian {
  int n_sites = 0;
  std::vector<PauliString> terms;

  void add(double coeff, std::vector<std::pair<int, char>> ops);
  // Sum of |coeff|, an upper bound on the operator norm.
  double norm_bound() const;
};

struct MajoranaQuadratic {
  int n_modes = 0;
  MatrixXc h;  // 2N x 2N, Hermitian, purely imaginary
  double constant_shift = 0.0;
};

struct PeriodizedTFIMModes {
  int n = 0;
  double xi = 0.0;
  std::vector<int> ks;  // -N/2 .. N/2-1, row order of phi/psi
  VectorXr lambdas;
  MatrixXr phi, psi;    // rows indexed by k, columns by site j = 1..N

  int row(int k) const { return k + n / 2; }
};

SpinHamiltonian build_tfim(int n, double j, double g, Boundary boundary = Boundary::open);
SpinHamiltonian build_cluster(int n, double j, double h1);
SpinHamiltonian build_random_tfim(int n, double j, double mean, double variance, std::uint64_t seed,
                                  Boundary boundary = Boundary::open);
SpinHamiltonian build_annni(int l, double j1, double j2, double gamma, Boundary boundary = Boundary::periodic);
SpinHamiltonian build_heisenberg_field(int n, double j, double xi, double g);
// -g sum Z_i; valid from one site.
SpinHamiltonian build_z_field(int n, double g = 1.0);
// ca*a + cb*b on a common site count.
SpinHamiltonian sum(const SpinHamiltonian& a, double ca, const SpinHamiltonian& b, double cb);

// Coupling sets: "boundary" {X,Y on both ends}, "cluster_boundary" {Y on both ends},
// "bulk" {X,Y,Z per site}, "theorem2" {X per site}, "annni" {X,Z per site}.
std::vector<PauliString> coupling_preset(const std::string& name, int n);

// Fields g_i ~ normal(mean, variance) from SplitMix64 keyed by (seed, site).
std::vector<double> random_fields(int n, double mean, double variance, std::uint64_t seed);

Monomial to_majorana(const PauliString& p, int n);
MajoranaQuadratic jordan_wigner(const SpinHamiltonian& h);

// Coupling vector u of a single Pauli operator A = sum_p u_p w_p on even-parity
// states. Boundary operators of odd degree 2N-1 are reduced by the total parity.
VectorXc majorana_coupling(const PauliString& a, int n);

PeriodizedTFIMModes periodized_tfim_modes(int n, double xi);

inline constexpr int kDenseCap = 12;

MatrixXc pauli_matrix(const PauliString& p, int n);
MatrixXc dense_matrix(const SpinHamiltonian& h, int cap = kDenseCap);

// Ascending many-body spectrum constant_shift + sum_k lambda_k (2 n_k - 1).
std::vector<double> quasi_free_spectrum(const MajoranaQuadratic& q);

}  // namespace gsprep

#endif  // GSPREP_HAMILTONIANS_HPP

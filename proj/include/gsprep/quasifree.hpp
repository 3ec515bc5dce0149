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

#ifndef GSPREP_QUASIFREE_HPP
#define GSPREP_QUASIFREE_HPP

#include <functional>
#include <string>
#include <vector>

#include "gsprep/filter.hpp"
#include "gsprep/hamiltonians.hpp"
#include "gsprep/types.hpp"

namespace gsprep {

struct LinearJump {
  VectorXc zeta;  // K = sum_p zeta_p w_p
  std::string label;
};

struct CovarianceState {
  MatrixXr gamma;  // Gamma_pq = i <w_p w_q> - (i/2) delta_pq
  double time = 0.0;
};

struct QuasiFreeGenerator {
  MatrixXr x;  // drift, real because h is purely imaginary
  MatrixXr y;
  MatrixXc b;
  MajoranaQuadratic h;
};

struct NonHermitianSummary {
  MatrixXc h_nh;
  VectorXc eigvals;
  double gap = 0.0;
  double kappa_v = 1.0;
  double creation_residue = 0.0;
  bool diagonalizable = true;
};

// Positive single-particle energies and their eigenvectors of h (h u_k = lambda_k u_k).
struct QuasiParticles {
  VectorXr lambda;  // ascending, length N
  MatrixXc u;       // 2N x N, column k is u_k
};

QuasiParticles quasi_particles(const MajoranaQuadratic& h);

void validate(const MajoranaQuadratic& h, double tol = 1e-12);

// zeta = u^T fhat(-2h), with fhat exact or rebuilt from a quadrature table.
LinearJump jump_coefficients(const MajoranaQuadratic& h, const VectorXc& coupling, const FilterSpec& spec,
                             const std::string& label = "");
LinearJump jump_coefficients(const MajoranaQuadratic& h, const VectorXc& coupling, const FilterTable& table,
                             const std::string& label = "");
std::vector<LinearJump> jumps_for(const MajoranaQuadratic& h, const std::vector<PauliString>& couplings,
                                  const FilterSpec& spec);

struct GeneratorOptions {
  bool coherent = true;  // false drops -2ih from X (ablation)
};

QuasiFreeGenerator build_generator(const MajoranaQuadratic& h, const std::vector<LinearJump>& jumps,
                                   GeneratorOptions opts = {});

enum class CovarianceMethod { rk4, propagator };

struct CovarianceEvolveOptions {
  double t_end = 0.0;
  double dt = 0.0;
  int stride = 1;
  CovarianceMethod method = CovarianceMethod::rk4;
};

using CovarianceObserver = std::function<void(const CovarianceState&)>;

// Calls observer at t = 0 and every stride steps (always at the final step).
void evolve_covariance(const QuasiFreeGenerator& gen, const CovarianceState& gamma0,
                       const CovarianceEvolveOptions& opts, const CovarianceObserver& observer);
std::vector<CovarianceState> evolve_covariance(const QuasiFreeGenerator& gen, const CovarianceState& gamma0,
                                               const CovarianceEvolveOptions& opts);

double energy(const MajoranaQuadratic& h, const MatrixXr& gamma);

CovarianceState vacuum_covariance(const MajoranaQuadratic& h);
CovarianceState maximally_mixed_covariance(int n);
// Product state of Z eigenvalues: all_up = |0...0>, otherwise |1...1>.
CovarianceState product_covariance(int n, bool all_up);

struct SteadyState {
  CovarianceState state;
  double residual = 0.0;
};

SteadyState steady_state(const QuasiFreeGenerator& gen);

// <P> for a Pauli string on the Gaussian state; Wick via a Pfaffian.
double pauli_expectation(const MatrixXr& gamma, const PauliString& p, int n);

// Zero-based sites: X_a Z_{a+1} Z_{a+3} ... Z_{b-1} X_b.
PauliString sop_string(int a, int b);
// Majorana index list {a+N, a+2, a+2+N, ..., b-2+N, b} of the string.
std::vector<int> sop_indices(int a, int b, int n);
double sop(const MatrixXr& gamma, int a, int b);

// Sum_k <b_k^dag b_k>.
double particle_number(const QuasiParticles& qp, const MatrixXr& gamma);

NonHermitianSummary nonhermitian_summary(const MajoranaQuadratic& h, const std::vector<LinearJump>& jumps);
// Periodized TFIM with exact-filter jumps from X_1 (phi) and Y_1 (psi).
NonHermitianSummary nonhermitian_summary(const PeriodizedTFIMModes& modes);
NonHermitianSummary nonhermitian_summary(const MatrixXc& h_nh, double creation_residue = 0.0);

double mixing_bound(const NonHermitianSummary& s, int n_modes, double eta);

double rapidity_gap(const QuasiFreeGenerator& gen);
double effective_rapidity_gap(const QuasiFreeGenerator& gen, double cluster_tol);

struct PerturbativeGap {
  double gap = 0.0;       // half the smallest M_k eigenvalue over 0 < k < N/2
  double k0_rate = 0.0;   // (phi_01^2 + psi_01^2) / 2
  double max_det_error = 0.0;
  std::vector<double> det_m, det_formula;
};

PerturbativeGap perturbative_gap_tfim(int n, double xi);

}  // namespace gsprep

#endif  // GSPREP_QUASIFREE_HPP

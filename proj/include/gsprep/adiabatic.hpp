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

#ifndef GSPREP_ADIABATIC_HPP
#define GSPREP_ADIABATIC_HPP

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "gsprep/dense.hpp"
#include "gsprep/hamiltonians.hpp"
#include "gsprep/types.hpp"

namespace gsprep {

struct Schedule {
  double total_time = 0.0;
  std::function<double(double)> s_of_t;  // empty means t / T

  double operator()(double t) const;
  // s(0) = 0, s(T) = 1 and monotone on 1000 points.
  void validate() const;
  static Schedule linear(double total_time);
};

struct GroundManifold {
  MatrixXc basis;  // columns
  MatrixXc projector;
  int dim = 0;
  double lambda0 = 0.0;
  double gap = 0.0;  // first level above the manifold
};

GroundManifold ground_manifold(const MatrixXc& hmat, double tol = 1e-4);

struct GapPathPoint {
  double s = 0.0;
  double gap = 0.0;
  int manifold_dim = 0;
};

// (1-s) h_init + s h_target on a uniform grid of samples points.
std::vector<GapPathPoint> gap_path(const SpinHamiltonian& h_init, const SpinHamiltonian& h_target, int samples = 201,
                                   double tol = 1e-4);

Eigen::SparseMatrix<cplx> sparse_matrix(const SpinHamiltonian& h);

// Diagonal of (1/4L) sum_i Z_i Z_{i+r} in the computational basis.
VectorXr zz_diagonal(int l, int range, Boundary boundary = Boundary::periodic);

struct AspOptions {
  double dt = 0.0;
  int stride = 1;
  double manifold_tol = 1e-4;
  Boundary order_boundary = Boundary::periodic;
};

struct AspSample {
  double t = 0.0, s = 0.0;
  double overlap = 0.0;
  double m1 = 0.0, m2 = 0.0;
  double norm_error = 0.0;
};

struct AspTrace {
  std::vector<AspSample> samples;
  int target_dim = 0;
  double m1_target = 0.0, m2_target = 0.0;
  double max_norm_drift = 0.0;
  VectorXc final_state;
};

// Schrodinger evolution along the interpolation; one exp(-i H(s_mid) dt) per step.
AspTrace asp_run(const SpinHamiltonian& h_init, const SpinHamiltonian& h_target, const Schedule& schedule,
                 const VectorXc& psi0, const AspOptions& opts);

struct DspOptions {
  double delta = 0.2;
  double omega_max = 0.0;  // 0 means 2 * norm_bound(H)
  double t_end = 0.0;
  double dt = 0.0;
  int stride = 1;
  double manifold_tol = 1e-4;
  DenseMethod method = DenseMethod::interaction_rk4;
  std::string initial = "all_down";
  Boundary order_boundary = Boundary::periodic;
};

struct DspSample {
  double t = 0.0;
  double overlap = 0.0;
  double m1 = 0.0, m2 = 0.0;
  double energy = 0.0;
};

struct DspTrace {
  std::vector<DspSample> samples;
  int target_dim = 0;
  double m1_target = 0.0, m2_target = 0.0;
  DenseTrajectory trajectory;
};

DspTrace dsp_run(const SpinHamiltonian& h, const std::vector<PauliString>& couplings, const DspOptions& opts);

// Largest growth of |v_k - target| between consecutive samples.
double max_rebound(const std::vector<double>& v, double target);
// max - min over the trailing fraction of the series.
double tail_swing(const std::vector<double>& v, double fraction = 0.2);

}  // namespace gsprep

#endif  // GSPREP_ADIABATIC_HPP

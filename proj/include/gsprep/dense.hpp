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

#ifndef GSPREP_DENSE_HPP
#define GSPREP_DENSE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "gsprep/filter.hpp"
#include "gsprep/hamiltonians.hpp"
#include "gsprep/types.hpp"

namespace gsprep {

struct DenseSpectrum {
  int n = 0;
  MatrixXc hmat;
  VectorXr eigvals;  // ascending
  MatrixXc eigvecs;  // columns

  double norm() const { return eigvals.cwiseAbs().maxCoeff(); }
  MatrixXc to_energy(const MatrixXc& op) const { return eigvecs.adjoint() * op * eigvecs; }
  MatrixXc to_computational(const MatrixXc& op) const { return eigvecs * op * eigvecs.adjoint(); }
  int ground_dim(double tol) const;
};

DenseSpectrum diagonalize(const SpinHamiltonian& h, int cap = kDenseCap);
DenseSpectrum diagonalize(const MatrixXc& hmat);

// K = sum_ij fhat(l_i - l_j) |i><i| A |j><j|, returned in the computational basis.
MatrixXc build_jump_exact(const DenseSpectrum& s, const MatrixXc& a, const FilterSpec& spec);
MatrixXc build_jump_exact(const DenseSpectrum& s, const PauliString& a, const FilterSpec& spec);
// K = sum_j p_j f(s_j) exp(iH s_j) A exp(-iH s_j).
MatrixXc build_jump_quadrature(const DenseSpectrum& s, const MatrixXc& a, const FilterTable& table);
MatrixXc build_jump_quadrature(const DenseSpectrum& s, const PauliString& a, const FilterTable& table);

class DenseLindbladSystem {
 public:
  DenseLindbladSystem() = default;
  // Jumps are given in the computational basis.
  DenseLindbladSystem(DenseSpectrum spectrum, const std::vector<MatrixXc>& jumps, std::vector<std::string> labels,
                      bool include_coherent, double ground_tol = 1e-4);

  const DenseSpectrum& spectrum() const { return spectrum_; }
  int n() const { return spectrum_.n; }
  Eigen::Index dim() const { return spectrum_.eigvals.size(); }
  bool include_coherent() const { return coherent_; }
  double ground_tol() const { return ground_tol_; }
  int ground_dim() const { return ground_dim_; }
  // Gap above the ground manifold.
  double gap() const;
  std::size_t jump_count() const { return jumps_e_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  // Energy-basis jump and its computational-basis image.
  const MatrixXc& jump_energy(std::size_t a) const { return jumps_e_[a]; }
  MatrixXc jump(std::size_t a) const { return spectrum_.to_computational(jumps_e_[a]); }
  double dissipator_norm() const { return gsum_norm_; }
  double sum_jump_norm_sq() const { return sum_norm_sq_; }

  // Energy-basis generators.
  MatrixXc dissipator_energy(const MatrixXc& rho) const;
  MatrixXc rhs_energy(const MatrixXc& rho) const;
  MatrixXc adjoint_rhs_energy(const MatrixXc& o) const;

 private:
  // One jump in a chosen scalar type; dense, strictly upper triangular or sparse.
  template <typename S>
  struct JumpOp {
    using Scalar = S;
    Mat<S> dense;
    Eigen::SparseMatrix<S> sparse;
    bool is_sparse = false;
    bool upper = false;
    void sandwich(const Mat<S>& x, Mat<S>& acc) const;          // acc += K x K^dag
    void adjoint_sandwich(const Mat<S>& x, Mat<S>& acc) const;  // acc += K^dag x K
  };

  DenseSpectrum spectrum_;
  std::vector<MatrixXc> jumps_e_;
  std::vector<JumpOp<cplx>> ops_c_;
  std::vector<JumpOp<double>> ops_r_;
  bool real_ = false;  // every jump and the spectrum basis are real
  std::vector<std::string> labels_;
  MatrixXc gsum_;  // sum K^dag K
  MatrixXr gsum_r_;
  double gsum_norm_ = 0.0;
  double sum_norm_sq_ = 0.0;
  bool coherent_ = true;
  double ground_tol_ = 1e-4;
  int ground_dim_ = 1;

  template <typename S>
  Mat<S> dissipate(const Mat<S>& x, const std::vector<JumpOp<S>>& ops, const Mat<S>& g, bool adjoint) const;
};

struct DenseOptions {
  bool coherent = true;
  double ground_tol = 1e-4;
  int cap = kDenseCap;
};

DenseLindbladSystem make_dense_system(const SpinHamiltonian& h, const std::vector<PauliString>& couplings,
                                      const FilterSpec& spec, DenseOptions opts = {});
DenseLindbladSystem make_dense_system_quadrature(const SpinHamiltonian& h,
                                                 const std::vector<PauliString>& couplings,
                                                 const FilterTable& table, DenseOptions opts = {});

// Computational-basis Lindbladian action.
MatrixXc lindblad_rhs(const DenseLindbladSystem& sys, const MatrixXc& rho);

enum class DenseMethod { rk4, interaction_rk4 };

struct DenseEvolveOptions {
  double t_end = 0.0;
  double dt = 0.0;
  int stride = 1;
  DenseMethod method = DenseMethod::interaction_rk4;
  bool trace_distance = true;
  bool check_positivity = true;
};

struct DenseSample {
  double t = 0.0;
  double energy = 0.0;
  double fidelity = 0.0;        // sqrt(Tr[rho Pi])
  double trace_distance = -1.0; // to the ground state; -1 when degenerate or disabled
  double purity = 0.0;
  double trace_error = 0.0;
  double hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
};

struct DenseTrajectory {
  std::vector<DenseSample> samples;
  MatrixXc final_rho;  // computational basis
  double max_trace_drift_rate = 0.0;
};

using DenseObserver = std::function<void(double t, const MatrixXc& rho_energy)>;

DenseTrajectory evolve_density(const DenseLindbladSystem& sys, const MatrixXc& rho0, const DenseEvolveOptions& opts,
                               const DenseObserver& observer = nullptr);

double trace_distance(const MatrixXc& rho, const MatrixXc& sigma);
double fidelity(const MatrixXc& rho, const MatrixXc& sigma);
double fidelity_pure(const MatrixXc& rho, const VectorXc& psi);

struct MixingReport {
  std::optional<double> tau_trace, tau_fidelity, tau_energy;
  double eta = 0.0;
  std::string initial_state_label;
  double fitted_rate = 0.0;
};

// Time after which the series stays at or below threshold; absent if the last sample exceeds it.
std::optional<double> settle_time(const std::vector<double>& t, const std::vector<double>& v, double threshold);

MixingReport mixing_times(const DenseTrajectory& traj, const DenseLindbladSystem& sys, double eta,
                          const std::string& label = "");

// Smallest slack in E/(4|H|) <= (1 - F^2)/2 <= D <= sqrt(E/gap) for one sample, E measured from lambda0.
double energy_chain_slack(const DenseSample& s, double lambda0, double hnorm, double gap);

MatrixXc liouvillian_matrix(const DenseLindbladSystem& sys);

struct LiouvillianSpectrum {
  VectorXc eigvals;
  int kernel_dim = 0;
  double gap = 0.0;
};

LiouvillianSpectrum liouvillian_spectrum(const DenseLindbladSystem& sys, double zero_tol = 1e-9);

double oscillator_norm(const MatrixXc& o, int n);

struct HeisenbergDecay {
  double rate = 0.0;
  double r2 = 0.0;
  std::vector<double> times, norms;
  bool monotone = true;
  double max_subadditivity_violation = 0.0;
};

HeisenbergDecay heisenberg_decay_check(const DenseLindbladSystem& sys, const MatrixXc& o0, double t_end, double dt,
                                       int stride = 1);

// "maximally_mixed", "all_up", "all_down", "ground", "random_pure:<k>".
MatrixXc initial_state(const std::string& label, const DenseLindbladSystem& sys, std::uint64_t seed = 0);
MatrixXc random_pure_state(int n, std::uint64_t seed);
MatrixXc random_mixed_state(int n, std::uint64_t seed, int rank = 0);

}  // namespace gsprep

#endif  // GSPREP_DENSE_HPP

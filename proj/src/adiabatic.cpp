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

#include "gsprep/adiabatic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "gsprep/filter.hpp"

namespace gsprep {

double Schedule::operator()(double t) const {
  if (s_of_t) return s_of_t(t);
  return total_time > 0.0 ? std::clamp(t / total_time, 0.0, 1.0) : 1.0;
}

void Schedule::validate() const {
  if (!(total_time > 0.0)) throw Error(ErrorKind::invalid_argument, "schedule total time must be positive");
  if (std::abs((*this)(0.0)) > 1e-12 || std::abs((*this)(total_time) - 1.0) > 1e-12)
    throw Error(ErrorKind::invalid_argument, "schedule must satisfy s(0) = 0 and s(T) = 1");
  double prev = (*this)(0.0);
  for (int k = 1; k < 1000; ++k) {
    double s = (*this)(total_time * k / 999.0);
    if (s < prev - 1e-15) throw Error(ErrorKind::invalid_argument, "schedule is not monotone");
    prev = s;
  }
}

Schedule Schedule::linear(double total_time) { return Schedule{total_time, nullptr}; }

GroundManifold ground_manifold(const MatrixXc& hmat, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorKind::invalid_argument, "manifold tolerance must be positive");
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(hmat);
  const VectorXr& ev = es.eigenvalues();
  GroundManifold g;
  g.lambda0 = ev(0);
  while (g.dim < ev.size() && ev(g.dim) <= g.lambda0 + tol) ++g.dim;
  g.gap = g.dim < ev.size() ? ev(g.dim) - g.lambda0 : 0.0;
  g.basis = es.eigenvectors().leftCols(g.dim);
  g.projector = g.basis * g.basis.adjoint();
  return g;
}

std::vector<GapPathPoint> gap_path(const SpinHamiltonian& h_init, const SpinHamiltonian& h_target, int samples,
                                   double tol) {
  if (samples < 2) throw Error(ErrorKind::invalid_argument, "gap path needs at least two samples");
  MatrixXc a = dense_matrix(h_init), b = dense_matrix(h_target);
  if (a.rows() != b.rows()) throw Error(ErrorKind::shape, "site counts differ");
  std::vector<GapPathPoint> out;
  for (int k = 0; k < samples; ++k) {
    double s = static_cast<double>(k) / (samples - 1);
    Eigen::SelfAdjointEigenSolver<MatrixXc> es((1.0 - s) * a + s * b, Eigen::EigenvaluesOnly);
    const VectorXr& ev = es.eigenvalues();
    GapPathPoint p{s, 0.0, 0};
    while (p.manifold_dim < ev.size() && ev(p.manifold_dim) <= ev(0) + tol) ++p.manifold_dim;
    if (p.manifold_dim < ev.size()) p.gap = ev(p.manifold_dim) - ev(0);
    out.push_back(p);
  }
  return out;
}

Eigen::SparseMatrix<cplx> sparse_matrix(const SpinHamiltonian& h) {
  const int n = h.n_sites;
  if (n > 20) throw Error(ErrorKind::invalid_size, "sparse matrix limited to 20 sites");
  const std::uint64_t dim = std::uint64_t(1) << n;
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(h.terms.size() * dim);
  const cplx iy[4] = {1.0, I1, -1.0, -I1};
  for (const auto& p : h.terms) {
    std::uint64_t xmask = 0, zmask = 0;
    int ny = 0;
    for (std::size_t i = 0; i < p.sites.size(); ++i) {
      std::uint64_t bit = std::uint64_t(1) << (n - 1 - p.sites[i]);
      if (p.letters[i] != 'Z') xmask |= bit;
      if (p.letters[i] != 'X') zmask |= bit;
      if (p.letters[i] == 'Y') ++ny;
    }
    for (std::uint64_t b = 0; b < dim; ++b) {
      double sign = (std::popcount(b & zmask) % 2) ? -1.0 : 1.0;
      trip.emplace_back(b ^ xmask, b, p.coeff * sign * iy[ny % 4]);
    }
  }
  Eigen::SparseMatrix<cplx> m(dim, dim);
  m.setFromTriplets(trip.begin(), trip.end());
  m.makeCompressed();
  return m;
}

VectorXr zz_diagonal(int l, int range, Boundary boundary) {
  if (l < 2 || range < 1) throw Error(ErrorKind::invalid_size, "order parameter needs l >= 2 and range >= 1");
  const std::uint64_t dim = std::uint64_t(1) << l;
  VectorXr d = VectorXr::Zero(dim);
  for (std::uint64_t b = 0; b < dim; ++b) {
    double acc = 0.0;
    for (int i = 0; i < l; ++i) {
      int j = i + range;
      if (j >= l) {
        if (boundary == Boundary::open) continue;
        j %= l;
      }
      int zi = (b >> (l - 1 - i) & 1) ? -1 : 1;
      int zj = (b >> (l - 1 - j) & 1) ? -1 : 1;
      acc += zi * zj;
    }
    d(b) = acc / (4.0 * l);
  }
  return d;
}

namespace {

// exp(-i dt (a * A + b * B)) psi by Taylor summation; dt |H| is kept small by the caller.
VectorXc taylor_step(const Eigen::SparseMatrix<cplx>& ha, double ca, const Eigen::SparseMatrix<cplx>& hb, double cb,
                     double dt, const VectorXc& psi) {
  VectorXc out = psi, term = psi;
  for (int k = 1; k <= 60; ++k) {
    VectorXc next = ca * (ha * term) + cb * (hb * term);
    term = (-I1 * dt / static_cast<double>(k)) * next;
    out += term;
    if (term.norm() < 1e-17) break;
  }
  return out;
}

double expectation(const VectorXr& diag, const VectorXc& psi) {
  return (diag.array() * psi.cwiseAbs2().array()).sum();
}

}  // namespace

AspTrace asp_run(const SpinHamiltonian& h_init, const SpinHamiltonian& h_target, const Schedule& schedule,
                 const VectorXc& psi0, const AspOptions& opts) {
  schedule.validate();
  if (h_init.n_sites != h_target.n_sites) throw Error(ErrorKind::shape, "site counts differ");
  if (!(opts.dt > 0.0)) throw Error(ErrorKind::invalid_argument, "dt must be positive");
  if (opts.stride < 1) throw Error(ErrorKind::invalid_argument, "stride must be at least 1");
  const int l = h_target.n_sites;
  const Eigen::Index dim = Eigen::Index(1) << l;
  if (psi0.size() != dim) throw Error(ErrorKind::shape, "psi0 dimension mismatch");
  if (std::abs(psi0.norm() - 1.0) > 1e-10) throw Error(ErrorKind::invalid_argument, "psi0 is not normalized");
  double hmax = std::max(h_init.norm_bound(), h_target.norm_bound());
  if (opts.dt * hmax > 0.1)
    throw Error(ErrorKind::step_size, "dt max|H(s)| = " + std::to_string(opts.dt * hmax) + " exceeds 0.1; reduce dt");

  auto ha = sparse_matrix(h_init), hb = sparse_matrix(h_target);
  GroundManifold target = ground_manifold(dense_matrix(h_target), opts.manifold_tol);
  VectorXr d1 = zz_diagonal(l, 1, opts.order_boundary), d2 = zz_diagonal(l, 2, opts.order_boundary);

  AspTrace tr;
  tr.target_dim = target.dim;
  for (int k = 0; k < target.dim; ++k) {
    tr.m1_target += expectation(d1, target.basis.col(k)) / target.dim;
    tr.m2_target += expectation(d2, target.basis.col(k)) / target.dim;
  }

  VectorXc psi = psi0;
  auto record = [&](double t) {
    AspSample s;
    s.t = t;
    s.s = schedule(t);
    s.overlap = (target.basis.adjoint() * psi).squaredNorm();
    s.m1 = expectation(d1, psi);
    s.m2 = expectation(d2, psi);
    s.norm_error = std::abs(psi.norm() - 1.0);
    tr.samples.push_back(s);
  };
  record(0.0);
  const long steps = std::lround(schedule.total_time / opts.dt);
  for (long k = 1; k <= steps; ++k) {
    double s = schedule((k - 0.5) * opts.dt);
    psi = taylor_step(ha, 1.0 - s, hb, s, opts.dt, psi);
    double drift = std::abs(psi.norm() - 1.0);
    tr.max_norm_drift = std::max(tr.max_norm_drift, drift);
    if (drift > 1e-6)
      throw Error(ErrorKind::integrator, "norm drift " + std::to_string(drift) + " at step " + std::to_string(k));
    if (k % opts.stride == 0 || k == steps) record(k * opts.dt);
  }
  tr.final_state = psi;
  return tr;
}

DspTrace dsp_run(const SpinHamiltonian& h, const std::vector<PauliString>& couplings, const DspOptions& opts) {
  double wmax = opts.omega_max > 0.0 ? opts.omega_max : 2.0 * h.norm_bound();
  FilterSpec spec = design_filter(opts.delta, wmax);
  DenseOptions dopts;
  dopts.coherent = true;
  dopts.ground_tol = opts.manifold_tol;
  DenseLindbladSystem sys = make_dense_system(h, couplings, spec, dopts);
  const auto& es = sys.spectrum();
  const int l = h.n_sites;
  MatrixXc m1e = es.to_energy(zz_diagonal(l, 1, opts.order_boundary).cast<cplx>().asDiagonal().toDenseMatrix());
  MatrixXc m2e = es.to_energy(zz_diagonal(l, 2, opts.order_boundary).cast<cplx>().asDiagonal().toDenseMatrix());

  DspTrace tr;
  tr.target_dim = sys.ground_dim();
  for (int k = 0; k < tr.target_dim; ++k) {
    tr.m1_target += m1e(k, k).real() / tr.target_dim;
    tr.m2_target += m2e(k, k).real() / tr.target_dim;
  }
  auto observer = [&](double t, const MatrixXc& rho) {
    DspSample s;
    s.t = t;
    s.overlap = rho.diagonal().head(tr.target_dim).real().sum();
    // Tr[M rho] = sum_ij M_ji rho_ij
    s.m1 = m1e.transpose().cwiseProduct(rho).sum().real();
    s.m2 = m2e.transpose().cwiseProduct(rho).sum().real();
    s.energy = (es.eigvals.cast<cplx>().cwiseProduct(rho.diagonal())).sum().real();
    tr.samples.push_back(s);
  };
  DenseEvolveOptions eo;
  eo.t_end = opts.t_end;
  eo.dt = opts.dt;
  eo.stride = opts.stride;
  eo.method = opts.method;
  eo.trace_distance = false;
  tr.trajectory = evolve_density(sys, initial_state(opts.initial, sys), eo, observer);
  return tr;
}

double max_rebound(const std::vector<double>& v, double target) {
  double worst = 0.0;
  for (std::size_t i = 1; i < v.size(); ++i)
    worst = std::max(worst, std::abs(v[i] - target) - std::abs(v[i - 1] - target));
  return worst;
}

double tail_swing(const std::vector<double>& v, double fraction) {
  if (v.empty()) return 0.0;
  std::size_t start = static_cast<std::size_t>(std::floor(v.size() * (1.0 - fraction)));
  start = std::min(start, v.size() - 1);
  auto [lo, hi] = std::minmax_element(v.begin() + start, v.end());
  return *hi - *lo;
}

}  // namespace gsprep

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

#include "gsprep/quasifree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <unsupported/Eigen/MatrixFunctions>

#include "gsprep/pfaffian.hpp"

namespace gsprep {

void validate(const MajoranaQuadratic& h, double tol) {
  const Eigen::Index d = 2 * h.n_modes;
  if (h.h.rows() != d || h.h.cols() != d) throw Error(ErrorKind::malformed, "h must be 2N x 2N");
  double scale = std::max(1.0, h.h.cwiseAbs().maxCoeff());
  if ((h.h - h.h.adjoint()).cwiseAbs().maxCoeff() > tol * scale)
    throw Error(ErrorKind::malformed, "h is not Hermitian");
  if ((h.h + h.h.transpose()).cwiseAbs().maxCoeff() > tol * scale)
    throw Error(ErrorKind::malformed, "h is not antisymmetric");
}

QuasiParticles quasi_particles(const MajoranaQuadratic& h) {
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(h.h);
  const int n = h.n_modes;
  return QuasiParticles{es.eigenvalues().tail(n), es.eigenvectors().rightCols(n)};
}

namespace {

template <typename F>
LinearJump jump_from_filter(const MajoranaQuadratic& h, const VectorXc& coupling, F&& fhat,
                            const std::string& label) {
  validate(h);
  if (coupling.size() != 2 * h.n_modes) throw Error(ErrorKind::shape, "coupling vector must have length 2N");
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(h.h);
  VectorXc f(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < f.size(); ++i) f(i) = fhat(-2.0 * es.eigenvalues()(i));
  const MatrixXc& U = es.eigenvectors();
  // zeta^T = u^T U f(-2 Lambda) U^dag
  VectorXc zeta = (U.transpose() * coupling).cwiseProduct(f);
  return LinearJump{U.conjugate() * zeta, label};
}

}  // namespace

LinearJump jump_coefficients(const MajoranaQuadratic& h, const VectorXc& coupling, const FilterSpec& spec,
                             const std::string& label) {
  return jump_from_filter(h, coupling, [&](double w) { return cplx(eval_fhat(spec, w)); }, label);
}

LinearJump jump_coefficients(const MajoranaQuadratic& h, const VectorXc& coupling, const FilterTable& table,
                             const std::string& label) {
  return jump_from_filter(h, coupling, [&](double w) { return table.reconstruct(w); }, label);
}

std::vector<LinearJump> jumps_for(const MajoranaQuadratic& h, const std::vector<PauliString>& couplings,
                                  const FilterSpec& spec) {
  std::vector<LinearJump> out;
  for (const auto& a : couplings)
    out.push_back(jump_coefficients(h, majorana_coupling(a, h.n_modes), spec, a.str()));
  return out;
}

QuasiFreeGenerator build_generator(const MajoranaQuadratic& h, const std::vector<LinearJump>& jumps,
                                   GeneratorOptions opts) {
  const Eigen::Index d = 2 * h.n_modes;
  QuasiFreeGenerator g;
  g.h = h;
  g.b = MatrixXc::Zero(d, d);
  for (const auto& j : jumps) {
    if (j.zeta.size() != d) throw Error(ErrorKind::shape, "jump '" + j.label + "' has wrong length");
    g.b.noalias() += j.zeta * j.zeta.adjoint();
  }
  g.x = -g.b.real();
  if (opts.coherent) g.x += 2.0 * h.h.imag();  // -2ih with h purely imaginary
  g.y = g.b.imag();
  return g;
}

namespace {

MatrixXr drift(const QuasiFreeGenerator& g, const MatrixXr& gamma) {
  // Gamma X^T = -(X Gamma)^T for antisymmetric Gamma
  MatrixXr xg = g.x * gamma;
  return xg - xg.transpose() + g.y;
}

void check_physical(const MatrixXr& gamma, double t) {
  if (gamma.size() == 0) return;
  Eigen::SelfAdjointEigenSolver<MatrixXr> es(gamma.transpose() * gamma, Eigen::EigenvaluesOnly);
  double nrm = 2.0 * std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
  if (nrm > 1.0 + 1e-3)
    throw Error(ErrorKind::step_size,
                "covariance left the physical set (|2 Gamma| = " + std::to_string(nrm) + " at t = " +
                    std::to_string(t) + "); reduce dt");
}

}  // namespace

void evolve_covariance(const QuasiFreeGenerator& gen, const CovarianceState& gamma0,
                       const CovarianceEvolveOptions& opts, const CovarianceObserver& observer) {
  if (!(opts.dt > 0.0)) throw Error(ErrorKind::invalid_argument, "dt must be positive");
  if (opts.stride < 1) throw Error(ErrorKind::invalid_argument, "stride must be at least 1");
  const Eigen::Index d = gen.x.rows();
  if (gamma0.gamma.rows() != d || gamma0.gamma.cols() != d) throw Error(ErrorKind::shape, "Gamma shape mismatch");
  if ((gamma0.gamma + gamma0.gamma.transpose()).cwiseAbs().maxCoeff() > 1e-10)
    throw Error(ErrorKind::invalid_argument, "initial Gamma is not antisymmetric");

  const long steps = std::lround(opts.t_end / opts.dt);
  const double dt = opts.dt;
  CovarianceState s{gamma0.gamma, gamma0.time};
  observer(s);

  MatrixXr P, Q;
  if (opts.method == CovarianceMethod::propagator) {
    // exp([[X, Y], [0, -X^T]] dt) = [[P, Q P^{-T}], [0, P^{-T}]]
    MatrixXr m = MatrixXr::Zero(2 * d, 2 * d);
    m.topLeftCorner(d, d) = gen.x * dt;
    m.topRightCorner(d, d) = gen.y * dt;
    m.bottomRightCorner(d, d) = -gen.x.transpose() * dt;
    MatrixXr e = m.exp();
    P = e.topLeftCorner(d, d);
    Q = e.topRightCorner(d, d) * P.transpose();
  }

  for (long k = 1; k <= steps; ++k) {
    if (opts.method == CovarianceMethod::propagator) {
      s.gamma = P * s.gamma * P.transpose() + Q;
    } else {
      MatrixXr k1 = drift(gen, s.gamma);
      MatrixXr k2 = drift(gen, s.gamma + 0.5 * dt * k1);
      MatrixXr k3 = drift(gen, s.gamma + 0.5 * dt * k2);
      MatrixXr k4 = drift(gen, s.gamma + dt * k3);
      s.gamma += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    s.gamma = antisymmetrize(s.gamma);
    s.time = gamma0.time + k * dt;
    if (k % opts.stride == 0 || k == steps) {
      check_physical(s.gamma, s.time);
      observer(s);
    }
  }
}

std::vector<CovarianceState> evolve_covariance(const QuasiFreeGenerator& gen, const CovarianceState& gamma0,
                                               const CovarianceEvolveOptions& opts) {
  std::vector<CovarianceState> out;
  evolve_covariance(gen, gamma0, opts, [&](const CovarianceState& s) { out.push_back(s); });
  return out;
}

double energy(const MajoranaQuadratic& h, const MatrixXr& gamma) {
  if (gamma.rows() != h.h.rows() || gamma.cols() != h.h.cols()) throw Error(ErrorKind::shape, "Gamma shape mismatch");
  // E = sum h_pq <w_p w_q> with <w w> = I/2 - i Gamma
  cplx e = I1 * (h.h.cwiseProduct(gamma.transpose().cast<cplx>())).sum();
  if (std::abs(e.imag()) > 1e-9 * std::max(1.0, std::abs(e.real())))
    throw Error(ErrorKind::inconsistent_state, "energy has imaginary part " + std::to_string(e.imag()));
  return e.real() + h.constant_shift;
}

CovarianceState vacuum_covariance(const MajoranaQuadratic& h) {
  validate(h);
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(h.h);
  const int n = h.n_modes;
  if (n == 0) return CovarianceState{MatrixXr(0, 0), 0.0};
  double gap = es.eigenvalues()(n);
  if (gap < 1e-12 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff()))
    throw Error(ErrorKind::degenerate_vacuum, "h has a zero mode; the quasivacuum is not unique");
  const MatrixXc& U = es.eigenvectors();
  VectorXr sgn = es.eigenvalues().unaryExpr([](double v) { return v > 0 ? 1.0 : -1.0; });
  MatrixXc g = 0.5 * I1 * U * sgn.asDiagonal() * U.adjoint();
  return CovarianceState{antisymmetrize(MatrixXr(g.real())), 0.0};
}

CovarianceState maximally_mixed_covariance(int n) { return CovarianceState{MatrixXr::Zero(2 * n, 2 * n), 0.0}; }

CovarianceState product_covariance(int n, bool all_up) {
  // <Z_j> = -2 Gamma_{j, j+N}
  MatrixXr g = MatrixXr::Zero(2 * n, 2 * n);
  double v = all_up ? -0.5 : 0.5;
  for (int j = 0; j < n; ++j) {
    g(j, j + n) = v;
    g(j + n, j) = -v;
  }
  return CovarianceState{g, 0.0};
}

namespace {

cplx monomial_expectation(const MatrixXr& gamma, const Monomial& m) {
  if (m.degree() == 0) return m.phase;
  if (m.degree() % 2) return 0.0;
  const int k = m.degree();
  MatrixXr sub(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) sub(a, b) = 2.0 * gamma(m.idx[a], m.idx[b]);
  // <g_s1 ... g_s2m> = Pf(-2i Gamma_S) = (-i)^m Pf(2 Gamma_S)
  const cplx pow_mi[4] = {1.0, -I1, -1.0, I1};
  return m.phase * pow_mi[(k / 2) % 4] * pfaffian(sub);
}

}  // namespace

double pauli_expectation(const MatrixXr& gamma, const PauliString& p, int n) {
  if (gamma.rows() != 2 * n) throw Error(ErrorKind::shape, "Gamma shape mismatch");
  cplx v = monomial_expectation(gamma, to_majorana(p, n));
  if (std::abs(v.imag()) > 1e-8) throw Error(ErrorKind::inconsistent_state, "Pauli expectation is not real");
  return v.real();
}

PauliString sop_string(int a, int b) {
  if (b - a < 2 || (b - a) % 2) throw Error(ErrorKind::invalid_span, "SOP needs b - a even and >= 2");
  std::vector<std::pair<int, char>> ops{{a, 'X'}, {b, 'X'}};
  for (int s = a + 1; s < b; s += 2) ops.emplace_back(s, 'Z');
  return PauliString::make(1.0, ops);
}

std::vector<int> sop_indices(int a, int b, int n) {
  if (b - a < 2 || (b - a) % 2) throw Error(ErrorKind::invalid_span, "SOP needs b - a even and >= 2");
  std::vector<int> q{a + n};
  for (int s = a + 2; s < b; s += 2) {
    q.push_back(s);
    q.push_back(s + n);
  }
  q.push_back(b);
  return q;
}

double sop(const MatrixXr& gamma, int a, int b) {
  const int n = static_cast<int>(gamma.rows() / 2);
  if (a < 0 || b >= n) throw Error(ErrorKind::invalid_span, "SOP endpoints outside the chain");
  return pauli_expectation(gamma, sop_string(a, b), n);
}

double particle_number(const QuasiParticles& qp, const MatrixXr& gamma) {
  const Eigen::Index d = gamma.rows();
  MatrixXc g = 0.5 * MatrixXc::Identity(d, d) - I1 * gamma.cast<cplx>();
  cplx acc = 0.0;
  for (Eigen::Index k = 0; k < qp.u.cols(); ++k) acc += (qp.u.col(k).transpose() * g * qp.u.col(k).conjugate())(0, 0);
  return acc.real();
}

NonHermitianSummary nonhermitian_summary(const MatrixXc& h_nh, double creation_residue) {
  NonHermitianSummary s;
  s.h_nh = h_nh;
  s.creation_residue = creation_residue;
  Eigen::ComplexEigenSolver<MatrixXc> es(h_nh);
  s.eigvals = es.eigenvalues();
  s.gap = -s.eigvals.real().maxCoeff();
  MatrixXc v = es.eigenvectors();
  for (Eigen::Index k = 0; k < v.cols(); ++k) v.col(k).normalize();
  Eigen::JacobiSVD<MatrixXc> svd(v);
  const auto& sv = svd.singularValues();
  s.kappa_v = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  s.diagonalizable = s.kappa_v < 1e12;
  return s;
}

NonHermitianSummary nonhermitian_summary(const MajoranaQuadratic& h, const std::vector<LinearJump>& jumps) {
  validate(h);
  QuasiParticles qp = quasi_particles(h);
  if (qp.lambda.size() && qp.lambda(0) < 1e-12) throw Error(ErrorKind::gapless, "h has a zero mode");
  const Eigen::Index n = h.n_modes;
  MatrixXc phi(n, static_cast<Eigen::Index>(jumps.size()));
  double residue = 0.0;
  for (std::size_t a = 0; a < jumps.size(); ++a) {
    // K = sum_k alpha_k b_k + beta_k b_k^dag; the beta part is dropped here
    VectorXc alpha = qp.u.transpose() * jumps[a].zeta;
    VectorXc beta = qp.u.adjoint() * jumps[a].zeta;
    phi.col(a) = alpha.conjugate();
    residue = std::max(residue, beta.norm());
  }
  MatrixXc hnh = I1 * (2.0 * qp.lambda).cast<cplx>().asDiagonal().toDenseMatrix();
  hnh -= 0.5 * phi * phi.adjoint();
  return nonhermitian_summary(hnh, residue);
}

NonHermitianSummary nonhermitian_summary(const PeriodizedTFIMModes& modes) {
  MatrixXc hnh = I1 * (2.0 * modes.lambdas).cast<cplx>().asDiagonal().toDenseMatrix();
  VectorXr phi = modes.phi.col(0), psi = modes.psi.col(0);
  hnh -= (0.5 * (phi * phi.transpose() + psi * psi.transpose())).cast<cplx>();
  return nonhermitian_summary(hnh);
}

double mixing_bound(const NonHermitianSummary& s, int n_modes, double eta) {
  if (!(eta > 0.0 && eta < 1.0)) throw Error(ErrorKind::invalid_argument, "eta must lie in (0, 1)");
  if (!(s.gap > 0.0)) throw Error(ErrorKind::no_bound, "non-Hermitian gap is not positive");
  if (s.kappa_v > 1e6) throw Error(ErrorKind::no_bound, "kappa(V) above 1e6; bound declined");
  return std::log(s.kappa_v * std::sqrt(static_cast<double>(n_modes)) / eta) / s.gap;
}

namespace {

VectorXc drift_spectrum(const QuasiFreeGenerator& gen) {
  Eigen::EigenSolver<MatrixXr> es(gen.x, false);
  return es.eigenvalues();
}

}  // namespace

double rapidity_gap(const QuasiFreeGenerator& gen) { return 2.0 * (-drift_spectrum(gen).real()).minCoeff(); }

double effective_rapidity_gap(const QuasiFreeGenerator& gen, double cluster_tol) {
  VectorXr rates = -drift_spectrum(gen).real();
  double best = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < rates.size(); ++i)
    if (cluster_tol <= 0.0 || rates(i) >= cluster_tol) best = std::min(best, rates(i));
  if (!std::isfinite(best)) throw Error(ErrorKind::invalid_argument, "cluster_tol discards every eigenvalue");
  return 2.0 * best;
}

SteadyState steady_state(const QuasiFreeGenerator& gen) {
  const Eigen::Index d = gen.x.rows();
  Eigen::EigenSolver<MatrixXr> es(gen.x);
  VectorXc ev = es.eigenvalues();
  if (ev.real().maxCoeff() > -1e-12)
    throw Error(ErrorKind::non_unique_steady_state, "drift spectrum touches the imaginary axis");
  MatrixXc v = es.eigenvectors();
  Eigen::PartialPivLU<MatrixXc> lu(v);
  MatrixXc vinv = lu.inverse();
  MatrixXc yt = vinv * gen.y.cast<cplx>() * vinv.transpose();
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) yt(i, j) = -yt(i, j) / (ev(i) + ev(j));
  MatrixXr g = antisymmetrize(MatrixXr((v * yt * v.transpose()).real()));
  SteadyState out{CovarianceState{g, 0.0}, 0.0};
  out.residual = drift(gen, g).norm();
  return out;
}

PerturbativeGap perturbative_gap_tfim(int n, double xi) {
  PeriodizedTFIMModes m = periodized_tfim_modes(n, xi);
  PerturbativeGap r;
  r.gap = std::numeric_limits<double>::infinity();
  const double two_pi = 2.0 * std::numbers::pi;
  for (int k = 1; k < n / 2; ++k) {
    int a = m.row(k), b = m.row(-k);
    double pa = m.phi(a, 0), pb = m.phi(b, 0), sa = m.psi(a, 0), sb = m.psi(b, 0);
    double m11 = pa * pa + sa * sa, m22 = pb * pb + sb * sb, m12 = pa * pb + sa * sb;
    double det = m11 * m22 - m12 * m12;
    double sn = std::sin(two_pi * k / n);
    double formula = 4.0 * xi * xi * sn * sn / (double(n) * n * m.lambdas(a) * m.lambdas(a));
    r.det_m.push_back(det);
    r.det_formula.push_back(formula);
    r.max_det_error = std::max(r.max_det_error, std::abs(det - formula));
    double tr = m11 + m22;
    double big = 0.5 * (tr + std::sqrt(std::max(0.0, tr * tr - 4.0 * det)));
    r.gap = std::min(r.gap, 0.5 * det / big);
  }
  int z = m.row(0);
  r.k0_rate = 0.5 * (m.phi(z, 0) * m.phi(z, 0) + m.psi(z, 0) * m.psi(z, 0));
  return r;
}

}  // namespace gsprep

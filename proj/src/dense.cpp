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

#include "gsprep/dense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <unsupported/Eigen/KroneckerProduct>

#include "gsprep/fit.hpp"

namespace gsprep {

int DenseSpectrum::ground_dim(double tol) const {
  int d = 0;
  while (d < eigvals.size() && eigvals(d) <= eigvals(0) + tol) ++d;
  return d;
}

DenseSpectrum diagonalize(const MatrixXc& hmat) {
  const Eigen::Index dim = hmat.rows();
  int n = 0;
  while ((Eigen::Index(1) << n) < dim) ++n;
  if ((Eigen::Index(1) << n) != dim || hmat.cols() != dim)
    throw Error(ErrorKind::shape, "Hamiltonian dimension is not a power of two");
  double scale = std::max(1.0, hmat.cwiseAbs().maxCoeff());
  if ((hmat - hmat.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw Error(ErrorKind::malformed, "dense Hamiltonian is not Hermitian");
  if (hmat.imag().isZero(0.0)) {
    Eigen::SelfAdjointEigenSolver<MatrixXr> es(hmat.real());
    return DenseSpectrum{n, hmat, es.eigenvalues(), es.eigenvectors().cast<cplx>()};
  }
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(hmat);
  return DenseSpectrum{n, hmat, es.eigenvalues(), es.eigenvectors()};
}

DenseSpectrum diagonalize(const SpinHamiltonian& h, int cap) { return diagonalize(dense_matrix(h, cap)); }

namespace {

template <typename F>
MatrixXc filtered(const DenseSpectrum& s, const MatrixXc& a, F&& weight) {
  MatrixXc ae = s.to_energy(a);
  const Eigen::Index d = ae.rows();
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) ae(i, j) *= weight(s.eigvals(i) - s.eigvals(j));
  return s.to_computational(ae);
}

}  // namespace

MatrixXc build_jump_exact(const DenseSpectrum& s, const MatrixXc& a, const FilterSpec& spec) {
  return filtered(s, a, [&](double w) { return cplx(eval_fhat(spec, w)); });
}

MatrixXc build_jump_exact(const DenseSpectrum& s, const PauliString& a, const FilterSpec& spec) {
  return build_jump_exact(s, pauli_matrix(a, s.n), spec);
}

MatrixXc build_jump_quadrature(const DenseSpectrum& s, const MatrixXc& a, const FilterTable& table) {
  // exp(iHs) A exp(-iHs) has energy-basis entries A_ij exp(i (l_i - l_j) s)
  return filtered(s, a, [&](double w) { return table.reconstruct(w); });
}

MatrixXc build_jump_quadrature(const DenseSpectrum& s, const PauliString& a, const FilterTable& table) {
  return build_jump_quadrature(s, pauli_matrix(a, s.n), table);
}

template <typename S>
void DenseLindbladSystem::JumpOp<S>::sandwich(const Mat<S>& x, Mat<S>& acc) const {
  if (is_sparse) {
    Mat<S> t = sparse * x;
    acc += (sparse * t.adjoint()).adjoint();
  } else if (upper) {
    auto u = dense.template triangularView<Eigen::StrictlyUpper>();
    Mat<S> t = u * x;
    Mat<S> w = u * t.adjoint();
    acc += w.adjoint();
  } else {
    Mat<S> t = dense * x;
    acc.noalias() += t * dense.adjoint();
  }
}

template <typename S>
void DenseLindbladSystem::JumpOp<S>::adjoint_sandwich(const Mat<S>& x, Mat<S>& acc) const {
  if (is_sparse) {
    Mat<S> t = x * sparse;
    acc += sparse.adjoint() * t;
  } else if (upper) {
    auto u = dense.template triangularView<Eigen::StrictlyUpper>();
    // x K = (K^dag x^dag)^dag
    Mat<S> w = u.adjoint() * x.adjoint();
    Mat<S> t = w.adjoint();
    acc += u.adjoint() * t;
  } else {
    Mat<S> t = x * dense;
    acc.noalias() += dense.adjoint() * t;
  }
}

namespace {

template <typename S>
bool strictly_upper(const Mat<S>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = j; i < m.rows(); ++i)
      if (m(i, j) != S(0)) return false;
  return true;
}

template <typename S>
Eigen::Index nonzeros(const Mat<S>& m) {
  return (m.array() != S(0)).count();
}

}  // namespace

DenseLindbladSystem::DenseLindbladSystem(DenseSpectrum spectrum, const std::vector<MatrixXc>& jumps,
                                         std::vector<std::string> labels, bool include_coherent,
                                         double ground_tol)
    : spectrum_(std::move(spectrum)),
      labels_(std::move(labels)),
      coherent_(include_coherent),
      ground_tol_(ground_tol) {
  const Eigen::Index d = dim();
  ground_dim_ = spectrum_.ground_dim(ground_tol_);
  gsum_ = MatrixXc::Zero(d, d);
  labels_.resize(jumps.size());
  real_ = true;
  for (const auto& k : jumps) {
    if (k.rows() != d || k.cols() != d) throw Error(ErrorKind::shape, "jump dimension mismatch");
    MatrixXc ke = spectrum_.to_energy(k);
    double cut = 1e-14 * std::max(1.0, ke.cwiseAbs().maxCoeff());
    ke = ke.unaryExpr([cut](cplx v) {
      return cplx(std::abs(v.real()) < cut ? 0.0 : v.real(), std::abs(v.imag()) < cut ? 0.0 : v.imag());
    });
    if (!ke.imag().isZero(0.0)) real_ = false;
    gsum_.noalias() += ke.adjoint() * ke;
    sum_norm_sq_ += std::pow(op_norm(ke), 2);
    jumps_e_.push_back(std::move(ke));
  }
  gsum_ = hermitize(gsum_);
  auto fill = [&](auto& ops, auto cast) {
    using S = typename std::decay_t<decltype(ops)>::value_type::Scalar;
    for (const auto& ke : jumps_e_) {
      JumpOp<S> op;
      op.dense = cast(ke);
      op.is_sparse = nonzeros(op.dense) < d * d / 10;
      if (op.is_sparse) {
        op.sparse = op.dense.sparseView();
        op.dense.resize(0, 0);
      } else {
        op.upper = strictly_upper(op.dense);
      }
      ops.push_back(std::move(op));
    }
  };
  if (real_) {
    fill(ops_r_, [](const MatrixXc& m) { return MatrixXr(m.real()); });
    gsum_r_ = gsum_.real();
  } else {
    fill(ops_c_, [](const MatrixXc& m) { return m; });
  }
  if (d > 0) {
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(gsum_, Eigen::EigenvaluesOnly);
    gsum_norm_ = es.eigenvalues().cwiseAbs().maxCoeff();
  }
}

double DenseLindbladSystem::gap() const {
  if (ground_dim_ >= dim()) return 0.0;
  return spectrum_.eigvals(ground_dim_) - spectrum_.eigvals(0);
}

template <typename S>
Mat<S> DenseLindbladSystem::dissipate(const Mat<S>& x, const std::vector<JumpOp<S>>& ops, const Mat<S>& g,
                                      bool adjoint) const {
  Mat<S> out = -0.5 * (g * x + x * g);
  for (const auto& op : ops) {
    if (adjoint)
      op.adjoint_sandwich(x, out);
    else
      op.sandwich(x, out);
  }
  return out;
}

MatrixXc DenseLindbladSystem::dissipator_energy(const MatrixXc& rho) const {
  if (!real_) return dissipate<cplx>(rho, ops_c_, gsum_, false);
  MatrixXr re = dissipate<double>(rho.real(), ops_r_, gsum_r_, false);
  MatrixXr im = dissipate<double>(rho.imag(), ops_r_, gsum_r_, false);
  MatrixXc out(rho.rows(), rho.cols());
  out.real() = re;
  out.imag() = im;
  return out;
}

MatrixXc DenseLindbladSystem::rhs_energy(const MatrixXc& rho) const {
  MatrixXc out = dissipator_energy(rho);
  if (coherent_) {
    const VectorXr& l = spectrum_.eigvals;
    for (Eigen::Index j = 0; j < rho.cols(); ++j)
      for (Eigen::Index i = 0; i < rho.rows(); ++i) out(i, j) += -I1 * (l(i) - l(j)) * rho(i, j);
  }
  return out;
}

MatrixXc DenseLindbladSystem::adjoint_rhs_energy(const MatrixXc& o) const {
  MatrixXc out;
  if (!real_) {
    out = dissipate<cplx>(o, ops_c_, gsum_, true);
  } else {
    out.resize(o.rows(), o.cols());
    out.real() = dissipate<double>(o.real(), ops_r_, gsum_r_, true);
    out.imag() = dissipate<double>(o.imag(), ops_r_, gsum_r_, true);
  }
  if (coherent_) {
    const VectorXr& l = spectrum_.eigvals;
    for (Eigen::Index j = 0; j < o.cols(); ++j)
      for (Eigen::Index i = 0; i < o.rows(); ++i) out(i, j) += I1 * (l(i) - l(j)) * o(i, j);
  }
  return out;
}

namespace {

DenseLindbladSystem assemble(const SpinHamiltonian& h, const std::vector<PauliString>& couplings,
                             const DenseOptions& opts,
                             const std::function<MatrixXc(const DenseSpectrum&, const PauliString&)>& make) {
  DenseSpectrum s = diagonalize(h, opts.cap);
  std::vector<MatrixXc> jumps;
  std::vector<std::string> labels;
  for (const auto& a : couplings) {
    if (a.max_site() >= h.n_sites) throw Error(ErrorKind::invalid_size, "coupling " + a.str() + " outside chain");
    jumps.push_back(make(s, a));
    labels.push_back(a.str());
  }
  return DenseLindbladSystem(std::move(s), jumps, std::move(labels), opts.coherent, opts.ground_tol);
}

}  // namespace

DenseLindbladSystem make_dense_system(const SpinHamiltonian& h, const std::vector<PauliString>& couplings,
                                      const FilterSpec& spec, DenseOptions opts) {
  return assemble(h, couplings, opts,
                  [&](const DenseSpectrum& s, const PauliString& a) { return build_jump_exact(s, a, spec); });
}

DenseLindbladSystem make_dense_system_quadrature(const SpinHamiltonian& h,
                                                 const std::vector<PauliString>& couplings,
                                                 const FilterTable& table, DenseOptions opts) {
  return assemble(h, couplings, opts, [&](const DenseSpectrum& s, const PauliString& a) {
    return build_jump_quadrature(s, a, table);
  });
}

MatrixXc lindblad_rhs(const DenseLindbladSystem& sys, const MatrixXc& rho) {
  const auto& s = sys.spectrum();
  if (rho.rows() != sys.dim() || rho.cols() != sys.dim()) throw Error(ErrorKind::shape, "rho dimension mismatch");
  return s.to_computational(sys.rhs_energy(s.to_energy(rho)));
}

namespace {

VectorXr hermitian_eigenvalues(const MatrixXc& m) {
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace

DenseTrajectory evolve_density(const DenseLindbladSystem& sys, const MatrixXc& rho0, const DenseEvolveOptions& opts,
                               const DenseObserver& observer) {
  if (!(opts.dt > 0.0)) throw Error(ErrorKind::invalid_argument, "dt must be positive");
  if (opts.stride < 1) throw Error(ErrorKind::invalid_argument, "stride must be at least 1");
  const Eigen::Index d = sys.dim();
  if (rho0.rows() != d || rho0.cols() != d) throw Error(ErrorKind::shape, "rho0 dimension mismatch");
  const auto& spec = sys.spectrum();
  const double dt = opts.dt;

  bool interaction = opts.method == DenseMethod::interaction_rk4 && sys.include_coherent();
  if (opts.method == DenseMethod::rk4) {
    double load = dt * ((sys.include_coherent() ? spec.norm() : 0.0) + sys.sum_jump_norm_sq());
    if (load > 0.1)
      throw Error(ErrorKind::step_size,
                  "dt (|H| + sum |K|^2) = " + std::to_string(load) + " exceeds 0.1; reduce dt");
  } else if (dt * sys.dissipator_norm() > 1.5) {
    throw Error(ErrorKind::step_size, "dt |sum K^dag K| = " + std::to_string(dt * sys.dissipator_norm()) +
                                          " exceeds 1.5; reduce dt");
  }

  // Phase factors exp(-i (l_i - l_j) tau) of the coherent flow.
  MatrixXc ph_half, ph_full;
  if (interaction) {
    ph_half.resize(d, d);
    ph_full.resize(d, d);
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index i = 0; i < d; ++i) {
        double w = spec.eigvals(i) - spec.eigvals(j);
        ph_half(i, j) = std::polar(1.0, -w * 0.5 * dt);
        ph_full(i, j) = std::polar(1.0, -w * dt);
      }
  }

  const int gdim = sys.ground_dim();
  const bool want_td = opts.trace_distance && gdim == 1;
  DenseTrajectory traj;
  MatrixXc rho = spec.to_energy(rho0);
  double trace_err = std::abs(rho.trace() - 1.0);
  double herm_err = (rho - rho.adjoint()).cwiseAbs().maxCoeff();

  auto record = [&](double t) {
    DenseSample s;
    s.t = t;
    s.energy = (spec.eigvals.cast<cplx>().cwiseProduct(rho.diagonal())).sum().real();
    s.fidelity = std::sqrt(std::max(0.0, rho.diagonal().head(gdim).real().sum()));
    s.purity = rho.squaredNorm();
    s.trace_error = trace_err;
    s.hermiticity_error = herm_err;
    if (opts.check_positivity) {
      s.min_eigenvalue = hermitian_eigenvalues(rho).minCoeff();
      if (s.min_eigenvalue < -1e-6)
        throw Error(ErrorKind::step_size,
                    "density matrix lost positivity (min eigenvalue " + std::to_string(s.min_eigenvalue) +
                        " at t = " + std::to_string(t) + "); reduce dt");
    }
    if (want_td) {
      MatrixXc diff = rho;
      diff(0, 0) -= 1.0;
      s.trace_distance = 0.5 * hermitian_eigenvalues(diff).cwiseAbs().sum();
    }
    traj.samples.push_back(s);
    if (observer) observer(t, rho);
  };

  record(0.0);
  const long steps = std::lround(opts.t_end / dt);
  for (long k = 1; k <= steps; ++k) {
    if (interaction) {
      // Lawson RK4: the coherent flow is applied exactly through phase factors
      MatrixXc r_half = ph_half.cwiseProduct(rho);
      MatrixXc k1 = sys.dissipator_energy(rho);
      MatrixXc k1_half = ph_half.cwiseProduct(k1);
      MatrixXc k2 = sys.dissipator_energy(r_half + 0.5 * dt * k1_half);
      MatrixXc k3 = sys.dissipator_energy(r_half + 0.5 * dt * k2);
      MatrixXc k4 = sys.dissipator_energy(ph_full.cwiseProduct(rho) + dt * ph_half.cwiseProduct(k3));
      rho = ph_full.cwiseProduct(rho) +
            dt / 6.0 * (ph_full.cwiseProduct(k1) + 2.0 * ph_half.cwiseProduct(k2 + k3) + k4);
    } else {
      MatrixXc k1 = sys.rhs_energy(rho);
      MatrixXc k2 = sys.rhs_energy(rho + 0.5 * dt * k1);
      MatrixXc k3 = sys.rhs_energy(rho + 0.5 * dt * k2);
      MatrixXc k4 = sys.rhs_energy(rho + dt * k3);
      rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    herm_err = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    rho = hermitize(rho);
    cplx tr = rho.trace();
    trace_err = std::abs(tr - 1.0);
    traj.max_trace_drift_rate = std::max(traj.max_trace_drift_rate, trace_err / dt);
    rho /= tr.real();
    if (k % opts.stride == 0 || k == steps) record(k * dt);
  }
  traj.final_rho = spec.to_computational(rho);
  return traj;
}

double trace_distance(const MatrixXc& rho, const MatrixXc& sigma) {
  Eigen::BDCSVD<MatrixXc> svd(rho - sigma);
  return 0.5 * svd.singularValues().sum();
}

namespace {

}  // namespace

namespace {

// Columns sqrt(lambda_k) v_k over the numerical support; roundoff eigenvalues would add sqrt(1e-17) noise.
MatrixXc sqrt_factor(const MatrixXc& m) {
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(hermitize(m));
  const VectorXr& ev = es.eigenvalues();
  const double cut = 64.0 * std::numeric_limits<double>::epsilon() * m.rows() * std::max(ev.maxCoeff(), 0.0);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < ev.size(); ++k)
    if (ev(k) > cut) keep.push_back(k);
  MatrixXc f(m.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j)
    f.col(static_cast<Eigen::Index>(j)) = std::sqrt(ev(keep[j])) * es.eigenvectors().col(keep[j]);
  return f;
}

}  // namespace

double fidelity(const MatrixXc& rho, const MatrixXc& sigma) {
  // ||sqrt(rho) sqrt(sigma)||_1 from the factors
  MatrixXc a = sqrt_factor(rho).adjoint() * sqrt_factor(sigma);
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<MatrixXc> svd(a);
  return svd.singularValues().sum();
}

double fidelity_pure(const MatrixXc& rho, const VectorXc& psi) {
  return std::sqrt(std::max(0.0, (psi.adjoint() * rho * psi)(0, 0).real()));
}

std::optional<double> settle_time(const std::vector<double>& t, const std::vector<double>& v, double threshold) {
  if (t.empty()) return std::nullopt;
  long last = -1;
  for (long i = static_cast<long>(v.size()) - 1; i >= 0; --i)
    if (v[i] > threshold) {
      last = i;
      break;
    }
  if (last < 0) return t.front();
  if (last + 1 >= static_cast<long>(t.size())) return std::nullopt;
  return t[last + 1];
}

MixingReport mixing_times(const DenseTrajectory& traj, const DenseLindbladSystem& sys, double eta,
                          const std::string& label) {
  MixingReport r;
  r.eta = eta;
  r.initial_state_label = label;
  std::vector<double> t, infid, de, td;
  bool have_td = !traj.samples.empty();
  const double l0 = sys.spectrum().eigvals(0);
  for (const auto& s : traj.samples) {
    t.push_back(s.t);
    infid.push_back(1.0 - s.fidelity * s.fidelity);
    de.push_back(std::abs(s.energy - l0));
    td.push_back(s.trace_distance);
    if (s.trace_distance < 0) have_td = false;
  }
  r.tau_fidelity = settle_time(t, infid, eta);
  r.tau_energy = settle_time(t, de, eta);
  if (have_td) r.tau_trace = settle_time(t, td, eta);
  try {
    r.fitted_rate = fit_decay_rate(t, infid, 0.0).rate;
  } catch (const Error&) {
    r.fitted_rate = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

double energy_chain_slack(const DenseSample& s, double lambda0, double hnorm, double gap) {
  double e = s.energy - lambda0;
  double infid = 1.0 - s.fidelity * s.fidelity;
  double lower = e / (4.0 * hnorm);
  double upper = std::sqrt(std::max(0.0, e) / gap);
  return std::min({0.5 * infid - lower, s.trace_distance - 0.5 * infid, upper - s.trace_distance});
}

MatrixXc liouvillian_matrix(const DenseLindbladSystem& sys) {
  if (sys.n() > 5) throw Error(ErrorKind::invalid_size, "Liouvillian matrix limited to 5 qubits");
  const Eigen::Index d = sys.dim();
  const MatrixXc id = MatrixXc::Identity(d, d);
  const MatrixXc& h = sys.spectrum().hmat;
  // column-stacking: vec(A rho B) = (B^T kron A) vec(rho)
  MatrixXc l = MatrixXc::Zero(d * d, d * d);
  if (sys.include_coherent()) {
    MatrixXc a = Eigen::kroneckerProduct(id, h);
    MatrixXc b = Eigen::kroneckerProduct(MatrixXc(h.transpose()), id);
    l += -I1 * (a - b);
  }
  for (std::size_t k = 0; k < sys.jump_count(); ++k) {
    MatrixXc kc = sys.jump(k);
    MatrixXc kk = kc.adjoint() * kc;
    MatrixXc a = Eigen::kroneckerProduct(MatrixXc(kc.conjugate()), kc);
    MatrixXc b = Eigen::kroneckerProduct(id, kk);
    MatrixXc c = Eigen::kroneckerProduct(MatrixXc(kk.transpose()), id);
    l += a - 0.5 * b - 0.5 * c;
  }
  return l;
}

LiouvillianSpectrum liouvillian_spectrum(const DenseLindbladSystem& sys, double zero_tol) {
  MatrixXc l = liouvillian_matrix(sys);
  Eigen::ComplexEigenSolver<MatrixXc> es(l, false);
  LiouvillianSpectrum out;
  out.eigvals = es.eigenvalues();
  out.gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < out.eigvals.size(); ++i) {
    if (std::abs(out.eigvals(i)) <= zero_tol)
      ++out.kernel_dim;
    else
      out.gap = std::min(out.gap, -out.eigvals(i).real());
  }
  return out;
}

namespace {

// delta_i applied to the part of o selected by same_bit (P_i) or its complement (Q_i).
MatrixXc oscillation_part(const MatrixXc& o, std::uint64_t bit, bool diagonal_sector) {
  const Eigen::Index d = o.rows();
  MatrixXc m = MatrixXc::Zero(d, d);
  for (Eigen::Index c = 0; c < d; ++c)
    for (Eigen::Index r = 0; r < d; ++r) {
      bool same = ((static_cast<std::uint64_t>(r) ^ static_cast<std::uint64_t>(c)) & bit) == 0;
      if (same != diagonal_sector) continue;
      if (same) {
        std::uint64_t r0 = r & ~bit, c0 = c & ~bit;
        m(r, c) = o(r, c) - 0.5 * (o(r0, c0) + o(r0 | bit, c0 | bit));
      } else {
        m(r, c) = o(r, c);
      }
    }
  return m;
}

double norm_of(const MatrixXc& m, bool hermitian) {
  if (hermitian) return hermitian_eigenvalues(m).cwiseAbs().maxCoeff();
  return op_norm(m);
}

}  // namespace

double oscillator_norm(const MatrixXc& o, int n) {
  if (o.rows() != (Eigen::Index(1) << n) || o.cols() != o.rows())
    throw Error(ErrorKind::shape, "observable dimension does not match 2^n");
  bool herm = (o - o.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, o.cwiseAbs().maxCoeff());
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    std::uint64_t bit = std::uint64_t(1) << (n - 1 - i);
    total += norm_of(oscillation_part(o, bit, true), herm);
    total += norm_of(oscillation_part(o, bit, false), herm);
  }
  return total;
}

HeisenbergDecay heisenberg_decay_check(const DenseLindbladSystem& sys, const MatrixXc& o0, double t_end, double dt,
                                       int stride) {
  if (!(dt > 0.0)) throw Error(ErrorKind::invalid_argument, "dt must be positive");
  const auto& spec = sys.spectrum();
  const int n = sys.n();
  const double dim = static_cast<double>(sys.dim());
  HeisenbergDecay out;
  MatrixXc o = spec.to_energy(o0);
  auto record = [&](double t) {
    MatrixXc oc = spec.to_computational(o);
    double tn = oscillator_norm(oc, n);
    MatrixXc centered = oc - (oc.trace() / dim) * MatrixXc::Identity(sys.dim(), sys.dim());
    double lhs = norm_of(hermitize(centered), true);
    out.max_subadditivity_violation = std::max(out.max_subadditivity_violation, lhs - tn);
    if (!out.norms.empty() && tn > out.norms.back() * (1.0 + 1e-9) + 1e-14) out.monotone = false;
    out.times.push_back(t);
    out.norms.push_back(tn);
  };
  record(0.0);
  const long steps = std::lround(t_end / dt);
  for (long k = 1; k <= steps; ++k) {
    MatrixXc k1 = sys.adjoint_rhs_energy(o);
    MatrixXc k2 = sys.adjoint_rhs_energy(o + 0.5 * dt * k1);
    MatrixXc k3 = sys.adjoint_rhs_energy(o + 0.5 * dt * k2);
    MatrixXc k4 = sys.adjoint_rhs_energy(o + dt * k3);
    o += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (k % stride == 0 || k == steps) record(k * dt);
  }
  std::vector<double> t, ln;
  double floor = 1e-12 * std::max(1e-300, out.norms.front());
  for (std::size_t i = 0; i < out.norms.size(); ++i)
    if (out.norms[i] > floor) {
      t.push_back(out.times[i]);
      ln.push_back(std::log(out.norms[i]));
    }
  if (t.size() >= 2) {
    LineFit lf = fit_line(t, ln);
    out.rate = -lf.slope;
    out.r2 = lf.r2;
  }
  return out;
}

MatrixXc random_pure_state(int n, std::uint64_t seed) {
  const Eigen::Index d = Eigen::Index(1) << n;
  auto g = random_fields(static_cast<int>(2 * d), 0.0, 1.0, seed);
  VectorXc psi(d);
  for (Eigen::Index i = 0; i < d; ++i) psi(i) = cplx(g[2 * i], g[2 * i + 1]);
  psi.normalize();
  return psi * psi.adjoint();
}

MatrixXc random_mixed_state(int n, std::uint64_t seed, int rank) {
  const Eigen::Index d = Eigen::Index(1) << n;
  const Eigen::Index r = rank > 0 ? rank : d;
  auto g = random_fields(static_cast<int>(2 * d * r), 0.0, 1.0, seed);
  MatrixXc a(d, r);
  for (Eigen::Index j = 0; j < r; ++j)
    for (Eigen::Index i = 0; i < d; ++i) a(i, j) = cplx(g[2 * (j * d + i)], g[2 * (j * d + i) + 1]);
  MatrixXc rho = a * a.adjoint();
  return rho / rho.trace().real();
}

MatrixXc initial_state(const std::string& label, const DenseLindbladSystem& sys, std::uint64_t seed) {
  const Eigen::Index d = sys.dim();
  MatrixXc rho = MatrixXc::Zero(d, d);
  if (label == "maximally_mixed") return MatrixXc::Identity(d, d) / static_cast<double>(d);
  if (label == "all_up") {
    rho(0, 0) = 1.0;
    return rho;
  }
  if (label == "all_down") {
    rho(d - 1, d - 1) = 1.0;
    return rho;
  }
  if (label == "ground") {
    VectorXc g = sys.spectrum().eigvecs.col(0);
    return g * g.adjoint();
  }
  if (label.rfind("random_pure", 0) == 0) {
    std::uint64_t k = 0;
    if (auto colon = label.find(':'); colon != std::string::npos) k = std::stoull(label.substr(colon + 1));
    return random_pure_state(sys.n(), seed * 1000003ULL + k);
  }
  throw Error(ErrorKind::config, "unknown initial state '" + label + "'");
}

}  // namespace gsprep

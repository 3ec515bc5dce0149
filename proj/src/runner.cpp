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

#include "gsprep/runner.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>

#include "gsprep/adiabatic.hpp"

namespace gsprep {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string join(const std::string& dir, const std::string& file) { return dir + "/" + file; }

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json fit_json(const ScanFit& f) {
  return json{{"slope", f.fit.slope},
              {"intercept", f.fit.intercept},
              {"r2", f.fit.r2},
              {"ci95", f.ci95},
              {"ok", f.ok},
              {"note", f.note}};
}

CovarianceState initial_covariance(const std::string& label, const MajoranaQuadratic& h) {
  if (label == "maximally_mixed") return maximally_mixed_covariance(h.n_modes);
  if (label == "all_up") return product_covariance(h.n_modes, true);
  if (label == "all_down") return product_covariance(h.n_modes, false);
  if (label == "ground") return vacuum_covariance(h);
  throw Error(ErrorKind::config, "quasifree engine has no initial state '" + label + "'");
}

std::vector<LinearJump> quasifree_jumps(const ExperimentConfig& c, const MajoranaQuadratic& mq,
                                        const std::vector<PauliString>& couplings, const FilterSpec& spec) {
  if (!c.filter.quadrature) return jumps_for(mq, couplings, spec);
  FilterTable table = time_domain_samples(spec);
  std::vector<LinearJump> out;
  for (const auto& a : couplings)
    out.push_back(jump_coefficients(mq, majorana_coupling(a, mq.n_modes), table, a.str()));
  return out;
}

}  // namespace

int worker_count() {
  if (const char* env = std::getenv("GSPREP_WORKERS")) {
    int w = std::atoi(env);
    if (w > 0) return w;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

SpinHamiltonian build_model(const ModelConfig& m, int n, std::uint64_t seed) {
  Boundary b = parse_boundary(m.boundary);
  if (m.name == "tfim") return build_tfim(n, m.j, m.g, b);
  if (m.name == "cluster") return build_cluster(n, m.j, m.h1);
  if (m.name == "random_tfim") return build_random_tfim(n, m.j, m.mean, m.variance, seed, b);
  if (m.name == "annni") return build_annni(n, m.j1, m.j2, m.gamma, b);
  if (m.name == "heisenberg") return build_heisenberg_field(n, m.j, m.xi, m.g);
  if (m.name == "zfield") return build_z_field(n, m.g);
  throw Error(ErrorKind::config, "field 'model.name': unknown model '" + m.name + "'");
}

std::vector<PauliString> build_couplings(const ExperimentConfig& c, int n) {
  if (c.couplings != "custom") return coupling_preset(c.couplings, n);
  std::vector<PauliString> out;
  for (const auto& s : c.coupling_list) {
    PauliString p = PauliString::parse(s);
    if (p.max_site() >= n) throw Error(ErrorKind::config, "field 'couplings': " + s + " outside the chain");
    out.push_back(p);
  }
  return out;
}

double default_delta(const std::string& model) {
  if (model == "cluster") return 0.1;
  if (model == "annni") return 0.2;
  return 0.5;
}

FilterSpec filter_for(const ExperimentConfig& c, const SpinHamiltonian& h) {
  double delta = c.filter.delta > 0 ? c.filter.delta : default_delta(c.model.name);
  double wmax = c.filter.omega_max > 0 ? c.filter.omega_max : 2.0 * h.norm_bound();
  return design_filter(delta, wmax);
}

std::pair<int, int> sop_endpoints(const ExperimentConfig& c, int n) {
  int a = c.sop_a >= 0 ? c.sop_a : n / 5;
  int b = c.sop_b >= 0 ? c.sop_b : n - 1 - n / 5;
  if (c.sop_b < 0 && (b - a) % 2 != 0) --b;
  return {a, b};
}

QuasiFreeRun quasifree_run(const ExperimentConfig& c, int n, double horizon, int steps) {
  SpinHamiltonian h = build_model(c.model, n, c.seed);
  MajoranaQuadratic mq = jordan_wigner(h);
  auto couplings = build_couplings(c, n);
  auto jumps = quasifree_jumps(c, mq, couplings, filter_for(c, h));
  QuasiFreeGenerator gen = build_generator(mq, jumps, GeneratorOptions{c.coherent});

  QuasiFreeRun r;
  r.n = n;
  r.gap = c.cluster_tol > 0 ? effective_rapidity_gap(gen, c.cluster_tol) : rapidity_gap(gen);
  r.ground_energy = energy(mq, vacuum_covariance(mq).gamma);
  try {
    r.e0 = energy(mq, steady_state(gen).state.gamma);
  } catch (const Error&) {
    r.e0 = r.ground_energy;
  }

  CovarianceEvolveOptions opts;
  opts.method = c.method == "rk4" ? CovarianceMethod::rk4 : CovarianceMethod::propagator;
  if (horizon > 0) {
    if (!(r.gap > 0)) throw Error(ErrorKind::no_bound, "horizon needs a positive gap");
    opts.t_end = horizon / r.gap;
    opts.dt = opts.t_end / steps;
    opts.stride = 1;
  } else {
    opts.t_end = c.t_end;
    opts.dt = c.dt;
    opts.stride = c.stride;
  }
  r.t_end = opts.t_end;

  const bool want_sop = c.model.name == "cluster";
  auto [a, b] = sop_endpoints(c, n);
  QuasiParticles qp = quasi_particles(mq);
  evolve_covariance(gen, initial_covariance(c.initial, mq), opts, [&](const CovarianceState& s) {
    r.t.push_back(s.time);
    r.energy.push_back(energy(mq, s.gamma));
    r.sop.push_back(want_sop ? sop(s.gamma, a, b) : kNaN);
    r.proxy.push_back(std::sqrt(std::clamp(particle_number(qp, s.gamma), 0.0, 1.0)));
  });
  try {
    r.fit = fit_decay_rate(r.t, r.energy, r.e0);
  } catch (const Error& e) {
    r.fit_error = e.what();
  }
  return r;
}

GapRecord quasifree_gap(const ExperimentConfig& c, int n) {
  SpinHamiltonian h = build_model(c.model, n, c.seed);
  MajoranaQuadratic mq = jordan_wigner(h);
  auto jumps = quasifree_jumps(c, mq, build_couplings(c, n), filter_for(c, h));
  QuasiFreeGenerator gen = build_generator(mq, jumps, GeneratorOptions{c.coherent});
  GapRecord g;
  g.n = n;
  g.gap = c.cluster_tol > 0 ? effective_rapidity_gap(gen, c.cluster_tol) : rapidity_gap(gen);
  // edge zero modes (cluster) leave the summary undefined; the bound is declined
  g.nh_gap = g.kappa_v = g.bound = kNaN;
  try {
    NonHermitianSummary s = nonhermitian_summary(mq, jumps);
    g.nh_gap = s.gap;
    g.kappa_v = s.kappa_v;
    g.bound = mixing_bound(s, n, c.eta);
  } catch (const Error&) {
  }
  return g;
}

namespace {

double t_quantile_975(int dof) {
  static const double table[] = {12.706, 4.303, 3.182, 2.776, 2.571, 2.447, 2.365, 2.306, 2.262, 2.228,
                                 2.201,  2.179, 2.160, 2.145, 2.131, 2.120, 2.110, 2.101, 2.093, 2.086};
  if (dof < 1) return kNaN;
  return dof <= 20 ? table[dof - 1] : 1.96;
}

ScanFit finish_fit(LineFit f, std::size_t points) {
  ScanFit s;
  s.fit = f;
  s.ci95 = t_quantile_975(static_cast<int>(points) - 2) * f.slope_stderr;
  s.ok = points >= 4;
  if (!s.ok) s.note = "fewer than 4 points; slope reported without a confidence claim";
  return s;
}

}  // namespace

ScanFit scan_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  return finish_fit(fit_scaling(xs, ys), xs.size());
}

ScanFit scan_fit_semilog(const std::vector<double>& xs, const std::vector<double>& ys) {
  return finish_fit(fit_semilog_x(xs, ys), xs.size());
}

DenseLindbladSystem dense_system_for(const ExperimentConfig& c, int n) {
  SpinHamiltonian h = build_model(c.model, n, c.seed);
  FilterSpec spec = filter_for(c, h);
  DenseOptions opts;
  opts.coherent = c.coherent;
  opts.ground_tol = c.ground_tol;
  auto couplings = build_couplings(c, n);
  if (c.filter.quadrature) return make_dense_system_quadrature(h, couplings, time_domain_samples(spec), opts);
  return make_dense_system(h, couplings, spec, opts);
}

std::vector<DenseRun> dense_runs(const ExperimentConfig& c, int n) {
  DenseLindbladSystem sys = dense_system_for(c, n);
  std::vector<std::string> labels = c.initial_states.empty() ? std::vector<std::string>{c.initial} : c.initial_states;
  DenseEvolveOptions eo;
  eo.t_end = c.t_end;
  eo.dt = c.dt;
  eo.stride = c.stride;
  eo.method = c.method == "rk4" ? DenseMethod::rk4 : DenseMethod::interaction_rk4;
  std::vector<DenseRun> out;
  for (const auto& label : labels) {
    DenseRun r;
    r.n = n;
    r.label = label;
    r.trajectory = evolve_density(sys, initial_state(label, sys, c.seed), eo);
    r.report = mixing_times(r.trajectory, sys, c.eta, label);
    r.gap = sys.gap();
    r.lambda0 = sys.spectrum().eigvals(0);
    r.hnorm = sys.spectrum().norm();
    out.push_back(std::move(r));
  }
  return out;
}

json run_quasifree(const ExperimentConfig& c) {
  ensure_directory(c.output);
  auto sizes = c.sizes();
  auto runs = parallel_map<QuasiFreeRun>(sizes.size(), [&](std::size_t i) {
    return quasifree_run(c, sizes[i], c.horizon, c.steps);
  });
  CsvTable scan{{"N", "gap", "fit_rate", "e0", "t_end"}, {}};
  json records = json::array();
  std::vector<double> ns, gaps;
  for (const auto& r : runs) {
    CsvTable traj{{"t", "energy", "sop", "tracedist_proxy"}, {}};
    for (std::size_t k = 0; k < r.t.size(); ++k) traj.rows.push_back({r.t[k], r.energy[k], r.sop[k], r.proxy[k]});
    write_csv(join(c.output, "quasifree_N" + std::to_string(r.n) + ".csv"), traj);
    double rate = r.fit ? r.fit->rate : kNaN;
    scan.rows.push_back({double(r.n), r.gap, rate, r.e0, r.t_end});
    json rec{{"N", r.n}, {"gap", r.gap}, {"fit_rate", r.fit ? json(rate) : json(nullptr)}, {"e0", r.e0},
             {"ground_energy", r.ground_energy}, {"final_energy", r.energy.back()}};
    if (r.fit && !r.fit->ok) rec["fit_warning"] = r.fit->warning;
    if (!r.fit_error.empty()) rec["fit_warning"] = r.fit_error;
    if (c.model.name == "cluster") rec["final_sop"] = r.sop.back();
    records.push_back(rec);
    ns.push_back(r.n);
    gaps.push_back(r.gap);
  }
  write_csv(join(c.output, "scan.csv"), scan);
  json out = provenance("quasifree-run", to_json(c));
  out["records"] = records;
  if (ns.size() >= 2) out["gap_fit"] = fit_json(scan_fit(ns, gaps));
  write_json(join(c.output, "run.json"), out);
  return out;
}

json run_gap_scan(const ExperimentConfig& c) {
  ensure_directory(c.output);
  auto sizes = c.sizes();
  CsvTable scan;
  json records = json::array();
  std::vector<double> ns, gaps;
  if (c.engine == "dense") {
    auto recs = parallel_map<LiouvillianSpectrum>(sizes.size(), [&](std::size_t i) {
      return liouvillian_spectrum(dense_system_for(c, sizes[i]));
    });
    scan.header = {"N", "gap", "kernel_dim"};
    for (std::size_t i = 0; i < sizes.size(); ++i) {
      scan.rows.push_back({double(sizes[i]), recs[i].gap, double(recs[i].kernel_dim)});
      records.push_back({{"N", sizes[i]}, {"gap", recs[i].gap}, {"kernel_dim", recs[i].kernel_dim}});
      ns.push_back(sizes[i]);
      gaps.push_back(recs[i].gap);
    }
  } else {
    auto recs = parallel_map<GapRecord>(sizes.size(), [&](std::size_t i) { return quasifree_gap(c, sizes[i]); });
    scan.header = {"N", "gap", "kappa_v", "nh_gap", "mixing_bound"};
    for (const auto& r : recs) {
      scan.rows.push_back({double(r.n), r.gap, r.kappa_v, r.nh_gap, r.bound});
      records.push_back({{"N", r.n},
                         {"gap", r.gap},
                         {"kappa_v", r.kappa_v},
                         {"nh_gap", r.nh_gap},
                         {"mixing_bound", std::isnan(r.bound) ? json(nullptr) : json(r.bound)}});
      ns.push_back(r.n);
      gaps.push_back(r.gap);
    }
  }
  write_csv(join(c.output, "gap_scan.csv"), scan);
  json out = provenance("gap-scan", to_json(c));
  out["records"] = records;
  if (ns.size() >= 2) out["gap_fit"] = fit_json(scan_fit(ns, gaps));
  write_json(join(c.output, "run.json"), out);
  return out;
}

json run_dense(const ExperimentConfig& c) {
  ensure_directory(c.output);
  auto sizes = c.sizes();
  auto all = parallel_map<std::vector<DenseRun>>(sizes.size(), [&](std::size_t i) { return dense_runs(c, sizes[i]); });
  CsvTable scan{{"N", "gap", "tau_fidelity", "tau_energy", "tau_trace"}, {}};
  json records = json::array();
  std::vector<double> ln_ok, tau_ok;
  for (const auto& runs : all) {
    // worst case over the tested starts; NaN if any start fails to settle
    double tf = 0.0, te = 0.0, tt = 0.0;
    for (const auto& r : runs) {
      CsvTable traj{{"t", "energy", "fidelity", "trace_distance", "purity"}, {}};
      for (const auto& s : r.trajectory.samples)
        traj.rows.push_back({s.t, s.energy, s.fidelity, s.trace_distance < 0 ? kNaN : s.trace_distance, s.purity});
      write_csv(join(c.output, "dense_N" + std::to_string(r.n) + "_" + r.label + ".csv"), traj);
      auto worst = [](double& acc, const std::optional<double>& v) { acc = v ? std::max(acc, *v) : kNaN; };
      worst(tf, r.report.tau_fidelity);
      worst(te, r.report.tau_energy);
      worst(tt, r.report.tau_trace);
      records.push_back({{"N", r.n},
                         {"initial_state", r.label},
                         {"eta", r.report.eta},
                         {"tau_fidelity", optional_json(r.report.tau_fidelity)},
                         {"tau_energy", optional_json(r.report.tau_energy)},
                         {"tau_trace", optional_json(r.report.tau_trace)},
                         {"fitted_rate", std::isnan(r.report.fitted_rate) ? json(nullptr) : json(r.report.fitted_rate)},
                         {"max_trace_drift_rate", r.trajectory.max_trace_drift_rate}});
    }
    const auto& r0 = runs.front();
    scan.rows.push_back({double(r0.n), r0.gap, tf, te, tt});
    if (!std::isnan(tf)) {
      ln_ok.push_back(r0.n);
      tau_ok.push_back(tf);
    }
  }
  write_csv(join(c.output, "scan.csv"), scan);
  json out = provenance("dense-run", to_json(c));
  out["records"] = records;
  if (ln_ok.size() >= 2) out["tau_fidelity_vs_lnN"] = fit_json(scan_fit_semilog(ln_ok, tau_ok));
  write_json(join(c.output, "run.json"), out);
  return out;
}

json run_sop(const ExperimentConfig& c) {
  if (c.model.name != "cluster") throw Error(ErrorKind::config, "field 'model.name': sop-run needs the cluster model");
  ensure_directory(c.output);
  const int n = c.sizes().front();
  QuasiFreeRun base = quasifree_run(c, n);
  CsvTable traj{{"t", "energy", "sop"}, {}};
  for (std::size_t k = 0; k < base.t.size(); ++k) traj.rows.push_back({base.t[k], base.energy[k], base.sop[k]});
  write_csv(join(c.output, "sop_trajectory.csv"), traj);

  std::vector<double> sweep = c.sweep;
  if (sweep.empty())
    for (int k = 1; k <= 12; ++k) sweep.push_back(0.1 * k);
  auto [a, b] = sop_endpoints(c, n);
  struct Point {
    double ground, final;
  };
  auto pts = parallel_map<Point>(sweep.size(), [&](std::size_t i) {
    ExperimentConfig ci = c;
    ci.model.h1 = sweep[i];
    MajoranaQuadratic mq = jordan_wigner(build_model(ci.model, n));
    Point p{sop(vacuum_covariance(mq).gamma, a, b), kNaN};
    p.final = quasifree_run(ci, n).sop.back();
    return p;
  });
  CsvTable sw{{"h1", "sop_ground", "sop_final"}, {}};
  for (std::size_t i = 0; i < sweep.size(); ++i) sw.rows.push_back({sweep[i], pts[i].ground, pts[i].final});
  write_csv(join(c.output, "sop_sweep.csv"), sw);
  json out = provenance("sop-run", to_json(c));
  out["sop_endpoints"] = {a, b};
  out["final_sop"] = base.sop.back();
  out["final_energy"] = base.energy.back();
  out["ground_energy"] = base.ground_energy;
  write_json(join(c.output, "run.json"), out);
  return out;
}

json run_oscillator_check(const ExperimentConfig& c) {
  if (c.engine != "dense") throw Error(ErrorKind::config, "field 'engine': oscillator-check runs on the dense engine");
  ensure_directory(c.output);
  const int n = c.sizes().front();
  DenseLindbladSystem sys = dense_system_for(c, n);
  PauliString o = PauliString::parse(c.observable);
  if (o.max_site() >= n) throw Error(ErrorKind::config, "field 'observable': outside the chain");
  HeisenbergDecay d = heisenberg_decay_check(sys, pauli_matrix(o, n), c.t_end, c.dt, c.stride);
  CsvTable t{{"t", "norm"}, {}};
  for (std::size_t k = 0; k < d.times.size(); ++k) t.rows.push_back({d.times[k], d.norms[k]});
  write_csv(join(c.output, "oscillator.csv"), t);
  json out = provenance("oscillator-check", to_json(c));
  out["rate"] = d.rate;
  out["r2"] = d.r2;
  out["monotone"] = d.monotone;
  out["max_subadditivity_violation"] = d.max_subadditivity_violation;
  if (!d.monotone) out["warning"] = "oscillator norm is not monotone; see oscillator.csv";
  write_json(join(c.output, "run.json"), out);
  return out;
}

json run_asp_compare(const ExperimentConfig& c) {
  if (c.model.name != "annni") throw Error(ErrorKind::config, "field 'model.name': asp-compare needs the annni model");
  ensure_directory(c.output);
  const int l = c.sizes().front();
  SpinHamiltonian target = build_model(c.model, l);
  SpinHamiltonian init = build_z_field(l, c.adiabatic.h0 / 2.0);
  Boundary ob = parse_boundary(c.model.boundary);
  const std::uint64_t dim = std::uint64_t(1) << l;
  VectorXc psi0 = VectorXc::Zero(dim);
  psi0(0) = 1.0;

  AspOptions ao;
  ao.dt = c.adiabatic.dt;
  ao.stride = c.adiabatic.stride;
  ao.manifold_tol = c.ground_tol;
  ao.order_boundary = ob;
  auto write_asp = [&](const AspTrace& tr, const std::string& file) {
    CsvTable t{{"t", "s", "overlap", "m1", "m2"}, {}};
    for (const auto& s : tr.samples) t.rows.push_back({s.t, s.s, s.overlap, s.m1, s.m2});
    write_csv(join(c.output, file), t);
  };
  AspTrace asp = asp_run(init, target, Schedule::linear(c.adiabatic.total_time), psi0, ao);
  write_asp(asp, "asp.csv");

  auto path = gap_path(init, target, 201, c.ground_tol);
  CsvTable gp{{"s", "gap", "manifold_dim"}, {}};
  for (const auto& p : path) gp.rows.push_back({p.s, p.gap, double(p.manifold_dim)});
  write_csv(join(c.output, "gap_path.csv"), gp);

  json out = provenance("asp-compare", to_json(c));
  out["target_dim"] = asp.target_dim;
  out["m1_target"] = asp.m1_target;
  out["m2_target"] = asp.m2_target;
  out["asp_final_overlap"] = asp.samples.back().overlap;
  out["asp_tail_swing"] = tail_swing([&] {
    std::vector<double> v;
    for (const auto& s : asp.samples) v.push_back(s.overlap);
    return v;
  }());

  if (c.adiabatic.dsp_time > 0) {
    DspOptions d;
    d.delta = c.filter.delta > 0 ? c.filter.delta : default_delta("annni");
    d.omega_max = c.filter.omega_max;
    d.t_end = c.adiabatic.dsp_time;
    d.dt = c.adiabatic.dsp_dt;
    d.stride = std::max(1, static_cast<int>(std::lround(1.0 / d.dt)));
    d.manifold_tol = c.ground_tol;
    d.initial = c.initial == "maximally_mixed" ? "all_down" : c.initial;
    d.order_boundary = ob;
    DspTrace dsp = dsp_run(target, build_couplings(c, l), d);
    CsvTable t{{"t", "overlap", "m1", "m2", "energy"}, {}};
    std::vector<double> m1, m2;
    for (const auto& s : dsp.samples) {
      t.rows.push_back({s.t, s.overlap, s.m1, s.m2, s.energy});
      m1.push_back(s.m1);
      m2.push_back(s.m2);
    }
    write_csv(join(c.output, "dsp.csv"), t);
    AspTrace equal = asp_run(init, target, Schedule::linear(c.adiabatic.dsp_time), psi0, ao);
    write_asp(equal, "asp_equal_budget.csv");
    out["dsp_final_overlap"] = dsp.samples.back().overlap;
    out["dsp_m1_rebound"] = max_rebound(m1, dsp.m1_target);
    out["dsp_m2_rebound"] = max_rebound(m2, dsp.m2_target);
    out["asp_equal_budget_final_overlap"] = equal.samples.back().overlap;
  }
  write_json(join(c.output, "run.json"), out);
  return out;
}

}  // namespace gsprep

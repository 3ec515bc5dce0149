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

#include "gsprep/filter.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>

namespace gsprep {

namespace {

constexpr int kPanelNodes = 16;

}  // namespace

FilterSpec design_filter(double delta, double omega_max) {
  if (!(delta > 0.0) || !(omega_max > delta) || !std::isfinite(omega_max))
    throw Error(ErrorKind::invalid_argument, "filter needs 0 < delta < omega_max");
  if (delta >= omega_max / 2.0)
    throw Error(ErrorKind::infeasible_passband,
                "delta = " + std::to_string(delta) + " leaves no passband below omega_max = " +
                    std::to_string(omega_max));
  return FilterSpec{delta, omega_max, -omega_max + delta, -delta};
}

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return 1.0 / (1.0 + std::exp(1.0 / x - 1.0 / (1.0 - x)));
}

double smooth_step_derivative(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  double s = smooth_step(x);
  return s * (1.0 - s) * (1.0 / (x * x) + 1.0 / ((1.0 - x) * (1.0 - x)));
}

double eval_fhat(const FilterSpec& spec, double omega) {
  if (omega >= 0.0 || omega <= -spec.omega_max) return 0.0;
  if (omega > spec.b) return smooth_step(-omega / spec.delta);
  if (omega < spec.a) return smooth_step((omega + spec.omega_max) / spec.delta);
  return 1.0;
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  MatrixXr jac = MatrixXr::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jac(k, k - 1) = jac(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<MatrixXr> es(jac);
  x.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
  w.resize(n);
  for (int k = 0; k < n; ++k) w[k] = 2.0 * es.eigenvectors()(0, k) * es.eigenvectors()(0, k);
}

namespace {

// Composite Gauss-Legendre samples of S' on [0, 1].
struct EdgeRule {
  std::vector<double> x, wd;  // nodes and weight * S'(x)

  explicit EdgeRule(int panels) {
    std::vector<double> gx, gw;
    gauss_legendre(kPanelNodes, gx, gw);
    double width = 1.0 / panels;
    for (int p = 0; p < panels; ++p) {
      for (int m = 0; m < kPanelNodes; ++m) {
        double xm = width * (p + 0.5 * (gx[m] + 1.0));
        x.push_back(xm);
        wd.push_back(0.5 * width * gw[m] * smooth_step_derivative(xm));
      }
    }
  }

  // int_0^1 S'(x) exp(-i theta x) dx
  cplx integrate(double theta) const {
    cplx acc = 0.0;
    for (std::size_t m = 0; m < x.size(); ++m) acc += wd[m] * std::polar(1.0, -theta * x[m]);
    return acc;
  }
};

int panels_for(double theta_max) { return std::max(8, static_cast<int>(std::ceil(std::abs(theta_max) / 2.0))); }

cplx time_value(const FilterSpec& spec, const EdgeRule& rule, double s) {
  if (std::abs(s) < 1e-9) return (spec.omega_max - spec.delta) / (2.0 * std::numbers::pi);
  // integration by parts leaves only the two transition windows
  cplx edge = rule.integrate(spec.delta * s);
  cplx num = std::polar(1.0, spec.omega_max * s) * edge - std::conj(edge);
  return num / (2.0 * std::numbers::pi * I1 * s);
}

}  // namespace

cplx filter_time_value(const FilterSpec& spec, double s) {
  EdgeRule rule(panels_for(spec.delta * s));
  return time_value(spec, rule, s);
}

cplx FilterTable::reconstruct(double omega) const {
  cplx acc = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) acc += weights[j] * values[j] * std::polar(1.0, omega * nodes[j]);
  return acc;
}

int default_node_count(const FilterSpec& spec, double truncation) {
  double h = 0.8 * std::numbers::pi / spec.omega_max;
  int n = static_cast<int>(std::ceil(2.0 * truncation / h)) + 1;
  if (n % 2 == 0) ++n;
  return std::max(n, 65);
}

double quadrature_error(const FilterSpec& spec, const FilterTable& table, int grid) {
  const std::size_t n = table.nodes.size();
  bool uniform = n >= 2;
  double h = uniform ? table.nodes[1] - table.nodes[0] : 0.0;
  for (std::size_t j = 2; uniform && j < n; ++j)
    uniform = std::abs(table.nodes[j] - table.nodes[j - 1] - h) < 1e-9 * std::abs(h);
  std::vector<cplx> pf(n);
  for (std::size_t j = 0; j < n; ++j) pf[j] = table.weights[j] * table.values[j];
  double err = 0.0;
  for (int g = 0; g < grid; ++g) {
    double omega = -spec.omega_max + 2.0 * spec.omega_max * g / (grid - 1);
    cplx rec = 0.0;
    if (uniform) {
      // exp(i omega s_j) by recurrence, re-anchored every 256 nodes
      cplx step = std::polar(1.0, omega * h);
      cplx ph;
      for (std::size_t j = 0; j < n; ++j) {
        if (j % 256 == 0) ph = std::polar(1.0, omega * table.nodes[j]);
        rec += pf[j] * ph;
        ph *= step;
      }
    } else {
      rec = table.reconstruct(omega);
    }
    err = std::max(err, std::abs(rec - eval_fhat(spec, omega)));
  }
  return err;
}

FilterTable time_domain_samples(const FilterSpec& spec, int n_nodes, double truncation, double tolerance) {
  if (n_nodes < 64) throw Error(ErrorKind::invalid_argument, "time-domain quadrature needs at least 64 nodes");
  if (!(truncation > 0.0)) throw Error(ErrorKind::invalid_argument, "truncation T must be positive");
  FilterTable t;
  t.truncation = truncation;
  const double h = 2.0 * truncation / (n_nodes - 1);
  EdgeRule rule(panels_for(spec.delta * truncation));
  t.nodes.resize(n_nodes);
  t.weights.assign(n_nodes, h);
  t.values.resize(n_nodes);
  t.weights.front() = t.weights.back() = 0.5 * h;
  for (int j = 0; j < n_nodes; ++j) {
    t.nodes[j] = -truncation + h * j;
    t.values[j] = time_value(spec, rule, t.nodes[j]);
  }
  t.eps_quad = quadrature_error(spec, t);
  if (t.eps_quad > tolerance)
    throw Error(ErrorKind::resolution, "quadrature error " + std::to_string(t.eps_quad) + " above tolerance " +
                                           std::to_string(tolerance) + "; increase T or the node count");
  return t;
}

FilterTable time_domain_samples(const FilterSpec& spec) {
  double T = default_truncation(spec);
  return time_domain_samples(spec, default_node_count(spec, T), T);
}

void write_filter_csv(const FilterTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::config, "cannot write " + path);
  out.imbue(std::locale::classic());
  out.precision(17);
  out << "s,p,re_f,im_f\n";
  for (std::size_t j = 0; j < table.nodes.size(); ++j)
    out << table.nodes[j] << ',' << table.weights[j] << ',' << table.values[j].real() << ','
        << table.values[j].imag() << '\n';
}

}  // namespace gsprep

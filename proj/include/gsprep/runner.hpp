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

#ifndef GSPREP_RUNNER_HPP
#define GSPREP_RUNNER_HPP

#include <atomic>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "gsprep/config.hpp"
#include "gsprep/dense.hpp"
#include "gsprep/fit.hpp"
#include "gsprep/quasifree.hpp"

namespace gsprep {

// GSPREP_WORKERS, else the hardware thread count.
int worker_count();

// Results land at their own index, so the merge order never depends on scheduling.
// The first failure by index is rethrown.
template <typename R>
std::vector<R> parallel_map(std::size_t count, const std::function<R(std::size_t)>& f, int workers = 0) {
  if (workers <= 0) workers = worker_count();
  std::vector<std::optional<R>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i].emplace(f(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(workers), count);
  if (nthreads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

SpinHamiltonian build_model(const ModelConfig& m, int n, std::uint64_t seed = 0);
std::vector<PauliString> build_couplings(const ExperimentConfig& c, int n);
double default_delta(const std::string& model);
FilterSpec filter_for(const ExperimentConfig& c, const SpinHamiltonian& h);
// Bulk SOP endpoints: a = n/5, b = n - 1 - n/5, shortened so b - a is even.
std::pair<int, int> sop_endpoints(const ExperimentConfig& c, int n);

struct QuasiFreeRun {
  int n = 0;
  std::vector<double> t, energy, sop, proxy;
  double e0 = 0.0;  // steady-state energy
  double ground_energy = 0.0;
  double gap = 0.0;
  double t_end = 0.0;
  std::optional<DecayFit> fit;
  std::string fit_error;
};

// Energy, SOP (cluster) and particle-number proxy along one covariance trajectory.
// horizon > 0 sets t_end = horizon / gap with `steps` propagator steps.
QuasiFreeRun quasifree_run(const ExperimentConfig& c, int n, double horizon = 0.0, int steps = 2000);

struct GapRecord {
  int n = 0;
  double gap = 0.0;       // rapidity (or effective) gap
  double nh_gap = 0.0;
  double kappa_v = 0.0;
  double bound = 0.0;     // mixing bound at eta; NaN when declined
};

GapRecord quasifree_gap(const ExperimentConfig& c, int n);

struct ScanFit {
  LineFit fit;
  double ci95 = 0.0;  // half-width on the slope
  bool ok = false;
  std::string note;
};

// log-log slope with a Student-t interval; needs four points.
ScanFit scan_fit(const std::vector<double>& xs, const std::vector<double>& ys);
ScanFit scan_fit_semilog(const std::vector<double>& xs, const std::vector<double>& ys);

struct DenseRun {
  int n = 0;
  std::string label;
  DenseTrajectory trajectory;
  MixingReport report;
  double gap = 0.0;
  double lambda0 = 0.0;
  double hnorm = 0.0;
};

DenseLindbladSystem dense_system_for(const ExperimentConfig& c, int n);
std::vector<DenseRun> dense_runs(const ExperimentConfig& c, int n);

// Subcommand drivers; write artifacts under c.output and return the run summary.
json run_quasifree(const ExperimentConfig& c);
json run_dense(const ExperimentConfig& c);
json run_gap_scan(const ExperimentConfig& c);
json run_sop(const ExperimentConfig& c);
json run_oscillator_check(const ExperimentConfig& c);
json run_asp_compare(const ExperimentConfig& c);

}  // namespace gsprep

#endif  // GSPREP_RUNNER_HPP

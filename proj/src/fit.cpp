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

#include "gsprep/fit.hpp"

#include <algorithm>
#include <cmath>

#include "gsprep/types.hpp"

namespace gsprep {

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) throw Error(ErrorKind::domain, "line fit needs two or more paired points");
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorKind::domain, "line fit with constant abscissa");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double sse = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = y[i] - (f.intercept + f.slope * x[i]);
    sse += r * r;
  }
  f.r2 = syy > 0 ? 1.0 - sse / syy : 1.0;
  f.slope_stderr = n > 2 ? std::sqrt(sse / (n - 2) / sxx) : 0.0;
  return f;
}

LineFit fit_scaling(const std::vector<double>& xs, const std::vector<double>& ys) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) throw Error(ErrorKind::domain, "log-log fit needs positive data");
    lx.push_back(std::log(xs[i]));
    ly.push_back(std::log(ys[i]));
  }
  return fit_line(lx, ly);
}

LineFit fit_semilog_x(const std::vector<double>& xs, const std::vector<double>& ys) {
  std::vector<double> lx;
  for (double x : xs) {
    if (!(x > 0.0)) throw Error(ErrorKind::domain, "semilog fit needs positive abscissae");
    lx.push_back(std::log(x));
  }
  return fit_line(lx, ys);
}

DecayFit fit_decay_rate(const std::vector<double>& times, const std::vector<double>& values, double floor,
                        double noise) {
  const std::size_t n = times.size();
  if (n != values.size()) throw Error(ErrorKind::shape, "times and values differ in length");
  std::vector<double> y(n);
  double scale = std::max(1.0, std::abs(floor));
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = values[i] - floor;
    scale = std::max(scale, std::abs(y[i]));
  }
  if (noise <= 0.0) noise = 1e-11 * scale;

  DecayFit fit;
  long end = static_cast<long>(n) - 1;
  while (end >= 0 && !(y[end] > noise)) --end;
  if (end < 9) throw Error(ErrorKind::domain, "fewer than 10 points above the noise level");
  long start = end;
  while (start > 0 && y[start - 1] > noise && y[start - 1] <= 10.0 * y[end]) --start;
  while (end - start + 1 < 10 && start > 0 && y[start - 1] > noise) --start;
  if (end - start + 1 < 10) throw Error(ErrorKind::domain, "fewer than 10 tail points");

  std::vector<double> t, ly;
  bool monotone = true;
  for (long i = start; i <= end; ++i) {
    t.push_back(times[i]);
    ly.push_back(std::log(y[i]));
    if (i > start && y[i] > y[i - 1]) monotone = false;
  }
  LineFit lf = fit_line(t, ly);
  fit.rate = -lf.slope;
  fit.r2 = lf.r2;
  fit.t_start = times[start];
  fit.t_stop = times[end];
  fit.points = static_cast<int>(end - start + 1);
  if (!monotone) {
    fit.ok = false;
    fit.warning = "nonmonotone tail";
  } else if (lf.r2 < 0.95) {
    fit.ok = false;
    fit.warning = "tail fit R^2 below 0.95";
  }
  return fit;
}

}  // namespace gsprep

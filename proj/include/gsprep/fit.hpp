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

#ifndef GSPREP_FIT_HPP
#define GSPREP_FIT_HPP

#include <string>
#include <vector>

namespace gsprep {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double slope_stderr = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

// Least squares on (ln x, ln y).
LineFit fit_scaling(const std::vector<double>& xs, const std::vector<double>& ys);
// Least squares on (ln x, y).
LineFit fit_semilog_x(const std::vector<double>& xs, const std::vector<double>& ys);

struct DecayFit {
  double rate = 0.0;
  double r2 = 0.0;
  double t_start = 0.0, t_stop = 0.0;
  int points = 0;
  bool ok = true;
  std::string warning;
};

// Slope of ln(value - floor) over the last decade above the noise level.
DecayFit fit_decay_rate(const std::vector<double>& times, const std::vector<double>& values, double floor,
                        double noise = 0.0);

}  // namespace gsprep

#endif  // GSPREP_FIT_HPP

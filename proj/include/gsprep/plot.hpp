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

#ifndef GSPREP_PLOT_HPP
#define GSPREP_PLOT_HPP

#include <string>
#include <vector>

#include "gsprep/io.hpp"

namespace gsprep {

enum class PlotKind { line, loglog, semilogy };
PlotKind parse_plot_kind(const std::string& s);

struct PlotSchema {
  std::string name;
  std::vector<std::string> header;  // exact column list
  std::string x;
  std::vector<std::string> ys;
};

const std::vector<PlotSchema>& known_schemas();
// Throws Error(schema) for empty tables or unknown headers.
const PlotSchema& recognize_schema(const CsvTable& table);

// Semilogy plots y - y_final when a series is not positive, so energy traces show their decay.
// Loglog plots carry the fitted slope of each series.
std::string render_svg(const CsvTable& table, PlotKind kind, const std::string& title = "");
void plot_csv(const std::string& csv_path, PlotKind kind, const std::string& svg_path);

}  // namespace gsprep

#endif  // GSPREP_PLOT_HPP

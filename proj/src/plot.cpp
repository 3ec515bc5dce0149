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

#include "gsprep/plot.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gsprep/fit.hpp"

namespace gsprep {

PlotKind parse_plot_kind(const std::string& s) {
  if (s == "line") return PlotKind::line;
  if (s == "loglog") return PlotKind::loglog;
  if (s == "semilogy") return PlotKind::semilogy;
  throw Error(ErrorKind::config, "plot kind must be line, loglog or semilogy, got '" + s + "'");
}

const std::vector<PlotSchema>& known_schemas() {
  static const std::vector<PlotSchema> schemas = {
      {"quasifree_trajectory", {"t", "energy", "sop", "tracedist_proxy"}, "t", {"energy", "sop", "tracedist_proxy"}},
      {"quasifree_scan", {"N", "gap", "fit_rate", "e0", "t_end"}, "N", {"gap", "fit_rate"}},
      {"gap_scan", {"N", "gap", "kappa_v", "nh_gap", "mixing_bound"}, "N", {"gap", "nh_gap"}},
      {"dense_gap_scan", {"N", "gap", "kernel_dim"}, "N", {"gap"}},
      {"dense_trajectory", {"t", "energy", "fidelity", "trace_distance", "purity"}, "t",
       {"energy", "fidelity", "trace_distance", "purity"}},
      {"dense_scan", {"N", "gap", "tau_fidelity", "tau_energy", "tau_trace"}, "N",
       {"tau_fidelity", "tau_energy", "tau_trace"}},
      {"sop_trajectory", {"t", "energy", "sop"}, "t", {"energy", "sop"}},
      {"sop_sweep", {"h1", "sop_ground", "sop_final"}, "h1", {"sop_ground", "sop_final"}},
      {"oscillator", {"t", "norm"}, "t", {"norm"}},
      {"asp", {"t", "s", "overlap", "m1", "m2"}, "t", {"overlap", "m1", "m2"}},
      {"gap_path", {"s", "gap", "manifold_dim"}, "s", {"gap"}},
      {"dsp", {"t", "overlap", "m1", "m2", "energy"}, "t", {"overlap", "m1", "m2"}},
      {"filter_table", {"s", "p", "re_f", "im_f"}, "s", {"re_f", "im_f"}},
  };
  return schemas;
}

const PlotSchema& recognize_schema(const CsvTable& table) {
  if (table.header.empty() || table.rows.empty()) throw Error(ErrorKind::schema, "empty CSV, nothing to plot");
  for (const auto& s : known_schemas())
    if (s.header == table.header) return s;
  std::string cols;
  for (const auto& h : table.header) cols += (cols.empty() ? "" : ",") + h;
  throw Error(ErrorKind::schema, "unrecognized CSV columns: " + cols);
}

namespace {

constexpr double kW = 640, kH = 420, kLeft = 70, kRight = 150, kTop = 40, kBottom = 50;
const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

struct Series {
  std::string label;
  std::vector<double> x, y;
};

std::string num(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os.precision(4);
  os << v;
  return os.str();
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

struct Axis {
  bool log = false;
  double lo = 0, hi = 1;
  double pixel_lo = 0, pixel_hi = 1;

  double map(double v) const {
    double a = log ? std::log10(v) : v;
    return pixel_lo + (a - lo) / (hi - lo) * (pixel_hi - pixel_lo);
  }

  std::vector<double> ticks() const {
    std::vector<double> out;
    if (log) {
      for (double e = std::ceil(lo); e <= hi + 1e-9; e += 1.0) out.push_back(std::pow(10.0, e));
      if (out.size() < 2) {
        out = {std::pow(10.0, lo), std::pow(10.0, hi)};
      }
      return out;
    }
    double span = hi - lo;
    double raw = span / 5.0;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0})
      if (m * mag >= raw) {
        step = m * mag;
        break;
      }
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * step; v += step) out.push_back(std::abs(v) < 1e-12 * step ? 0.0 : v);
    return out;
  }
};

Axis make_axis(const std::vector<Series>& ss, bool use_x, bool log, double p0, double p1) {
  double lo = INFINITY, hi = -INFINITY;
  for (const auto& s : ss)
    for (double v : use_x ? s.x : s.y) {
      double a = log ? std::log10(v) : v;
      lo = std::min(lo, a);
      hi = std::max(hi, a);
    }
  if (!std::isfinite(lo)) lo = 0, hi = 1;
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  } else if (!log) {
    double pad = 0.04 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
  return Axis{log, lo, hi, p0, p1};
}

}  // namespace

std::string render_svg(const CsvTable& table, PlotKind kind, const std::string& title) {
  const PlotSchema& schema = recognize_schema(table);
  const bool logx = kind == PlotKind::loglog;
  const bool logy = kind != PlotKind::line;
  std::vector<double> xs = table.values(schema.x);

  std::vector<Series> series;
  for (const auto& name : schema.ys) {
    std::vector<double> ys = table.values(name);
    Series s{name, {}, {}};
    double shift = 0.0;
    if (kind == PlotKind::semilogy) {
      bool positive = std::all_of(ys.begin(), ys.end(), [](double v) { return std::isnan(v) || v > 0; });
      if (!positive) {
        shift = ys.back();
        s.label = name + " - final";
      }
    }
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double x = xs[i], y = ys[i] - shift;
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if ((logx && x <= 0) || (logy && y <= 0)) continue;
      s.x.push_back(x);
      s.y.push_back(y);
    }
    if (!s.x.empty()) series.push_back(std::move(s));
  }
  if (series.empty()) throw Error(ErrorKind::schema, "no plottable points for a " + schema.name + " table");

  Axis ax = make_axis(series, true, logx, kLeft, kW - kRight);
  Axis ay = make_axis(series, false, logy, kH - kBottom, kTop);

  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
     << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kW / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"13\">"
     << escape(title.empty() ? schema.name : title) << "</text>\n";
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kW - kLeft - kRight << "\" height=\""
     << kH - kTop - kBottom << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : ax.ticks()) {
    double px = ax.map(t);
    os << "<line x1=\"" << px << "\" y1=\"" << kH - kBottom << "\" x2=\"" << px << "\" y2=\"" << kH - kBottom + 5
       << "\" stroke=\"black\"/>\n<text x=\"" << px << "\" y=\"" << kH - kBottom + 18
       << "\" text-anchor=\"middle\">" << num(t) << "</text>\n";
  }
  for (double t : ay.ticks()) {
    double py = ay.map(t);
    os << "<line x1=\"" << kLeft - 5 << "\" y1=\"" << py << "\" x2=\"" << kLeft << "\" y2=\"" << py
       << "\" stroke=\"black\"/>\n<text x=\"" << kLeft - 8 << "\" y=\"" << py + 4 << "\" text-anchor=\"end\">"
       << num(t) << "</text>\n";
  }
  os << "<text x=\"" << (kLeft + kW - kRight) / 2 << "\" y=\"" << kH - 12 << "\" text-anchor=\"middle\">"
     << escape(schema.x) << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kColors[k % 5];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i) os << (i ? " " : "") << ax.map(s.x[i]) << ',' << ay.map(s.y[i]);
    os << "\"/>\n";
    if (s.x.size() <= 30)
      for (std::size_t i = 0; i < s.x.size(); ++i)
        os << "<circle cx=\"" << ax.map(s.x[i]) << "\" cy=\"" << ay.map(s.y[i]) << "\" r=\"2.5\" fill=\"" << color
           << "\"/>\n";
    std::string label = s.label;
    if (kind == PlotKind::loglog && s.x.size() >= 2) {
      try {
        label += " (slope " + num(fit_scaling(s.x, s.y).slope) + ")";
      } catch (const Error&) {
      }
    }
    double ly = kTop + 14 + 16 * static_cast<double>(k);
    os << "<line x1=\"" << kW - kRight + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kW - kRight + 28 << "\" y2=\""
       << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << kW - kRight + 32 << "\" y=\"" << ly << "\">" << escape(label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void plot_csv(const std::string& csv_path, PlotKind kind, const std::string& svg_path) {
  CsvTable t = read_csv(csv_path);
  std::string svg = render_svg(t, kind, std::filesystem::path(csv_path).filename().string());
  std::ofstream out(svg_path, std::ios::binary);
  if (!out) throw Error(ErrorKind::config, "cannot write " + svg_path);
  out << svg;
}

}  // namespace gsprep

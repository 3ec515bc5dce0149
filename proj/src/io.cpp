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

#include "gsprep/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace gsprep {

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

std::vector<double> CsvTable::values(const std::string& name) const {
  int c = column(name);
  if (c < 0) throw Error(ErrorKind::schema, "CSV has no column '" + name + "'");
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void write_csv(const std::string& path, const CsvTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::config, "cannot write " + path);
  for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const auto& r : table.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << format_number(r[i]);
    out << '\n';
  }
}

namespace {

double parse_number(const std::string& cell, std::size_t line) {
  std::string s = cell;
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.pop_back();
  std::size_t b = s.find_first_not_of(' ');
  s = b == std::string::npos ? "" : s.substr(b);
  if (s == "nan") return std::nan("");
  if (s == "inf") return INFINITY;
  if (s == "-inf") return -INFINITY;
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw Error(ErrorKind::schema, "non-numeric CSV cell '" + cell + "' on line " + std::to_string(line));
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

CsvTable parse_csv(const std::string& text) {
  CsvTable t;
  std::stringstream ss(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (t.header.empty()) {
      t.header = split(line);
      continue;
    }
    auto cells = split(line);
    if (cells.size() != t.header.size())
      throw Error(ErrorKind::schema, "CSV line " + std::to_string(lineno) + " has " + std::to_string(cells.size()) +
                                         " cells, header has " + std::to_string(t.header.size()));
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(parse_number(c, lineno));
    t.rows.push_back(std::move(row));
  }
  if (t.header.empty()) throw Error(ErrorKind::schema, "empty CSV");
  return t;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::config, "cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CsvTable read_csv(const std::string& path) { return parse_csv(read_text(path)); }

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::config, "cannot write " + path);
  out << j.dump(2) << '\n';
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::config, path + ": " + e.what());
  }
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw Error(ErrorKind::config, "cannot create directory " + path + ": " + ec.message());
}

std::uint64_t config_hash(const json& config) {
  std::string s = config.dump();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[i] = digits[v & 15];
  return s;
}

json provenance(const std::string& command, const json& config) {
  return json{{"tool", "gsprep"},
              {"version", "0.1.0"},
              {"command", command},
              {"config", config},
              {"config_hash", hex64(config_hash(config))}};
}

json to_json(const SpinHamiltonian& h, const json& metadata) {
  json terms = json::array();
  for (const auto& t : h.terms) {
    std::string letters(t.letters.begin(), t.letters.end());
    terms.push_back({{"sites", t.sites}, {"letters", letters}, {"coeff", t.coeff}});
  }
  return json{{"n_sites", h.n_sites}, {"terms", terms}, {"metadata", metadata}};
}

SpinHamiltonian hamiltonian_from_json(const json& j) {
  try {
    SpinHamiltonian h;
    h.n_sites = j.at("n_sites").get<int>();
    if (h.n_sites < 1) throw Error(ErrorKind::schema, "n_sites must be positive");
    for (const auto& t : j.at("terms")) {
      auto sites = t.at("sites").get<std::vector<int>>();
      auto letters = t.at("letters").get<std::string>();
      if (sites.size() != letters.size()) throw Error(ErrorKind::schema, "term sites and letters differ in length");
      std::vector<std::pair<int, char>> ops;
      for (std::size_t i = 0; i < sites.size(); ++i) ops.emplace_back(sites[i], letters[i]);
      h.add(t.at("coeff").get<double>(), ops);
    }
    for (const auto& t : h.terms)
      if (t.max_site() >= h.n_sites) throw Error(ErrorKind::schema, "term " + t.str() + " outside n_sites");
    return h;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::schema, std::string("Hamiltonian JSON: ") + e.what());
  }
}

}  // namespace gsprep

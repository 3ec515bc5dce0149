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

#ifndef GSPREP_IO_HPP
#define GSPREP_IO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "gsprep/hamiltonians.hpp"

namespace gsprep {

using json = nlohmann::json;

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  // Index of a named column, or -1.
  int column(const std::string& name) const;
  std::vector<double> values(const std::string& name) const;
};

// Shortest round-trip decimal, '.' separator, no locale.
std::string format_number(double v);

void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text);

void write_json(const std::string& path, const json& j);
json read_json(const std::string& path);
std::string read_text(const std::string& path);
void ensure_directory(const std::string& path);

// FNV-1a over the canonical dump (object keys sorted).
std::uint64_t config_hash(const json& config);
std::string hex64(std::uint64_t v);
json provenance(const std::string& command, const json& config);

json to_json(const SpinHamiltonian& h, const json& metadata = json::object());
SpinHamiltonian hamiltonian_from_json(const json& j);

}  // namespace gsprep

#endif  // GSPREP_IO_HPP

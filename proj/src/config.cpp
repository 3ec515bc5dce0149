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

#include "gsprep/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <set>

namespace gsprep {

namespace {

class TomlParser {
 public:
  explicit TomlParser(const std::string& text) : s_(text) {}

  json parse() {
    json root = json::object();
    json* table = &root;
    while (true) {
      skip_ws_comments_newlines();
      if (eof()) break;
      if (peek() == '[') {
        ++pos_;
        if (peek() == '[') fail("arrays of tables are not supported");
        auto path = parse_key_path();
        skip_inline_ws();
        expect(']');
        table = &root;
        for (const auto& k : path) {
          json& next = (*table)[k];
          if (next.is_null()) next = json::object();
          if (!next.is_object()) fail("key '" + k + "' is not a table");
          table = &next;
        }
      } else {
        auto path = parse_key_path();
        skip_inline_ws();
        expect('=');
        skip_inline_ws();
        json value = parse_value();
        assign(*table, path, std::move(value));
      }
      skip_inline_ws();
      if (!eof() && peek() == '#') skip_comment();
      if (!eof() && peek() != '\n' && peek() != '\r') fail("expected end of line");
    }
    return root;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
  int line_ = 1;

  bool eof() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::config, "TOML line " + std::to_string(line_) + ": " + what);
  }

  void expect(char c) {
    if (eof() || peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void skip_inline_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) ++pos_;
  }
  void skip_comment() {
    while (!eof() && peek() != '\n') ++pos_;
  }
  void skip_ws_comments_newlines() {
    while (!eof()) {
      char c = peek();
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\r') {
        ++pos_;
      } else if (c == '#') {
        skip_comment();
      } else {
        break;
      }
    }
  }

  std::vector<std::string> parse_key_path() {
    std::vector<std::string> path;
    while (true) {
      skip_inline_ws();
      if (eof()) fail("expected a key");
      if (peek() == '"') {
        path.push_back(parse_basic_string());
      } else {
        std::size_t b = pos_;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-')) ++pos_;
        if (b == pos_) fail("expected a key");
        path.push_back(s_.substr(b, pos_ - b));
      }
      skip_inline_ws();
      if (!eof() && peek() == '.') {
        ++pos_;
        continue;
      }
      return path;
    }
  }

  void assign(json& table, const std::vector<std::string>& path, json value) {
    json* t = &table;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      json& next = (*t)[path[i]];
      if (next.is_null()) next = json::object();
      if (!next.is_object()) fail("key '" + path[i] + "' is not a table");
      t = &next;
    }
    if (t->contains(path.back())) fail("duplicate key '" + path.back() + "'");
    (*t)[path.back()] = std::move(value);
  }

  std::string parse_basic_string() {
    expect('"');
    std::string out;
    while (true) {
      if (eof() || peek() == '\n') fail("unterminated string");
      char c = s_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (eof()) fail("unterminated escape");
        char e = s_[pos_++];
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case 'r': out += '\r'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: fail(std::string("unsupported escape \\") + e);
        }
      } else {
        out += c;
      }
    }
    return out;
  }

  std::string parse_literal_string() {
    expect('\'');
    std::size_t b = pos_;
    while (!eof() && peek() != '\'' && peek() != '\n') ++pos_;
    if (eof() || peek() != '\'') fail("unterminated string");
    std::string out = s_.substr(b, pos_ - b);
    ++pos_;
    return out;
  }

  json parse_value() {
    if (eof()) fail("missing value");
    char c = peek();
    if (c == '"') return parse_basic_string();
    if (c == '\'') return parse_literal_string();
    if (c == '[') return parse_array();
    if (c == '{') return parse_inline_table();
    if (s_.compare(pos_, 4, "true") == 0) {
      pos_ += 4;
      return true;
    }
    if (s_.compare(pos_, 5, "false") == 0) {
      pos_ += 5;
      return false;
    }
    return parse_number();
  }

  json parse_array() {
    expect('[');
    json arr = json::array();
    while (true) {
      skip_ws_comments_newlines();
      if (eof()) fail("unterminated array");
      if (peek() == ']') {
        ++pos_;
        return arr;
      }
      arr.push_back(parse_value());
      skip_ws_comments_newlines();
      if (!eof() && peek() == ',') {
        ++pos_;
        continue;
      }
      skip_ws_comments_newlines();
      expect(']');
      return arr;
    }
  }

  json parse_inline_table() {
    expect('{');
    json t = json::object();
    skip_inline_ws();
    if (!eof() && peek() == '}') {
      ++pos_;
      return t;
    }
    while (true) {
      auto path = parse_key_path();
      skip_inline_ws();
      expect('=');
      skip_inline_ws();
      assign(t, path, parse_value());
      skip_inline_ws();
      if (!eof() && peek() == ',') {
        ++pos_;
        continue;
      }
      expect('}');
      return t;
    }
  }

  json parse_number() {
    std::size_t b = pos_;
    while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '+' || peek() == '-' ||
                      peek() == '.' || peek() == '_'))
      ++pos_;
    std::string tok;
    for (char c : s_.substr(b, pos_ - b))
      if (c != '_') tok += c;
    if (tok.empty()) fail("expected a value");
    std::string body = (tok[0] == '+' || tok[0] == '-') ? tok.substr(1) : tok;
    double sign = tok[0] == '-' ? -1.0 : 1.0;
    if (body == "inf") return sign * INFINITY;
    if (body == "nan") return std::nan("");
    bool is_float = body.find_first_of(".eE") != std::string::npos;
    const char* first = tok.data() + (tok[0] == '+' ? 1 : 0);
    const char* last = tok.data() + tok.size();
    if (!is_float) {
      long long v = 0;
      auto res = std::from_chars(first, last, v);
      if (res.ec == std::errc() && res.ptr == last) return v;
    } else {
      double v = 0.0;
      auto res = std::from_chars(first, last, v);
      if (res.ec == std::errc() && res.ptr == last) return v;
    }
    fail("invalid value '" + tok + "'");
  }
};

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::config, "field '" + field + "': " + what);
}

template <typename T>
void read(const json& obj, const std::string& key, T& out, const std::string& prefix, std::set<std::string>& seen) {
  seen.insert(key);
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  try {
    if constexpr (std::is_same_v<T, double>) {
      if (!v.is_number()) bad(prefix + key, "expected a number");
    } else if constexpr (std::is_same_v<T, int> || std::is_same_v<T, std::uint64_t>) {
      if (!v.is_number_integer()) bad(prefix + key, "expected an integer");
      if constexpr (std::is_same_v<T, std::uint64_t>)
        if (v.get<long long>() < 0) bad(prefix + key, "expected a nonnegative integer");
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) bad(prefix + key, "expected true or false");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) bad(prefix + key, "expected a string");
    }
    out = v.get<T>();
  } catch (const json::exception&) {
    bad(prefix + key, "wrong type");
  }
}

void reject_unknown(const json& obj, const std::set<std::string>& seen, const std::string& prefix) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!seen.count(it.key())) bad(prefix + it.key(), "unknown field");
}

const json& section(const json& j, const std::string& key) {
  static const json empty = json::object();
  if (!j.contains(key)) return empty;
  if (!j.at(key).is_object()) bad(key, "expected a table");
  return j.at(key);
}

}  // namespace

json parse_toml(const std::string& text) { return TomlParser(text).parse(); }

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::config, "config root must be a table");
  ExperimentConfig c;
  std::set<std::string> seen{"model", "filter", "adiabatic"};
  read(j, "engine", c.engine, "", seen);
  read(j, "initial", c.initial, "", seen);
  read(j, "t_end", c.t_end, "", seen);
  read(j, "dt", c.dt, "", seen);
  read(j, "stride", c.stride, "", seen);
  read(j, "horizon", c.horizon, "", seen);
  read(j, "steps", c.steps, "", seen);
  read(j, "method", c.method, "", seen);
  read(j, "coherent", c.coherent, "", seen);
  read(j, "n", c.n, "", seen);
  read(j, "eta", c.eta, "", seen);
  read(j, "cluster_tol", c.cluster_tol, "", seen);
  read(j, "sop_a", c.sop_a, "", seen);
  read(j, "sop_b", c.sop_b, "", seen);
  read(j, "observable", c.observable, "", seen);
  read(j, "ground_tol", c.ground_tol, "", seen);
  read(j, "seed", c.seed, "", seen);
  read(j, "output", c.output, "", seen);
  seen.insert({"couplings", "scan", "sweep", "initial_states"});
  if (j.contains("couplings")) {
    const json& v = j.at("couplings");
    if (v.is_string()) {
      c.couplings = v.get<std::string>();
    } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& e) { return e.is_string(); })) {
      c.couplings = "custom";
      c.coupling_list = v.get<std::vector<std::string>>();
    } else {
      bad("couplings", "expected a preset name or a list of Pauli strings");
    }
  }
  auto read_list = [&](const std::string& key, auto& out) {
    if (!j.contains(key)) return;
    try {
      out = j.at(key).get<std::decay_t<decltype(out)>>();
    } catch (const json::exception&) {
      bad(key, "wrong element type");
    }
  };
  read_list("scan", c.scan);
  read_list("sweep", c.sweep);
  read_list("initial_states", c.initial_states);
  reject_unknown(j, seen, "");

  const json& m = section(j, "model");
  std::set<std::string> ms;
  read(m, "name", c.model.name, "model.", ms);
  read(m, "j", c.model.j, "model.", ms);
  read(m, "g", c.model.g, "model.", ms);
  read(m, "h1", c.model.h1, "model.", ms);
  read(m, "j1", c.model.j1, "model.", ms);
  read(m, "j2", c.model.j2, "model.", ms);
  read(m, "gamma", c.model.gamma, "model.", ms);
  read(m, "xi", c.model.xi, "model.", ms);
  read(m, "mean", c.model.mean, "model.", ms);
  read(m, "variance", c.model.variance, "model.", ms);
  read(m, "boundary", c.model.boundary, "model.", ms);
  reject_unknown(m, ms, "model.");

  const json& f = section(j, "filter");
  std::set<std::string> fs;
  read(f, "delta", c.filter.delta, "filter.", fs);
  read(f, "omega_max", c.filter.omega_max, "filter.", fs);
  read(f, "quadrature", c.filter.quadrature, "filter.", fs);
  reject_unknown(f, fs, "filter.");

  const json& a = section(j, "adiabatic");
  std::set<std::string> as;
  read(a, "total_time", c.adiabatic.total_time, "adiabatic.", as);
  read(a, "dt", c.adiabatic.dt, "adiabatic.", as);
  read(a, "h0", c.adiabatic.h0, "adiabatic.", as);
  read(a, "dsp_time", c.adiabatic.dsp_time, "adiabatic.", as);
  read(a, "dsp_dt", c.adiabatic.dsp_dt, "adiabatic.", as);
  read(a, "stride", c.adiabatic.stride, "adiabatic.", as);
  reject_unknown(a, as, "adiabatic.");

  validate(c);
  return c;
}

json to_json(const ExperimentConfig& c) {
  json j;
  j["engine"] = c.engine;
  if (c.couplings == "custom")
    j["couplings"] = c.coupling_list;
  else
    j["couplings"] = c.couplings;
  j["initial"] = c.initial;
  j["initial_states"] = c.initial_states;
  j["t_end"] = c.t_end;
  j["dt"] = c.dt;
  j["stride"] = c.stride;
  j["horizon"] = c.horizon;
  j["steps"] = c.steps;
  j["method"] = c.method;
  j["coherent"] = c.coherent;
  j["scan"] = c.scan;
  j["n"] = c.n;
  j["eta"] = c.eta;
  j["cluster_tol"] = c.cluster_tol;
  j["sop_a"] = c.sop_a;
  j["sop_b"] = c.sop_b;
  j["sweep"] = c.sweep;
  j["observable"] = c.observable;
  j["ground_tol"] = c.ground_tol;
  j["seed"] = c.seed;
  j["output"] = c.output;
  j["model"] = {{"name", c.model.name}, {"j", c.model.j},           {"g", c.model.g},
                {"h1", c.model.h1},     {"j1", c.model.j1},         {"j2", c.model.j2},
                {"gamma", c.model.gamma}, {"xi", c.model.xi},       {"mean", c.model.mean},
                {"variance", c.model.variance}, {"boundary", c.model.boundary}};
  j["filter"] = {{"delta", c.filter.delta}, {"omega_max", c.filter.omega_max}, {"quadrature", c.filter.quadrature}};
  j["adiabatic"] = {{"total_time", c.adiabatic.total_time}, {"dt", c.adiabatic.dt},
                    {"h0", c.adiabatic.h0},                 {"dsp_time", c.adiabatic.dsp_time},
                    {"dsp_dt", c.adiabatic.dsp_dt},         {"stride", c.adiabatic.stride}};
  return j;
}

namespace {

int min_sites(const std::string& model) {
  if (model == "cluster" || model == "annni") return 3;
  if (model == "zfield") return 1;
  return 2;
}

}  // namespace

void validate(const ExperimentConfig& c) {
  static const std::set<std::string> engines{"quasifree", "dense", "adiabatic"};
  static const std::set<std::string> models{"tfim", "cluster", "random_tfim", "annni", "heisenberg", "zfield"};
  if (!engines.count(c.engine)) bad("engine", "expected quasifree, dense or adiabatic");
  if (!models.count(c.model.name)) bad("model.name", "unknown model '" + c.model.name + "'");
  if (c.model.boundary != "open" && c.model.boundary != "periodic") bad("model.boundary", "expected open or periodic");
  if (c.model.variance < 0) bad("model.variance", "must be nonnegative");
  if (c.couplings == "custom") {
    if (c.coupling_list.empty()) bad("couplings", "empty coupling list");
    for (const auto& s : c.coupling_list) {
      try {
        PauliString::parse(s);
      } catch (const Error& e) {
        bad("couplings", e.what());
      }
    }
  } else {
    static const std::set<std::string> presets{"boundary", "cluster_boundary", "bulk", "theorem2", "annni"};
    if (!presets.count(c.couplings)) bad("couplings", "unknown preset '" + c.couplings + "'");
    if (c.engine == "quasifree" && c.couplings != "boundary" && c.couplings != "cluster_boundary")
      bad("couplings", "preset '" + c.couplings + "' is not linear in Majoranas; quasifree takes boundary or cluster_boundary");
  }
  if (!(c.dt > 0)) bad("dt", "must be positive");
  if (!(c.t_end >= 0)) bad("t_end", "must be nonnegative");
  if (c.stride < 1) bad("stride", "must be at least 1");
  if (c.horizon < 0) bad("horizon", "must be nonnegative");
  if (c.steps < 1) bad("steps", "must be at least 1");
  if (!(c.eta > 0 && c.eta < 1)) bad("eta", "must lie in (0, 1)");
  if (c.cluster_tol < 0) bad("cluster_tol", "must be nonnegative");
  if (!(c.ground_tol > 0)) bad("ground_tol", "must be positive");
  if (c.filter.delta < 0) bad("filter.delta", "must be nonnegative");
  if (c.filter.omega_max < 0) bad("filter.omega_max", "must be nonnegative");
  if (c.filter.delta > 0 && c.filter.omega_max > 0 && c.filter.delta >= c.filter.omega_max / 2)
    bad("filter.delta", "must be below omega_max / 2");
  if (c.engine == "quasifree" && !c.method.empty() && c.method != "rk4" && c.method != "propagator")
    bad("method", "quasifree engine takes rk4 or propagator");
  if (c.engine == "dense" && !c.method.empty() && c.method != "rk4" && c.method != "interaction_rk4")
    bad("method", "dense engine takes rk4 or interaction_rk4");
  int cap = c.engine == "quasifree" ? 1000 : kDenseCap;
  for (int n : c.sizes()) {
    if (n < min_sites(c.model.name))
      bad(c.scan.empty() ? "n" : "scan", "size " + std::to_string(n) + " too small for " + c.model.name);
    if (n > cap)
      bad(c.scan.empty() ? "n" : "scan", "size " + std::to_string(n) + " exceeds the " + c.engine + " cap of " +
                                             std::to_string(cap));
  }
  if (c.adiabatic.total_time <= 0) bad("adiabatic.total_time", "must be positive");
  if (c.adiabatic.dt <= 0) bad("adiabatic.dt", "must be positive");
  if (c.adiabatic.dsp_time < 0) bad("adiabatic.dsp_time", "must be nonnegative");
  if (c.adiabatic.dsp_dt <= 0) bad("adiabatic.dsp_dt", "must be positive");
  if (c.adiabatic.stride < 1) bad("adiabatic.stride", "must be at least 1");
  static const std::set<std::string> starts{"maximally_mixed", "all_up", "all_down", "ground"};
  auto check_start = [&](const std::string& field, const std::string& s) {
    if (!starts.count(s) && s.rfind("random_pure", 0) != 0) bad(field, "unknown initial state '" + s + "'");
  };
  check_start("initial", c.initial);
  for (const auto& s : c.initial_states) check_start("initial_states", s);
}

ExperimentConfig parse_config_text(const std::string& text, bool is_json) {
  json j;
  if (is_json) {
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw Error(ErrorKind::config, std::string("JSON config: ") + e.what());
    }
  } else {
    j = parse_toml(text);
  }
  return config_from_json(j);
}

ExperimentConfig load_config(const std::string& path) {
  bool is_json = path.size() >= 5 && path.substr(path.size() - 5) == ".json";
  return parse_config_text(read_text(path), is_json);
}

}  // namespace gsprep

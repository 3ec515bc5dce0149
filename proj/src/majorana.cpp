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

#include "gsprep/majorana.hpp"

#include <algorithm>

namespace gsprep {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_size: return "invalid-size";
    case ErrorKind::invalid_argument: return "invalid-argument";
    case ErrorKind::not_quasi_free: return "not-quasi-free";
    case ErrorKind::gapless: return "gapless";
    case ErrorKind::infeasible_passband: return "infeasible-passband";
    case ErrorKind::resolution: return "resolution";
    case ErrorKind::malformed: return "malformed-hamiltonian";
    case ErrorKind::shape: return "shape";
    case ErrorKind::degenerate_vacuum: return "degenerate-vacuum";
    case ErrorKind::non_unique_steady_state: return "non-unique-steady-state";
    case ErrorKind::invalid_span: return "invalid-span";
    case ErrorKind::inconsistent_state: return "inconsistent-state";
    case ErrorKind::no_bound: return "no-bound";
    case ErrorKind::step_size: return "step-size";
    case ErrorKind::integrator: return "integrator";
    case ErrorKind::domain: return "domain";
    case ErrorKind::schema: return "schema";
    case ErrorKind::config: return "config";
  }
  return "error";
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r{a.phase * b.phase, a.idx};
  for (int x : b.idx) {
    // move g_x left past every larger generator, then cancel or insert
    auto pos = std::lower_bound(r.idx.begin(), r.idx.end(), x);
    auto larger = r.idx.end() - pos;
    if (pos != r.idx.end() && *pos == x) {
      --larger;
      if (larger % 2) r.phase = -r.phase;
      r.idx.erase(pos);
    } else {
      if (larger % 2) r.phase = -r.phase;
      r.idx.insert(pos, x);
    }
  }
  return r;
}

namespace {

Monomial z_local(int site, int n) { return Monomial{-I1, {site, site + n}}; }

Monomial string_below(int site, int n) {
  Monomial m;
  for (int k = 0; k < site; ++k) m = m * z_local(k, n);
  return m;
}

}  // namespace

Monomial jw_x(int site, int n) { return string_below(site, n) * Monomial{1.0, {site}}; }
Monomial jw_y(int site, int n) { return string_below(site, n) * Monomial{1.0, {site + n}}; }
Monomial jw_z(int site, int n) { return z_local(site, n); }

Monomial jw_letter(char letter, int site, int n) {
  switch (letter) {
    case 'X': return jw_x(site, n);
    case 'Y': return jw_y(site, n);
    case 'Z': return jw_z(site, n);
    case 'I': return Monomial{};
  }
  throw Error(ErrorKind::invalid_argument, std::string("unknown Pauli letter '") + letter + "'");
}

Monomial jw_parity(int n) {
  Monomial m;
  for (int k = 0; k < n; ++k) m = m * z_local(k, n);
  return m;
}

}  // namespace gsprep

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

#ifndef GSPREP_MAJORANA_HPP
#define GSPREP_MAJORANA_HPP

#include <vector>

#include "gsprep/types.hpp"

namespace gsprep {

// phase * g_{idx[0]} g_{idx[1]} ... with strictly increasing idx and
// Clifford generators g_p = sqrt(2) w_p (g_p^2 = 1).
struct Monomial {
  cplx phase{1.0, 0.0};
  std::vector<int> idx;

  int degree() const { return static_cast<int>(idx.size()); }
};

Monomial operator*(const Monomial& a, const Monomial& b);

// Jordan-Wigner images on n sites; site j carries g_j (X-type) and g_{j+n}.
Monomial jw_x(int site, int n);
Monomial jw_y(int site, int n);
Monomial jw_z(int site, int n);
Monomial jw_letter(char letter, int site, int n);

// prod_k Z_k as a monomial in all 2n generators.
Monomial jw_parity(int n);

}  // namespace gsprep

#endif  // GSPREP_MAJORANA_HPP

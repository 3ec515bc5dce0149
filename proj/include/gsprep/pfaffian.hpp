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

#ifndef GSPREP_PFAFFIAN_HPP
#define GSPREP_PFAFFIAN_HPP

#include <cmath>

#include "gsprep/types.hpp"

namespace gsprep {

// Parlett-Reid skew tridiagonalization with partial pivoting.
template <typename Derived>
typename Derived::Scalar pfaffian(const Eigen::MatrixBase<Derived>& m_in, double tol = 1e-10) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = m_in.rows();
  if (m_in.cols() != n) throw Error(ErrorKind::shape, "Pfaffian of a non-square matrix");
  if (n % 2) throw Error(ErrorKind::invalid_argument, "Pfaffian of an odd-dimensional matrix");
  if (n == 0) return Scalar(1);
  double scale = m_in.cwiseAbs().maxCoeff();
  if ((m_in + m_in.transpose()).cwiseAbs().maxCoeff() > tol * std::max(1.0, scale))
    throw Error(ErrorKind::invalid_argument, "Pfaffian input is not antisymmetric");

  Mat<Scalar> a = m_in;
  Scalar result(1);
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    Eigen::Index kp;
    a.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&kp);
    kp += k + 1;
    if (kp != k + 1) {
      a.row(k + 1).swap(a.row(kp));
      a.col(k + 1).swap(a.col(kp));
      result = -result;
    }
    Scalar pivot = a(k, k + 1);
    if (pivot == Scalar(0)) return Scalar(0);
    result *= pivot;
    if (k + 2 < n) {
      Vec<Scalar> tau = a.row(k).tail(n - k - 2).transpose() / pivot;
      // Gauss transform keeps the trailing block antisymmetric
      auto trail = a.bottomRightCorner(n - k - 2, n - k - 2);
      Vec<Scalar> col = a.col(k + 1).tail(n - k - 2);
      trail.noalias() += tau * col.transpose();
      trail.noalias() -= col * tau.transpose();
    }
  }
  return result;
}

}  // namespace gsprep

#endif  // GSPREP_PFAFFIAN_HPP

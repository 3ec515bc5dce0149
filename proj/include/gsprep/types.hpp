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

#ifndef GSPREP_TYPES_HPP
#define GSPREP_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gsprep {

using cplx = std::complex<double>;
using MatrixXc = Eigen::MatrixXcd;
using MatrixXr = Eigen::MatrixXd;
using VectorXc = Eigen::VectorXcd;
using VectorXr = Eigen::VectorXd;

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

inline constexpr cplx I1{0.0, 1.0};

enum class ErrorKind {
  invalid_size,
  invalid_argument,
  not_quasi_free,
  gapless,
  infeasible_passband,
  resolution,
  malformed,
  shape,
  degenerate_vacuum,
  non_unique_steady_state,
  invalid_span,
  inconsistent_state,
  no_bound,
  step_size,
  integrator,
  domain,
  schema,
  config,
};

// Config-class kinds map to CLI exit code 2, the rest to 3.
inline bool is_config_kind(ErrorKind k) {
  switch (k) {
    case ErrorKind::invalid_size:
    case ErrorKind::invalid_argument:
    case ErrorKind::infeasible_passband:
    case ErrorKind::shape:
    case ErrorKind::invalid_span:
    case ErrorKind::domain:
    case ErrorKind::schema:
    case ErrorKind::config:
      return true;
    default:
      return false;
  }
}

const char* to_string(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

template <typename Derived>
typename Derived::PlainObject antisymmetrize(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.transpose()) / typename Derived::Scalar(2);
}

template <typename Derived>
typename Derived::PlainObject hermitize(const Eigen::MatrixBase<Derived>& m) {
  return (m + m.adjoint()) / typename Derived::Scalar(2);
}

template <typename Derived>
double op_norm(const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<typename Derived::PlainObject> svd(m);
  return svd.singularValues()(0);
}

}  // namespace gsprep

#endif  // GSPREP_TYPES_HPP

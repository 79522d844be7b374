// Copyright 2026 The ghzbell Authors
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

#pragma once

// Independent reference routes for the tests: explicit loops, no shared
// code with the library beyond the value types.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <vector>

#include "ghzbell/bell.hpp"

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

/// [[cos a, sin a e^{-i p}], [sin a e^{i p}, -cos a]].
inline Mat observable(double alpha, double phi) {
  Mat m(2, 2);
  m << std::cos(alpha), std::sin(alpha) * std::polar(1.0, -phi), std::sin(alpha) * std::polar(1.0, phi),
      -std::cos(alpha);
  return m;
}

inline Mat observable(const ghzbell::Direction& d) { return observable(d.alpha(), d.phi()); }

inline Mat bloch_observable(const Eigen::Vector3d& n) {
  Mat m(2, 2);
  m << n.z(), cd(n.x(), -n.y()), cd(n.x(), n.y()), -n.z();
  return m;
}

inline Mat product(const std::vector<ghzbell::Direction>& dirs) {
  Mat out = Mat::Identity(1, 1);
  for (const auto& d : dirs) out = kron(out, observable(d));
  return out;
}

inline Mat bell_operator(const ghzbell::BellConfig& cfg) {
  const Mat a0 = product(cfg.a0());
  const Mat a1 = product(cfg.a1());
  const Mat b0 = observable(cfg.b0());
  const Mat b1 = observable(cfg.b1());
  return kron(a0, b0) + kron(a0, b1) + kron(a1, b0) - kron(a1, b1);
}

inline Vec ghz(int n) {
  Vec v = Vec::Zero(Eigen::Index{1} << n);
  v(0) = v(v.size() - 1) = 1.0 / std::sqrt(2.0);
  return v;
}

inline cd expectation(const Vec& psi, const Mat& op) {
  cd acc = 0;
  for (Eigen::Index i = 0; i < op.rows(); ++i)
    for (Eigen::Index j = 0; j < op.cols(); ++j) acc += std::conj(psi(i)) * op(i, j) * psi(j);
  return acc;
}

inline Mat pauli_x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Mat pauli_y() {
  Mat m(2, 2);
  m << 0, cd(0, -1), cd(0, 1), 0;
  return m;
}
inline Mat pauli_z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace oracle

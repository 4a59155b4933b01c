// Copyright 2026 The su4c Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "su4c.hpp"

namespace su4c::testing {

inline std::string data_path(const std::string& name) { return std::string(SU4C_DATA_DIR) + "/" + name; }

inline Mat4 load_matrix(const std::string& name) { return io::decode_mat4(io::read_json(data_path(name))); }

inline CircuitParams load_program(const std::string& name) {
  return io::decode_circuit(io::read_json(data_path(name)));
}

// Oracles built from the matrix exponential, independent of the closed forms in the library.
inline Mat2 expm_r(double theta, double phi) {
  const Mat2 h = std::cos(phi) * pauli::x() + std::sin(phi) * pauli::y();
  return (Complex(0.0, -theta / 2.0) * h).exp();
}

inline Mat2 expm_rz(double phiz) { return (Complex(0.0, -phiz / 2.0) * pauli::z()).exp(); }

inline Mat4 expm_g() {
  const Mat4 zz = kron(pauli::z(), pauli::z());
  return std::exp(Complex(0.0, -kPi / 4.0)) * (Complex(0.0, kPi / 4.0) * zz).exp();
}

inline Mat2 random_su2(SeededRng& rng) {
  return rz_matrix(rng.uniform() * kTwoPi) * r_matrix(rng.uniform() * kTwoPi, rng.uniform() * kTwoPi);
}

inline Mat4 random_local(SeededRng& rng) {
  const Mat2 a = random_su2(rng);
  return kron(a, random_su2(rng));
}

inline Mat4 random_density(SeededRng& rng, int rank) {
  Eigen::Matrix<Complex, 4, Eigen::Dynamic> g(4, rank);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < rank; ++k) g(i, k) = Complex(rng.normal(), rng.normal());
  const Mat4 rho = g * g.adjoint();
  return rho / rho.trace();
}

inline double max_diff(const Mat4& a, const Mat4& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace su4c::testing

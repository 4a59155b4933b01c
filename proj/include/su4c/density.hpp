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

#include "su4c/linalg.hpp"

namespace su4c {

/// Two-qubit state: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
 public:
  /// Validates `m` against the invariants within `tol`, then symmetrizes it.
  static DensityMatrix checked(const Mat4& m, double tol = Tolerances{}.density_invariant) {
    if (!m.allFinite()) throw InvalidDensityMatrixError("density matrix has non-finite entries");
    const double herm = max_abs(m - m.adjoint());
    if (!(herm < tol)) {
      throw InvalidDensityMatrixError("density matrix is not Hermitian (" + std::to_string(herm) + ")");
    }
    const Mat4 h = (m + m.adjoint()) / 2.0;
    const double trace_err = std::abs(h.trace().real() - 1.0);
    if (!(trace_err < tol)) {
      throw InvalidDensityMatrixError("density matrix trace differs from 1 by " +
                                      std::to_string(trace_err));
    }
    Eigen::SelfAdjointEigenSolver<Mat4> solver(h, Eigen::EigenvaluesOnly);
    if (!(solver.eigenvalues().minCoeff() >= -tol)) {
      throw InvalidDensityMatrixError("density matrix has a negative eigenvalue " +
                                      std::to_string(solver.eigenvalues().minCoeff()));
    }
    return DensityMatrix(h);
  }

  /// Nearest valid state by eigenvalue clipping at zero and trace renormalization.
  static DensityMatrix project(const Mat4& m) {
    const Mat4 h = (m + m.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Mat4> solver(h);
    Eigen::Vector4d w = solver.eigenvalues().cwiseMax(0.0);
    const double total = w.sum();
    if (!(total > 0.0)) throw InvalidDensityMatrixError("projection of a non-positive matrix");
    w /= total;
    const Mat4& v = solver.eigenvectors();
    const Mat4 out = v * w.cast<Complex>().asDiagonal() * v.adjoint();
    return DensityMatrix((out + out.adjoint()) / 2.0);
  }

  static DensityMatrix pure(const Vec4& psi) {
    const Vec4 n = psi / psi.norm();
    return DensityMatrix(n * n.adjoint());
  }

  static DensityMatrix maximally_mixed() { return DensityMatrix(Mat4::Identity() / 4.0); }

  const Mat4& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }

 private:
  explicit DensityMatrix(const Mat4& m) : m_(m) {}
  Mat4 m_;
};

}  // namespace su4c

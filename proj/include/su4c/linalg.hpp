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

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/Dense>

#include "su4c/config.hpp"
#include "su4c/errors.hpp"

namespace su4c {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4cd;
using RealMat4 = Eigen::Matrix4d;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

namespace pauli {
inline Mat2 x() { return (Mat2() << 0, 1, 1, 0).finished(); }
inline Mat2 y() { return (Mat2() << 0, -kI, kI, 0).finished(); }
inline Mat2 z() { return (Mat2() << 1, 0, 0, -1).finished(); }
}  // namespace pauli

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.cwiseAbs().maxCoeff();
}

/// ‖M†M − I‖_max.
template <typename Derived>
double unitarity_error(const Eigen::MatrixBase<Derived>& m) {
  using Plain = typename Derived::PlainObject;
  return max_abs(m.adjoint() * m - Plain::Identity(m.rows(), m.cols()));
}

template <typename Derived>
void require_unitary(const Eigen::MatrixBase<Derived>& m, double tol, const char* what) {
  const double err = unitarity_error(m);
  if (!(err < tol)) {
    throw NonUnitaryError(std::string(what) + ": input is not unitary (‖M†M − I‖_max = " +
                          std::to_string(err) + ")");
  }
}

/// Reduces an angle to (−π, π]; values within `branch` of −π map to +π.
inline double wrap_phase(double x, double branch = Tolerances{}.branch) {
  double r = std::remainder(x, kTwoPi);
  if (r <= -kPi + branch) r += kTwoPi;
  return r;
}

/// Reduces an angle to [0, 2π).
inline double normalize_angle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

/// exp[−iθ(cos φ σx + sin φ σy)/2]
inline Mat2 r_matrix(double theta, double phi) {
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  Mat2 m;
  m << c, -kI * s * std::polar(1.0, -phi), -kI * s * std::polar(1.0, phi), c;
  return m;
}

/// exp(−iφz σz/2)
inline Mat2 rz_matrix(double phiz) {
  Mat2 m = Mat2::Zero();
  m(0, 0) = std::polar(1.0, -phiz / 2);
  m(1, 1) = std::polar(1.0, phiz / 2);
  return m;
}

/// Kronecker product in the basis order |↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩; `a` acts on the first qubit.
inline Mat4 kron(const Mat2& a, const Mat2& b) {
  Mat4 out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

template <int N>
struct SuProjection {
  Eigen::Matrix<Complex, N, N> su;
  Complex phase;  // su = u / phase, phase^N = det(u)
};

/// Unitary polar factor of m, the closest unitary in Frobenius norm.
template <int N>
Eigen::Matrix<Complex, N, N> nearest_unitary(const Eigen::Matrix<Complex, N, N>& m) {
  Eigen::JacobiSVD<Eigen::Matrix<Complex, N, N>> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

/// Divides `u` by the principal N-th root of its determinant.
template <int N>
SuProjection<N> special_unitary_projection(const Eigen::Matrix<Complex, N, N>& u,
                                           const Tolerances& tol = {}) {
  require_unitary(u, tol.unitary_input, "special_unitary_projection");
  const Complex det = u.determinant();
  const double arg = wrap_phase(std::arg(det), tol.branch);
  const Complex phase = std::polar(1.0, arg / N);
  return {u / phase, phase};
}

struct EigenSystem {
  std::array<double, 4> phases{};  // (−π, π], ascending
  RealMat4 vectors;                // orthogonal, det +1, columns are eigenvectors
};

namespace detail {

inline bool diagonalizes(const RealMat4& o, const Mat4& w, double tol) {
  const Mat4 oc = o.cast<Complex>();
  Mat4 d = oc.transpose() * w * oc;
  d.diagonal().setZero();
  return max_abs(d) < tol;
}

}  // namespace detail

/// Real orthogonal eigenbasis of a unitary symmetric matrix.
///
/// Re W and Im W are commuting real symmetric matrices, so a generic real
/// combination Re W + t·Im W shares their eigenvectors. Degenerate
/// eigenspaces come out as whatever orthonormal basis the symmetric solver
/// returns, which is deterministic. Columns are sorted by phase with a
/// lexicographic tie-break, each column's first nonzero entry is made
/// positive, and the last column is negated if needed for det = +1.
inline EigenSystem joint_real_diagonalization(const Mat4& w, const Tolerances& tol = {}) {
  if (!(max_abs(w - w.transpose()) < tol.symmetric_input)) {
    throw NotSymmetricError("joint_real_diagonalization: input is not symmetric");
  }
  require_unitary(w, tol.unitary_input, "joint_real_diagonalization");

  const RealMat4 re = (w.real() + w.real().transpose()) / 2;
  const RealMat4 im = (w.imag() + w.imag().transpose()) / 2;

  // Fallback mixing weights in case the first one hits an accidental degeneracy.
  constexpr std::array<double, 4> kMix{0.70710678118654752, 0.31830988618379067,
                                       0.57721566490153286, 1.41421356237309505};
  RealMat4 vectors;
  bool found = false;
  for (double t : kMix) {
    Eigen::SelfAdjointEigenSolver<RealMat4> solver(re + t * im);
    if (solver.info() != Eigen::Success) continue;
    if (detail::diagonalizes(solver.eigenvectors(), w, tol.eigen_offdiag)) {
      vectors = solver.eigenvectors();
      found = true;
      break;
    }
  }
  if (!found) throw Error("joint_real_diagonalization: no real diagonalizer found");

  const Mat4 oc = vectors.cast<Complex>();
  const Mat4 diag = oc.transpose() * w * oc;

  std::array<double, 4> phases{};
  for (int j = 0; j < 4; ++j) {
    phases[j] = wrap_phase(std::arg(diag(j, j)), tol.branch);
    for (int i = 0; i < 4; ++i) {
      if (std::abs(vectors(i, j)) > 1e-12) {
        if (vectors(i, j) < 0) vectors.col(j) *= -1.0;
        break;
      }
    }
  }

  std::array<int, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (std::abs(phases[a] - phases[b]) > tol.degenerate_phase) return phases[a] < phases[b];
    for (int i = 0; i < 4; ++i) {
      if (vectors(i, a) != vectors(i, b)) return vectors(i, a) < vectors(i, b);
    }
    return false;
  });

  EigenSystem out;
  for (int j = 0; j < 4; ++j) {
    out.phases[j] = phases[order[j]];
    out.vectors.col(j) = vectors.col(order[j]);
  }
  if (out.vectors.determinant() < 0) out.vectors.col(3) *= -1.0;
  return out;
}

struct TensorFactors {
  Mat2 a;
  Mat2 b;
  Complex phase;  // phase · kron(a, b) = m
};

/// Splits a 4×4 unitary into SU(2) ⊗ SU(2) times a unit scalar.
///
/// The largest 2×2 block fixes b up to scale; projecting every block onto
/// it gives a. Both are scaled to unit determinant, and the residual phase
/// is chosen in the right half-plane (ties to +i) by flipping b if needed.
inline TensorFactors factor_tensor_product(const Mat4& m, const Tolerances& tol = {}) {
  int bi = 0, bj = 0;
  double best = -1.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double n = m.block<2, 2>(2 * i, 2 * j).squaredNorm();
      if (n > best + 1e-14) {
        best = n;
        bi = i;
        bj = j;
      }
    }
  }
  const Mat2 b_raw = m.block<2, 2>(2 * bi, 2 * bj);
  Mat2 a_raw;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      a_raw(i, j) = (b_raw.conjugate().cwiseProduct(m.block<2, 2>(2 * i, 2 * j))).sum() / best;

  const Complex det_a = a_raw.determinant();
  const Complex det_b = b_raw.determinant();
  if (std::abs(det_a) < 1e-12 || std::abs(det_b) < 1e-12) {
    throw NotAProductError("factor_tensor_product: singular factor");
  }
  TensorFactors out;
  out.a = a_raw / std::sqrt(det_a);
  out.b = b_raw / std::sqrt(det_b);
  Complex phase = (kron(out.a, out.b).adjoint() * m).trace() / 4.0;
  phase /= std::abs(phase);
  if (phase.real() < -1e-12 || (std::abs(phase.real()) <= 1e-12 && phase.imag() < 0)) {
    out.b = -out.b;
    phase = -phase;
  }
  out.phase = phase;

  const double residual = max_abs(out.phase * kron(out.a, out.b) - m);
  if (!(residual < tol.not_a_product)) {
    throw NotAProductError("factor_tensor_product: residual " + std::to_string(residual));
  }
  return out;
}

/// min over unit scalars c of ‖u − c·w‖_max, with c taken from the trace overlap.
template <typename DerivedU, typename DerivedW>
double phase_invariant_distance(const Eigen::MatrixBase<DerivedU>& u,
                                const Eigen::MatrixBase<DerivedW>& w) {
  if (u.rows() != w.rows() || u.cols() != w.cols()) {
    throw Error("phase_invariant_distance: dimension mismatch");
  }
  const Complex overlap = (w.adjoint() * u).trace();
  if (std::abs(overlap) > 1e-12) {
    return max_abs(u - (overlap / std::abs(overlap)) * w);
  }
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 360; ++k) {
    best = std::min(best, max_abs(u - std::polar(1.0, kTwoPi * k / 360.0) * w));
  }
  return best;
}

/// Angles of one single-qubit correction, expanded as sign · Rz(φz) · R(θ, φ).
struct RotationParams {
  double theta = 0.0;
  double phi = 0.0;
  double phiz = 0.0;
  int sign = 1;

  Mat2 matrix() const { return static_cast<double>(sign) * rz_matrix(phiz) * r_matrix(theta, phi); }
  bool operator==(const RotationParams&) const = default;
};

/// Recovers (θ ∈ [0, π], φ, φz ∈ [0, 2π), sign) with sign·Rz(φz)·R(θ,φ) = m.
inline RotationParams su2_params(const Mat2& m, const Tolerances& tol = {}) {
  if (!(std::abs(m.determinant() - 1.0) < tol.special_unitary) ||
      !(unitarity_error(m) < tol.special_unitary)) {
    throw DeterminantError("su2_params: input is not in SU(2)");
  }
  RotationParams p;
  const double c = std::abs(m(0, 0));
  const double s = std::abs(m(1, 0));
  p.theta = 2.0 * std::atan2(s, c);

  if (p.theta > kPi - tol.theta_edge) {
    // m00 ≈ 0: Rz is absorbed into φ.
    p.theta = kPi;
    p.phiz = 0.0;
    p.sign = 1;
    p.phi = normalize_angle(std::arg(m(1, 0) / (-kI)));
    return p;
  }

  p.phiz = normalize_angle(-2.0 * std::arg(m(0, 0)));
  const Complex ref = m(0, 0) * std::polar(1.0, p.phiz / 2);
  p.sign = ref.real() >= 0 ? 1 : -1;
  if (p.theta < tol.theta_edge) {
    p.theta = 0.0;
    p.phi = 0.0;
    return p;
  }
  p.phi = normalize_angle(std::arg(m(1, 0) / (static_cast<double>(p.sign) * -kI)) - p.phiz / 2);
  return p;
}

}  // namespace su4c

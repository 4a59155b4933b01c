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
#include <limits>
#include <string>

#include "su4c/gates.hpp"
#include "su4c/linalg.hpp"

namespace su4c {

/// Sorted eigenphases of u·uᵀ in the magic basis, after removing the global phase.
/// Two unitaries are locally equivalent iff these agree.
inline std::array<double, 4> local_invariants(const Mat4& u, const Tolerances& tol = {}) {
  const Mat4 m = to_magic(special_unitary_projection<4>(u, tol).su);
  return joint_real_diagonalization(m * m.transpose(), tol).phases;
}

inline ClassParams class_parameters_from_phases(const std::array<double, 4>& phi) {
  return {normalize_angle((phi[0] + phi[1]) / 2), normalize_angle((phi[0] + phi[2]) / 2),
          normalize_angle((phi[1] + phi[2]) / 2)};
}

/// (α, β, δ) from the pair means α = (φ₁+φ₂)/2, β = (φ₁+φ₃)/2, δ = (φ₂+φ₃)/2
/// of the sorted invariants.
inline ClassParams class_parameters(const Mat4& u, const Tolerances& tol = {}) {
  return class_parameters_from_phases(local_invariants(u, tol));
}

namespace detail {

/// Distance between two eigenphase multisets: the best pairing's largest
/// circular gap. SU projection fixes u only up to a factor i^k, which shifts
/// every phase of u·uᵀ by kπ, so both shifts are tried.
inline double invariant_mismatch(const std::array<double, 4>& x, const std::array<double, 4>& y) {
  double best = std::numeric_limits<double>::infinity();
  for (double shift : {0.0, kPi}) {
    std::array<int, 4> perm{0, 1, 2, 3};
    do {
      double worst = 0.0;
      for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(wrap_phase(x[k] - y[perm[k]] + shift)));
      best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return best;
}

/// Writes sign = −1 into θ when it fits in [0, 2π): −R(θ, φ) = R(2π − θ, φ + π).
inline RotationParams absorb_sign(RotationParams p) {
  if (p.sign < 0 && p.theta > 0.0) {
    p.theta = kTwoPi - p.theta;
    p.phi = normalize_angle(p.phi + kPi);
    p.sign = 1;
  }
  return p;
}

}  // namespace detail

/// Compiles a two-qubit unitary into the 15 single-qubit parameters of the
/// universal circuit plus a global phase.
///
/// u·uᵀ and v·vᵀ (magic basis) share eigenvalues, so with real orthogonal
/// eigenbases L and K (paired by eigenvalue, both det +1):
///   u = (L Kᵀ) · v · m,   m = v† K Lᵀ u ∈ SO(4),
/// and L Kᵀ, m map back to C⊗D and A⊗B in the computational basis.
inline CircuitParams decompose(const Mat4& u, const Tolerances& tol = {}) {
  const auto proj = special_unitary_projection<4>(u, tol);
  const Mat4 um = to_magic(proj.su);
  const EigenSystem eu = joint_real_diagonalization(um * um.transpose(), tol);

  CircuitParams out;
  out.cls = class_parameters_from_phases(eu.phases);
  const Mat4 vm = to_magic(entangling_core(out.cls));
  const EigenSystem ev = joint_real_diagonalization(vm * vm.transpose(), tol);

  // Pair each eigenvector of uuᵀ with an unused eigenvector of vvᵀ of equal eigenvalue.
  RealMat4 k;
  std::array<bool, 4> used{};
  for (int j = 0; j < 4; ++j) {
    const Complex lu = std::polar(1.0, eu.phases[j]);
    int best = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 4; ++i) {
      if (used[i]) continue;
      const double d = std::abs(lu - std::polar(1.0, ev.phases[i]));
      if (d < best_d) {
        best_d = d;
        best = i;
      }
    }
    if (!(best_d < tol.eigen_match)) {
      throw Error("decompose: eigenvalues of uuᵀ and vvᵀ do not match (" +
                  std::to_string(best_d) + ")");
    }
    used[best] = true;
    k.col(j) = ev.vectors.col(best);
  }
  if (k.determinant() < 0) k.col(3) *= -1.0;
  const RealMat4& l = eu.vectors;

  const Mat4 m = vm.adjoint() * (k * l.transpose()).cast<Complex>() * um;
  const double imag_residue = max_abs(m.imag());
  if (!(imag_residue < tol.reality)) {
    throw RealityViolationError("decompose: m has imaginary residue " +
                                std::to_string(imag_residue));
  }
  const Mat4 after = from_magic((l * k.transpose()).cast<Complex>());
  const Mat4 before = from_magic(m.real().cast<Complex>());

  const TensorFactors fa = factor_tensor_product(before, tol);
  const TensorFactors fc = factor_tensor_product(after, tol);
  out.a = detail::absorb_sign(su2_params(fa.a, tol));
  out.b = detail::absorb_sign(su2_params(fa.b, tol));
  out.c = detail::absorb_sign(su2_params(fc.a, tol));
  out.d = detail::absorb_sign(su2_params(fc.b, tol));
  out.global_phase = proj.phase * fa.phase * fc.phase;
  return out;
}

struct VerifyReport {
  double distance = 0.0;
  double invariant_error = 0.0;
  bool pass = false;
};

inline VerifyReport verify(const Mat4& u, const CircuitParams& c, const Tolerances& tol = {}) {
  const Mat4 w = circuit_to_unitary(c);
  VerifyReport r;
  r.distance = phase_invariant_distance(u, w);
  // u may carry rounding (printed tables); invariants are taken from its polar factor.
  r.invariant_error =
      detail::invariant_mismatch(local_invariants(nearest_unitary<4>(u), tol), local_invariants(w, tol));
  r.pass = r.distance < tol.verify;
  return r;
}

}  // namespace su4c

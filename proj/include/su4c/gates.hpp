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

#include <array>
#include <cmath>
#include <stdexcept>
#include <variant>
#include <vector>

#include "su4c/linalg.hpp"

namespace su4c {

// ---------------------------------------------------------------------------
// Gate library: R(θ, φ), Rz(φz) on one qubit and the entangling phase gate G.

struct RGate {
  double theta;
  double phi;
  int target;
  bool operator==(const RGate&) const = default;
};

struct RzGate {
  double phiz;
  int target;
  bool operator==(const RzGate&) const = default;
};

struct GGate {
  bool operator==(const GGate&) const = default;
};

using GateLibraryElement = std::variant<RGate, RzGate, GGate>;

inline RGate make_r(double theta, double phi, int target) {
  if (target != 0 && target != 1) throw std::invalid_argument("qubit index must be 0 or 1");
  return {theta, normalize_angle(phi), target};
}

inline RzGate make_rz(double phiz, int target) {
  if (target != 0 && target != 1) throw std::invalid_argument("qubit index must be 0 or 1");
  return {phiz, target};
}

inline Mat2 gate_matrix(const RGate& g) { return r_matrix(g.theta, g.phi); }
inline Mat2 gate_matrix(const RzGate& g) { return rz_matrix(g.phiz); }

/// e^{−iπ/4} exp(iπ/4 σz⊗σz) = diag(1, −i, −i, 1).
inline Mat4 gate_matrix(GGate) {
  Mat4 g = Mat4::Zero();
  g.diagonal() << 1, -kI, -kI, 1;
  return g;
}

/// Action of any library element on the two-qubit register.
inline Mat4 embed(const GateLibraryElement& g) {
  return std::visit(
      [](const auto& gate) -> Mat4 {
        using T = std::decay_t<decltype(gate)>;
        if constexpr (std::is_same_v<T, GGate>) {
          return gate_matrix(gate);
        } else {
          const Mat2 m = gate_matrix(gate);
          return gate.target == 0 ? kron(m, Mat2::Identity()) : kron(Mat2::Identity(), m);
        }
      },
      g);
}

// ---------------------------------------------------------------------------
// Magic basis.

/// Columns are the magic basis vectors in the computational basis.
inline Mat4 magic_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  Mat4 l;
  l << 1, kI, 0, 0,
       0, 0, kI, 1,
       0, 0, kI, -1,
       1, -kI, 0, 0;
  return r * l;
}

enum class MagicDirection { kToMagic, kFromMagic };

inline Mat4 magic_transform(const Mat4& m, MagicDirection direction) {
  const Mat4 l = magic_basis();
  return direction == MagicDirection::kToMagic ? Mat4(l.adjoint() * m * l)
                                               : Mat4(l * m * l.adjoint());
}

inline Mat4 to_magic(const Mat4& m) { return magic_transform(m, MagicDirection::kToMagic); }
inline Mat4 from_magic(const Mat4& m) { return magic_transform(m, MagicDirection::kFromMagic); }

// ---------------------------------------------------------------------------
// Local equivalence classes.

struct ClassParams {
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 0.0;

  /// Phases of the eigenvalues of v·vᵀ for any V in this class.
  std::array<double, 4> eigenphases() const {
    return {alpha + beta - delta, alpha - beta + delta, -alpha + beta + delta,
            -alpha - beta - delta};
  }
  bool operator==(const ClassParams&) const = default;
};

/// Class representative that is diagonal in the magic basis.
inline Mat4 canonical_v(const ClassParams& p) {
  const auto phases = p.eigenphases();
  Vec4 d;
  for (int j = 0; j < 4; ++j) d(j) = std::polar(1.0, phases[j] / 2);
  return from_magic(d.asDiagonal().toDenseMatrix());
}

/// The three-G block that realizes a class on the processor:
/// e^{−iπ/4} · G · (R(β, π/2) ⊗ R(π/2, δ+π)) · G · (R(α, 0) ⊗ R(π/2, π)) · G.
/// Its v·vᵀ eigenphases equal ClassParams::eigenphases(), and det = 1.
inline Mat4 entangling_core(const ClassParams& p) {
  const Mat4 g = gate_matrix(GGate{});
  const Mat4 first = kron(r_matrix(p.alpha, 0.0), r_matrix(kPi / 2, kPi));
  const Mat4 second = kron(r_matrix(p.beta, kPi / 2), r_matrix(kPi / 2, p.delta + kPi));
  return std::polar(1.0, -kPi / 4) * g * second * g * first * g;
}

// ---------------------------------------------------------------------------
// Full two-qubit circuits: U = global_phase · (C ⊗ D) · V · (A ⊗ B).

/// Reduces θ and φz into [0, 2π), tracking the sign each 2π shift introduces.
inline RotationParams normalized(RotationParams p) {
  const auto fold = [&p](double& angle) {
    const double turns = std::floor(angle / kTwoPi);
    angle -= turns * kTwoPi;
    if (angle >= kTwoPi) angle = 0.0;
    if (static_cast<long long>(turns) % 2 != 0) p.sign = -p.sign;
  };
  fold(p.theta);
  fold(p.phiz);
  p.phi = normalize_angle(p.phi);
  return p;
}

struct CircuitParams {
  ClassParams cls;
  RotationParams a;  // qubit 0, before the core
  RotationParams b;  // qubit 1, before the core
  RotationParams c;  // qubit 0, after the core
  RotationParams d;  // qubit 1, after the core
  Complex global_phase{1.0, 0.0};
};

inline Mat4 circuit_to_unitary(const CircuitParams& c) {
  return c.global_phase * kron(c.c.matrix(), c.d.matrix()) * entangling_core(c.cls) *
         kron(c.a.matrix(), c.b.matrix());
}

// ---------------------------------------------------------------------------
// Pulse-level programs.

inline constexpr double kCalibratedTheta = kPi / 2;

/// Time-ordered pulses (first element applied first). Every R pulse has
/// θ = π/2; arbitrary angles live in Rz phase advances.
class PulseSequence {
 public:
  void push(const GateLibraryElement& g) {
    if (const auto* r = std::get_if<RGate>(&g); r != nullptr && r->theta != kCalibratedTheta) {
      throw std::invalid_argument("PulseSequence: R pulses must have θ = π/2");
    }
    pulses_.push_back(g);
  }

  const std::vector<GateLibraryElement>& pulses() const { return pulses_; }
  std::size_t size() const { return pulses_.size(); }

  /// Unobservable scalar that makes compose() equal the programmed unitary exactly.
  Complex global_phase() const { return global_phase_; }
  void set_global_phase(Complex phase) { global_phase_ = phase; }

  Mat4 compose() const {
    Mat4 u = Mat4::Identity();
    for (const auto& g : pulses_) u = embed(g) * u;
    return global_phase_ * u;
  }

 private:
  std::vector<GateLibraryElement> pulses_;
  Complex global_phase_{1.0, 0.0};
};

namespace detail {

/// R(θ, φ) = R(π/2, φ+π/2) · Rz(θ) · R(π/2, φ−π/2), emitted in time order.
inline void push_lowered_r(PulseSequence& seq, double theta, double phi, int target) {
  seq.push(make_r(kCalibratedTheta, phi - kPi / 2, target));
  seq.push(make_rz(theta, target));
  seq.push(make_r(kCalibratedTheta, phi + kPi / 2, target));
}

inline void push_correction(PulseSequence& seq, const RotationParams& p, int target) {
  push_lowered_r(seq, p.theta, p.phi, target);
  seq.push(make_rz(p.phiz, target));
}

}  // namespace detail

/// Lowers a circuit to calibrated pulses. The pulse count and layout are
/// the same for every input; only phases change.
inline PulseSequence lower_to_pulses(const CircuitParams& c) {
  PulseSequence seq;
  detail::push_correction(seq, c.a, 0);
  detail::push_correction(seq, c.b, 1);
  seq.push(GGate{});
  detail::push_lowered_r(seq, c.cls.alpha, 0.0, 0);
  seq.push(make_r(kCalibratedTheta, kPi, 1));
  seq.push(GGate{});
  detail::push_lowered_r(seq, c.cls.beta, kPi / 2, 0);
  seq.push(make_r(kCalibratedTheta, c.cls.delta + kPi, 1));
  seq.push(GGate{});
  detail::push_correction(seq, c.c, 0);
  detail::push_correction(seq, c.d, 1);
  const double signs = c.a.sign * c.b.sign * c.c.sign * c.d.sign;
  seq.set_global_phase(c.global_phase * signs * std::polar(1.0, -kPi / 4));
  return seq;
}

}  // namespace su4c

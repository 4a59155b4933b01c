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
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "su4c/compiler.hpp"
#include "su4c/density.hpp"
#include "su4c/gates.hpp"
#include "su4c/haar.hpp"

namespace su4c {

// ---------------------------------------------------------------------------
// Input states.

enum class LocalState { kDown, kUp, kPlus, kMinusI };

struct InputStateLabel {
  LocalState q0 = LocalState::kUp;
  LocalState q1 = LocalState::kUp;
  bool operator==(const InputStateLabel&) const = default;
};

inline Eigen::Vector2cd local_state_vector(LocalState s) {
  const double r = 1.0 / std::sqrt(2.0);
  switch (s) {
    case LocalState::kDown: return {0.0, 1.0};
    case LocalState::kUp: return {1.0, 0.0};
    case LocalState::kPlus: return {r, r};
    case LocalState::kMinusI: return {Complex(r), -kI * r};
  }
  throw std::invalid_argument("unknown local state");
}

inline const char* to_string(LocalState s) {
  switch (s) {
    case LocalState::kDown: return "down";
    case LocalState::kUp: return "up";
    case LocalState::kPlus: return "plus";
    case LocalState::kMinusI: return "minus_i";
  }
  return "?";
}

inline LocalState parse_local_state(const std::string& s) {
  if (s == "down") return LocalState::kDown;
  if (s == "up") return LocalState::kUp;
  if (s == "plus") return LocalState::kPlus;
  if (s == "minus_i") return LocalState::kMinusI;
  throw std::invalid_argument("unknown local state '" + s + "'");
}

inline std::string to_string(const InputStateLabel& l) {
  return std::string(to_string(l.q0)) + "," + to_string(l.q1);
}

/// All 16 product inputs, first qubit varying slowest.
inline std::array<InputStateLabel, 16> all_input_labels() {
  constexpr std::array kStates{LocalState::kDown, LocalState::kUp, LocalState::kPlus,
                               LocalState::kMinusI};
  std::array<InputStateLabel, 16> out;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) out[4 * i + j] = {kStates[i], kStates[j]};
  return out;
}

inline Vec4 input_state(const InputStateLabel& l) {
  const auto a = local_state_vector(l.q0);
  const auto b = local_state_vector(l.q1);
  Vec4 v;
  v << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
  return v;
}

// ---------------------------------------------------------------------------
// Noise.

/// Phenomenological noise: relative θ over-rotation on every R pulse,
/// depolarizing after every G, and amplitude damping of each qubit toward
/// |↑⟩ at the end of the circuit.
struct NoiseModel {
  double overrotation_sigma = 0.0;
  double depolarizing_per_g = 0.0;
  double damping_per_circuit = 0.0;

  void validate() const {
    if (!(overrotation_sigma >= 0.0)) throw std::invalid_argument("overrotation_sigma must be >= 0");
    if (!(depolarizing_per_g >= 0.0 && depolarizing_per_g <= 1.0))
      throw std::invalid_argument("depolarizing_per_g must be in [0, 1]");
    if (!(damping_per_circuit >= 0.0 && damping_per_circuit <= 1.0))
      throw std::invalid_argument("damping_per_circuit must be in [0, 1]");
  }
  bool is_ideal() const {
    return overrotation_sigma == 0.0 && depolarizing_per_g == 0.0 && damping_per_circuit == 0.0;
  }
  bool is_deterministic() const { return overrotation_sigma == 0.0; }
};

namespace detail {

inline Mat4 conjugate(const Mat4& u, const Mat4& rho) { return u * rho * u.adjoint(); }

inline Mat4 amplitude_damp(const Mat4& rho, double gamma, int target) {
  Mat2 k0 = Mat2::Zero(), k1 = Mat2::Zero();
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - gamma);
  k1(0, 1) = std::sqrt(gamma);
  const auto lift = [target](const Mat2& k) {
    return target == 0 ? kron(k, Mat2::Identity()) : kron(Mat2::Identity(), k);
  };
  return conjugate(lift(k0), rho) + conjugate(lift(k1), rho);
}

}  // namespace detail

/// One noisy realization of `seq` acting on `rho`.
inline DensityMatrix apply_channel(const DensityMatrix& rho, const PulseSequence& seq,
                                   const NoiseModel& noise, SeededRng& rng,
                                   const Tolerances& tol = {}) {
  noise.validate();
  Mat4 r = rho.matrix();
  for (const auto& pulse : seq.pulses()) {
    if (const auto* g = std::get_if<RGate>(&pulse)) {
      RGate actual = *g;
      if (noise.overrotation_sigma > 0.0) actual.theta *= 1.0 + noise.overrotation_sigma * rng.normal();
      r = detail::conjugate(embed(actual), r);
    } else {
      r = detail::conjugate(embed(pulse), r);
      if (std::holds_alternative<GGate>(pulse) && noise.depolarizing_per_g > 0.0) {
        r = (1.0 - noise.depolarizing_per_g) * r +
            noise.depolarizing_per_g * Mat4::Identity() / 4.0;
      }
    }
  }
  if (noise.damping_per_circuit > 0.0) {
    r = detail::amplitude_damp(r, noise.damping_per_circuit, 0);
    r = detail::amplitude_damp(r, noise.damping_per_circuit, 1);
  }
  return DensityMatrix::checked(r, tol.density_input);
}

// ---------------------------------------------------------------------------
// Measurement.

enum class Basis { kZ, kX, kY };

inline char to_char(Basis b) { return b == Basis::kZ ? 'Z' : (b == Basis::kX ? 'X' : 'Y'); }

inline Basis parse_basis(const std::string& s) {
  if (s == "Z") return Basis::kZ;
  if (s == "X") return Basis::kX;
  if (s == "Y") return Basis::kY;
  throw std::invalid_argument("unknown basis '" + s + "'");
}

struct Setting {
  Basis q0 = Basis::kZ;
  Basis q1 = Basis::kZ;
  bool operator==(const Setting&) const = default;
};

/// ZZ, ZX, ZY, XZ, XX, XY, YZ, YX, YY.
inline std::array<Setting, 9> all_settings() {
  constexpr std::array kBases{Basis::kZ, Basis::kX, Basis::kY};
  std::array<Setting, 9> out;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out[3 * i + j] = {kBases[i], kBases[j]};
  return out;
}

/// Rotation applied before a computational-basis readout: X eigenstates via
/// R(π/2, π/2), Y eigenstates via R(π/2, 0).
inline Mat2 analysis_rotation(Basis b) {
  switch (b) {
    case Basis::kZ: return Mat2::Identity();
    case Basis::kX: return r_matrix(kPi / 2, kPi / 2);
    case Basis::kY: return r_matrix(kPi / 2, 0.0);
  }
  throw std::invalid_argument("unknown basis");
}

/// POVM elements for the four outcomes (↑↑, ↑↓, ↓↑, ↓↓) of a setting.
inline std::array<Mat4, 4> measurement_projectors(const Setting& s) {
  const Mat4 rot = kron(analysis_rotation(s.q0), analysis_rotation(s.q1));
  std::array<Mat4, 4> out;
  for (int k = 0; k < 4; ++k) {
    const Vec4 v = rot.adjoint().col(k);
    out[k] = v * v.adjoint();
  }
  return out;
}

inline std::array<double, 4> outcome_probabilities(const DensityMatrix& rho, const Setting& s) {
  const Mat4 rot = kron(analysis_rotation(s.q0), analysis_rotation(s.q1));
  const Mat4 rotated = rot * rho.matrix() * rot.adjoint();
  std::array<double, 4> p{};
  double total = 0.0;
  for (int k = 0; k < 4; ++k) {
    p[k] = std::max(0.0, rotated(k, k).real());
    total += p[k];
  }
  for (double& x : p) x /= total;
  return p;
}

struct MeasurementRecord {
  Setting setting;
  std::array<std::int64_t, 4> counts{};
  std::int64_t shots = 0;
};

namespace detail {

inline int sample_outcome(const std::array<double, 4>& p, SeededRng& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (int k = 0; k < 3; ++k) {
    acc += p[k];
    if (u < acc) return k;
  }
  return 3;
}

}  // namespace detail

inline MeasurementRecord measure(const DensityMatrix& rho, const Setting& setting,
                                 std::int64_t shots, SeededRng& rng) {
  if (shots < 0) throw std::invalid_argument("shots must be non-negative");
  const auto p = outcome_probabilities(rho, setting);
  MeasurementRecord rec{setting, {}, shots};
  for (std::int64_t s = 0; s < shots; ++s) ++rec.counts[detail::sample_outcome(p, rng)];
  return rec;
}

/// Nine-setting experiment on a compiled program. Each shot is an independent
/// run with its own noise draw; noise without over-rotation is deterministic,
/// so the state is evolved once and sampled.
inline std::vector<MeasurementRecord> run_pulses(const PulseSequence& seq,
                                                 const InputStateLabel& label,
                                                 const NoiseModel& noise,
                                                 std::int64_t shots_per_setting, SeededRng& rng) {
  const DensityMatrix input = DensityMatrix::pure(input_state(label));
  std::vector<MeasurementRecord> records;
  records.reserve(9);
  if (noise.is_deterministic()) {
    const DensityMatrix out = apply_channel(input, seq, noise, rng);
    for (const auto& s : all_settings()) records.push_back(measure(out, s, shots_per_setting, rng));
    return records;
  }
  for (const auto& s : all_settings()) {
    MeasurementRecord rec{s, {}, shots_per_setting};
    for (std::int64_t shot = 0; shot < shots_per_setting; ++shot) {
      const DensityMatrix out = apply_channel(input, seq, noise, rng);
      ++rec.counts[detail::sample_outcome(outcome_probabilities(out, s), rng)];
    }
    records.push_back(rec);
  }
  return records;
}

inline std::vector<MeasurementRecord> run_experiment(const Mat4& u, const InputStateLabel& label,
                                                     const NoiseModel& noise,
                                                     std::int64_t shots_per_setting,
                                                     SeededRng& rng, const Tolerances& tol = {}) {
  return run_pulses(lower_to_pulses(decompose(u, tol)), label, noise, shots_per_setting, rng);
}

}  // namespace su4c

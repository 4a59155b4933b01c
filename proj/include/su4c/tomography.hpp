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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "su4c/density.hpp"
#include "su4c/experiment.hpp"
#include "su4c/linalg.hpp"

namespace su4c {

// ---------------------------------------------------------------------------
// State tomography.

/// Outcome weights for one setting. Counts may be fractional so exact
/// probabilities can stand in for an infinite number of shots.
struct SettingCounts {
  Setting setting;
  std::array<double, 4> counts{};
};

inline std::vector<SettingCounts> to_setting_counts(std::span<const MeasurementRecord> records) {
  std::vector<SettingCounts> out;
  out.reserve(records.size());
  for (const auto& r : records) {
    SettingCounts sc{r.setting, {}};
    for (int k = 0; k < 4; ++k) sc.counts[k] = static_cast<double>(r.counts[k]);
    out.push_back(sc);
  }
  return out;
}

/// Noise-free data: outcome probabilities × shots for every setting.
inline std::vector<SettingCounts> exact_counts(const DensityMatrix& rho, double shots = 1.0) {
  std::vector<SettingCounts> out;
  for (const auto& s : all_settings()) {
    SettingCounts sc{s, outcome_probabilities(rho, s)};
    for (double& c : sc.counts) c *= shots;
    out.push_back(sc);
  }
  return out;
}

enum class TomographyMethod { kLinear, kMle };

inline TomographyMethod parse_method(const std::string& s) {
  if (s == "linear") return TomographyMethod::kLinear;
  if (s == "mle") return TomographyMethod::kMle;
  throw std::invalid_argument("unknown tomography method '" + s + "'");
}

namespace detail {

inline Mat2 pauli_by_index(int a) {
  switch (a) {
    case 0: return Mat2::Identity();
    case 1: return pauli::x();
    case 2: return pauli::y();
    default: return pauli::z();
  }
}

/// Checks setting coverage and returns, per setting, the projectors and normalized frequencies.
struct PreparedData {
  std::vector<std::array<Mat4, 4>> projectors;
  std::vector<std::array<double, 4>> frequencies;
  std::vector<std::array<double, 4>> counts;
};

inline PreparedData prepare(std::span<const SettingCounts> data) {
  const auto settings = all_settings();
  std::array<bool, 9> seen{};
  PreparedData out;
  for (const auto& d : data) {
    int idx = -1;
    for (int i = 0; i < 9; ++i)
      if (settings[i] == d.setting) idx = i;
    if (seen[idx]) throw TomographyInputError("duplicate measurement setting");
    seen[idx] = true;
    double total = 0.0;
    for (double c : d.counts) {
      if (!(c >= 0.0)) throw TomographyInputError("negative outcome count");
      total += c;
    }
    if (!(total > 0.0)) throw TomographyInputError("setting with zero shots");
    std::array<double, 4> f{};
    for (int k = 0; k < 4; ++k) f[k] = d.counts[k] / total;
    out.projectors.push_back(measurement_projectors(d.setting));
    out.frequencies.push_back(f);
    out.counts.push_back(d.counts);
  }
  for (bool s : seen)
    if (!s) throw TomographyInputError("tomography needs all nine settings {Z,X,Y}²");
  return out;
}

}  // namespace detail

inline double log_likelihood(const DensityMatrix& rho, std::span<const SettingCounts> data) {
  double ll = 0.0;
  for (const auto& d : data) {
    const auto proj = measurement_projectors(d.setting);
    for (int k = 0; k < 4; ++k) {
      if (d.counts[k] == 0.0) continue;
      const double p = (proj[k] * rho.matrix()).trace().real();
      ll += d.counts[k] * std::log(std::max(p, 1e-300));
    }
  }
  return ll;
}

/// Least-squares inversion of the linear map from ρ (Pauli coordinates) to
/// outcome frequencies. Hermitian with unit trace, but not necessarily PSD.
inline Mat4 linear_estimate(std::span<const SettingCounts> data) {
  const auto prepared = detail::prepare(data);
  std::array<Mat4, 16> paulis;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      paulis[4 * a + b] = kron(detail::pauli_by_index(a), detail::pauli_by_index(b));

  Eigen::Matrix<double, 36, 16> design;
  Eigen::Matrix<double, 36, 1> freq;
  for (int s = 0; s < 9; ++s) {
    for (int k = 0; k < 4; ++k) {
      for (int p = 0; p < 16; ++p)
        design(4 * s + k, p) = (prepared.projectors[s][k] * paulis[p]).trace().real() / 4.0;
      freq(4 * s + k) = prepared.frequencies[s][k];
    }
  }
  const Eigen::Matrix<double, 16, 1> coeff = design.colPivHouseholderQr().solve(freq);
  Mat4 rho = Mat4::Zero();
  for (int p = 0; p < 16; ++p) rho += coeff(p) * paulis[p] / 4.0;
  return rho;
}

/// Linear estimate projected onto density matrices by eigenvalue clipping.
inline DensityMatrix reconstruct_state_linear(std::span<const SettingCounts> data) {
  return DensityMatrix::project(linear_estimate(data));
}

struct MleResult {
  DensityMatrix rho;
  std::vector<double> log_likelihood;  // one entry per accepted iterate, starting at I/4
  int iterations = 0;
};

struct MleOptions {
  int max_iterations = 2000;
  double tolerance = 1e-10;  // stop when the log-likelihood gain drops below this
};

/// RρR fixed-point ascent on the multinomial likelihood, starting from I/4.
/// A step that lowers the likelihood is retried with R diluted toward I
/// (weight halved each time).
inline MleResult reconstruct_state_mle(std::span<const SettingCounts> data, MleOptions opts = {}) {
  const auto prepared = detail::prepare(data);
  const std::size_t settings = prepared.projectors.size();

  const auto ll_of = [&](const Mat4& rho) {
    double ll = 0.0;
    for (std::size_t s = 0; s < settings; ++s)
      for (int k = 0; k < 4; ++k) {
        if (prepared.counts[s][k] == 0.0) continue;
        const double p = (prepared.projectors[s][k] * rho).trace().real();
        ll += prepared.counts[s][k] * std::log(std::max(p, 1e-300));
      }
    return ll;
  };

  Mat4 rho = Mat4::Identity() / 4.0;
  double ll = ll_of(rho);
  MleResult result{DensityMatrix::maximally_mixed(), {ll}, 0};

  for (int it = 0; it < opts.max_iterations; ++it) {
    Mat4 r = Mat4::Zero();
    for (std::size_t s = 0; s < settings; ++s)
      for (int k = 0; k < 4; ++k) {
        if (prepared.frequencies[s][k] == 0.0) continue;
        const double p = (prepared.projectors[s][k] * rho).trace().real();
        r += (prepared.frequencies[s][k] / std::max(p, 1e-300)) * prepared.projectors[s][k];
      }
    r /= static_cast<double>(settings);

    double weight = 1.0;
    bool accepted = false;
    Mat4 next;
    double next_ll = ll;
    for (int halving = 0; halving < 40; ++halving) {
      const Mat4 step = (1.0 - weight) * Mat4::Identity() + weight * r;
      next = step * rho * step.adjoint();
      next /= next.trace().real();
      next = (next + next.adjoint()) / 2.0;
      next_ll = ll_of(next);
      if (next_ll >= ll) {
        accepted = true;
        break;
      }
      weight *= 0.5;
    }
    if (!accepted) break;
    const double gain = next_ll - ll;
    rho = next;
    ll = next_ll;
    result.log_likelihood.push_back(ll);
    result.iterations = it + 1;
    if (gain < opts.tolerance) break;
  }

  // Clip round-off below −1e-12 before renormalizing.
  Eigen::SelfAdjointEigenSolver<Mat4> solver(rho);
  Eigen::Vector4d w = solver.eigenvalues();
  for (int i = 0; i < 4; ++i)
    if (w(i) < 1e-12) w(i) = std::max(w(i), 0.0);
  const Mat4 clipped = solver.eigenvectors() * w.cast<Complex>().asDiagonal() *
                       solver.eigenvectors().adjoint();
  result.rho = DensityMatrix::project(clipped);
  return result;
}

inline DensityMatrix reconstruct_state(std::span<const SettingCounts> data,
                                       TomographyMethod method = TomographyMethod::kMle) {
  return method == TomographyMethod::kLinear ? reconstruct_state_linear(data)
                                             : reconstruct_state_mle(data).rho;
}

inline DensityMatrix reconstruct_state(std::span<const MeasurementRecord> records,
                                       TomographyMethod method = TomographyMethod::kMle) {
  const auto data = to_setting_counts(records);
  return reconstruct_state(std::span<const SettingCounts>(data), method);
}

// ---------------------------------------------------------------------------
// Fidelities.

namespace detail {

inline Mat4 psd_sqrt(const Mat4& m, double clip) {
  Eigen::SelfAdjointEigenSolver<Mat4> solver((m + m.adjoint()) / 2.0);
  Eigen::Vector4d w = solver.eigenvalues();
  for (int i = 0; i < 4; ++i) w(i) = w(i) > clip ? std::sqrt(w(i)) : 0.0;
  return solver.eigenvectors() * w.cast<Complex>().asDiagonal() * solver.eigenvectors().adjoint();
}

/// [Tr √(√a b √a)]² as the squared trace norm of √a·√b; inputs need not be normalized.
inline double fidelity_unchecked(const Mat4& a, const Mat4& b, double clip) {
  const Mat4 prod = psd_sqrt(a, clip) * psd_sqrt(b, clip);
  Eigen::JacobiSVD<Mat4> svd(prod);
  const double root = svd.singularValues().sum();
  return std::clamp(root * root, 0.0, 1.0);
}

}  // namespace detail

inline double state_fidelity(const DensityMatrix& a, const DensityMatrix& b,
                             const Tolerances& tol = {}) {
  return detail::fidelity_unchecked(a.matrix(), b.matrix(), tol.eigen_clip);
}

// ---------------------------------------------------------------------------
// Process tomography. E = Σ_ij |i⟩⟨j| ⊗ 𝓔(|i⟩⟨j|), entry (4i+k, 4j+l) = 𝓔(|i⟩⟨j|)_kl.

class ProcessMatrix {
 public:
  using Storage = Eigen::Matrix<Complex, 16, 16>;

  ProcessMatrix() : e_(Storage::Zero()) {}
  explicit ProcessMatrix(const Storage& e) : e_(e) {}

  const Storage& matrix() const { return e_; }

  /// 𝓔(|i⟩⟨j|), zero-based i, j.
  Mat4 block(int i, int j) const { return e_.block<4, 4>(4 * i, 4 * j); }

  Mat4 apply(const Mat4& rho) const {
    Mat4 out = Mat4::Zero();
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (rho(i, j) != Complex(0.0)) out += rho(i, j) * block(i, j);
    return out;
  }

  /// Output-space partial trace; the identity for a trace-preserving map.
  Mat4 output_trace() const {
    Mat4 t;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) t(i, j) = block(i, j).trace();
    return t;
  }

 private:
  Storage e_;
};

inline ProcessMatrix process_matrix_of_unitary(const Mat4& u, const Tolerances& tol = {}) {
  require_unitary(u, tol.unitary_input, "process_matrix_of_unitary");
  ProcessMatrix::Storage e;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) e.block<4, 4>(4 * i, 4 * j) = u.col(i) * u.col(j).adjoint();
  return ProcessMatrix(e);
}

/// The map ρ ↦ (1−p)·ρ_U + p·I/4 with ρ_U = UρU† (p = 1 is full depolarizing).
inline ProcessMatrix depolarized_process(const Mat4& u, double p) {
  ProcessMatrix::Storage e = (1.0 - p) * process_matrix_of_unitary(u).matrix();
  for (int i = 0; i < 4; ++i) e.block<4, 4>(4 * i, 4 * i) += p * Mat4::Identity() / 4.0;
  return ProcessMatrix(e);
}

struct ProcessOptions {
  bool cp_projection = true;
  int max_projection_rounds = 500;
};

namespace detail {

inline ProcessMatrix::Storage trace_preserving_fix(const ProcessMatrix::Storage& e) {
  const Mat4 t = ProcessMatrix(e).output_trace();
  ProcessMatrix::Storage out = e;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Complex excess = t(i, j) - (i == j ? 1.0 : 0.0);
      for (int k = 0; k < 4; ++k) out(4 * i + k, 4 * j + k) -= excess / 4.0;
    }
  return out;
}

}  // namespace detail

/// Rebuilds 𝓔 from output states for a spanning set of inputs: expand every
/// |i⟩⟨j| in the input operators, apply linearity, then project onto
/// Hermitian, trace-preserving and (optionally) completely positive maps.
inline ProcessMatrix reconstruct_process(
    std::span<const std::pair<InputStateLabel, DensityMatrix>> per_input,
    ProcessOptions opts = {}) {
  const int n = static_cast<int>(per_input.size());
  Eigen::Matrix<Complex, 16, Eigen::Dynamic> inputs(16, n);
  for (int a = 0; a < n; ++a) {
    const DensityMatrix in = DensityMatrix::pure(input_state(per_input[a].first));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) inputs(4 * i + j, a) = in(i, j);
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::Matrix<Complex, 16, Eigen::Dynamic>> solver(inputs);
  if (solver.rank() < 16) throw TomographyInputError("input states do not span operator space");
  const Eigen::Matrix<Complex, Eigen::Dynamic, 16> coeff =
      solver.solve(Eigen::Matrix<Complex, 16, 16>::Identity());

  ProcessMatrix::Storage e = ProcessMatrix::Storage::Zero();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Mat4 image = Mat4::Zero();
      for (int a = 0; a < n; ++a) image += coeff(a, 4 * i + j) * per_input[a].second.matrix();
      e.block<4, 4>(4 * i, 4 * j) = image;
    }

  e = (e + e.adjoint()).eval() / 2.0;
  e = detail::trace_preserving_fix(e);
  if (opts.cp_projection) {
    for (int round = 0; round < opts.max_projection_rounds; ++round) {
      Eigen::SelfAdjointEigenSolver<ProcessMatrix::Storage> eig(e);
      if (eig.eigenvalues().minCoeff() >= -1e-12) break;
      const Eigen::Matrix<double, 16, 1> w = eig.eigenvalues().cwiseMax(0.0);
      e = eig.eigenvectors() * w.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
      e = (e + e.adjoint()).eval() / 2.0;
      e = detail::trace_preserving_fix(e);
    }
  }
  return ProcessMatrix(e);
}

/// Tr(E_ideal · E_exp) / 16.
inline double entanglement_fidelity(const ProcessMatrix& ideal, const ProcessMatrix& exp) {
  const Complex t = (ideal.matrix() * exp.matrix()).trace() / 16.0;
  if (!(std::abs(t.imag()) < 1e-9)) {
    throw Error("entanglement_fidelity: imaginary residue " + std::to_string(t.imag()));
  }
  return t.real();
}

/// Eigenstates of σa ⊗ σb for a, b ∈ {x, y, z}, ordered by (a, b, sign_a, sign_b)
/// with + before −. These are the 36 products of single-qubit Pauli eigenstates.
inline std::array<Vec4, 36> pauli_product_states() {
  const double r = 1.0 / std::sqrt(2.0);
  const std::array<std::array<Eigen::Vector2cd, 2>, 3> eig{{
      {Eigen::Vector2cd(r, r), Eigen::Vector2cd(r, -r)},
      {Eigen::Vector2cd(r, kI * r), Eigen::Vector2cd(r, -kI * r)},
      {Eigen::Vector2cd(1, 0), Eigen::Vector2cd(0, 1)},
  }};
  std::array<Vec4, 36> out;
  int n = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int sa = 0; sa < 2; ++sa)
        for (int sb = 0; sb < 2; ++sb) {
          const auto& x = eig[a][sa];
          const auto& y = eig[b][sb];
          out[n++] << x(0) * y(0), x(0) * y(1), x(1) * y(0), x(1) * y(1);
        }
  return out;
}

/// Output-state fidelities of the two maps over the 36 Pauli product states.
inline std::vector<double> per_state_fidelities(const ProcessMatrix& ideal, const ProcessMatrix& exp,
                                                const Tolerances& tol = {}) {
  std::vector<double> out;
  for (const Vec4& psi : pauli_product_states()) {
    const Mat4 rho = psi * psi.adjoint();
    out.push_back(detail::fidelity_unchecked(ideal.apply(rho), exp.apply(rho), tol.eigen_clip));
  }
  return out;
}

inline double mean_state_fidelity(const ProcessMatrix& ideal, const ProcessMatrix& exp,
                                  const Tolerances& tol = {}) {
  const auto f = per_state_fidelities(ideal, exp, tol);
  double sum = 0.0;
  for (double x : f) sum += x;
  return sum / static_cast<double>(f.size());
}

/// (d·F + 1)/(d + 1), the mean state fidelity implied by an entanglement fidelity F.
inline double mean_fidelity_from_entanglement(double f, int d = 4) {
  return (static_cast<double>(d) * f + 1.0) / (static_cast<double>(d) + 1.0);
}

struct FidelityReport {
  double entanglement = 0.0;  // F
  double mean_state = 0.0;    // f̄
  std::vector<double> per_state;

  /// f̄ − (4F + 1)/5.
  double relation_residual() const { return mean_state - mean_fidelity_from_entanglement(entanglement); }
};

inline FidelityReport fidelity_report(const ProcessMatrix& ideal, const ProcessMatrix& exp,
                                      const Tolerances& tol = {}) {
  FidelityReport r;
  r.entanglement = entanglement_fidelity(ideal, exp);
  r.per_state = per_state_fidelities(ideal, exp, tol);
  double sum = 0.0;
  for (double x : r.per_state) sum += x;
  r.mean_state = sum / static_cast<double>(r.per_state.size());
  return r;
}

}  // namespace su4c

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
#include <cstdint>
#include <future>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "su4c/compiler.hpp"
#include "su4c/experiment.hpp"
#include "su4c/haar.hpp"
#include "su4c/tomography.hpp"

namespace su4c {

// RNG stream ids forked from the master seed.
inline constexpr std::uint64_t kUnitaryStream = 0;
inline constexpr std::uint64_t kExperimentStream = 1ULL << 32;
inline constexpr std::uint64_t kAssignmentStream = 1ULL << 40;

namespace detail {

/// Runs body(i) for i in [0, n) on up to `threads` workers; results land by index.
template <typename Body>
void parallel_for(int n, unsigned threads, Body body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(n, 1)));
  std::vector<std::future<void>> jobs;
  for (unsigned t = 0; t < threads; ++t) {
    jobs.push_back(std::async(std::launch::async, [=, &body] {
      for (int i = static_cast<int>(t); i < n; i += static_cast<int>(threads)) body(i);
    }));
  }
  for (auto& j : jobs) j.get();
}

/// Output state of one experiment, reconstructed from simulated counts or,
/// in exact mode, from the outcome probabilities themselves.
inline DensityMatrix measured_output(const PulseSequence& seq, const InputStateLabel& label,
                                     const NoiseModel& noise, std::int64_t shots, bool exact,
                                     TomographyMethod method, SeededRng& rng) {
  if (exact) {
    if (!noise.is_deterministic()) {
      throw std::invalid_argument("exact mode needs a noise model without over-rotation");
    }
    const DensityMatrix out =
        apply_channel(DensityMatrix::pure(input_state(label)), seq, noise, rng);
    const auto counts = exact_counts(out, static_cast<double>(std::max<std::int64_t>(shots, 1)));
    return reconstruct_state(std::span<const SettingCounts>(counts), method);
  }
  const auto records = run_pulses(seq, label, noise, shots, rng);
  return reconstruct_state(std::span<const MeasurementRecord>(records), method);
}

}  // namespace detail

struct BenchmarkConfig {
  int n = 160;
  std::uint64_t seed = 0;
  NoiseModel noise;
  std::int64_t shots = 100;
  bool exact = false;
  TomographyMethod method = TomographyMethod::kMle;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct OperationResult {
  int index = 0;
  InputStateLabel input;
  Mat4 unitary;
  CircuitParams program;
  double fidelity = 0.0;
};

struct BenchmarkReport {
  BenchmarkConfig config;
  std::vector<OperationResult> operations;
  double mean = 0.0;
  double stddev = 0.0;                   // sample standard deviation
  std::array<double, 16> input_means{};  // indexed like all_input_labels()
  double input_mean_stddev = 0.0;
};

inline double sample_stddev(const std::vector<double>& x) {
  if (x.size() < 2) return 0.0;
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

/// Haar-random operations, each applied to one product input (every input
/// used equally often, order shuffled), followed by state tomography and a
/// fidelity against the ideal output.
inline BenchmarkReport run_benchmark(const BenchmarkConfig& config, const Tolerances& tol = {}) {
  if (config.n <= 0 || config.n % 16 != 0) {
    throw std::invalid_argument("benchmark: n must be a positive multiple of 16");
  }
  config.noise.validate();
  const SeededRng master(config.seed);

  std::vector<InputStateLabel> inputs;
  const auto labels = all_input_labels();
  for (int i = 0; i < config.n; ++i) inputs.push_back(labels[i % 16]);
  SeededRng assign = master.fork(kAssignmentStream);
  for (int i = config.n - 1; i > 0; --i) {
    std::swap(inputs[i], inputs[assign.below(static_cast<std::uint64_t>(i) + 1)]);
  }

  BenchmarkReport report;
  report.config = config;
  report.operations.resize(config.n);
  detail::parallel_for(config.n, config.threads, [&](int i) {
    SeededRng urng = master.fork(kUnitaryStream + static_cast<std::uint64_t>(i));
    SeededRng erng = master.fork(kExperimentStream + static_cast<std::uint64_t>(i));
    OperationResult& op = report.operations[i];
    op.index = i;
    op.input = inputs[i];
    op.unitary = sample_su4(urng);
    op.program = decompose(op.unitary, tol);
    const PulseSequence seq = lower_to_pulses(op.program);
    const DensityMatrix measured = detail::measured_output(seq, op.input, config.noise, config.shots,
                                                           config.exact, config.method, erng);
    const DensityMatrix ideal = DensityMatrix::pure(op.unitary * input_state(op.input));
    op.fidelity = state_fidelity(ideal, measured, tol);
  });

  std::vector<double> f;
  std::array<std::vector<double>, 16> by_input;
  for (const auto& op : report.operations) {
    f.push_back(op.fidelity);
    for (int k = 0; k < 16; ++k)
      if (labels[k] == op.input) by_input[k].push_back(op.fidelity);
  }
  for (double x : f) report.mean += x;
  report.mean /= static_cast<double>(f.size());
  report.stddev = sample_stddev(f);
  std::vector<double> means;
  for (int k = 0; k < 16; ++k) {
    double m = 0.0;
    for (double x : by_input[k]) m += x;
    report.input_means[k] = m / static_cast<double>(by_input[k].size());
    means.push_back(report.input_means[k]);
  }
  report.input_mean_stddev = sample_stddev(means);
  return report;
}

struct ProcessTomographyConfig {
  std::uint64_t seed = 0;
  NoiseModel noise;
  std::int64_t shots = 100;
  bool exact = false;
  TomographyMethod method = TomographyMethod::kMle;
  ProcessOptions options;
};

struct ProcessTomographyResult {
  CircuitParams program;
  ProcessMatrix ideal;
  ProcessMatrix measured;
  FidelityReport fidelity;
};

/// State tomography on the outputs of all 16 product inputs, then process reconstruction.
inline ProcessTomographyResult run_process_tomography(const Mat4& u,
                                                      const ProcessTomographyConfig& config,
                                                      const Tolerances& tol = {}) {
  config.noise.validate();
  const SeededRng master(config.seed);
  ProcessTomographyResult result;
  result.program = decompose(u, tol);
  const PulseSequence seq = lower_to_pulses(result.program);

  std::vector<std::pair<InputStateLabel, DensityMatrix>> per_input;
  const auto labels = all_input_labels();
  for (int a = 0; a < 16; ++a) {
    SeededRng rng = master.fork(kExperimentStream + static_cast<std::uint64_t>(a));
    per_input.emplace_back(labels[a], detail::measured_output(seq, labels[a], config.noise,
                                                              config.shots, config.exact,
                                                              config.method, rng));
  }
  result.ideal = process_matrix_of_unitary(u, tol);
  result.measured = reconstruct_process(per_input, config.options);
  result.fidelity = fidelity_report(result.ideal, result.measured, tol);
  return result;
}

}  // namespace su4c

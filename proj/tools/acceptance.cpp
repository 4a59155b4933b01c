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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "su4c.hpp"

namespace {

using namespace su4c;
using Clock = std::chrono::steady_clock;

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail, double seconds) {
  std::printf("[%s] %2d %-28s %s (%.2f s)\n", pass ? "PASS" : "FAIL", id, name, detail.c_str(), seconds);
  std::fflush(stdout);
  if (!pass) ++failures;
}

void info(const std::string& text) {
  std::printf("       info: %s\n", text.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

template <typename F>
double timed(F&& body) {
  const auto t0 = Clock::now();
  body();
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string data(const std::string& name) { return std::string(SU4C_DATA_DIR) + "/" + name; }

Mat4 load_matrix(const std::string& name) { return io::decode_mat4(io::read_json(data(name))); }
CircuitParams load_program(const std::string& name) {
  return io::decode_circuit(io::read_json(data(name)));
}

double max_elementwise(const Mat4& a, const Mat4& b) { return (a - b).cwiseAbs().maxCoeff(); }

Mat4 random_density(SeededRng& rng, int rank) {
  Eigen::Matrix<Complex, 4, Eigen::Dynamic> g(4, rank);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < rank; ++k) g(i, k) = Complex(rng.normal(), rng.normal());
  Mat4 rho = g * g.adjoint();
  return rho / rho.trace();
}

Mat2 random_su2(SeededRng& rng) {
  return rz_matrix(rng.uniform() * kTwoPi) * r_matrix(rng.uniform() * kTwoPi, rng.uniform() * kTwoPi);
}

Mat4 random_local(SeededRng& rng) {
  const Mat2 a = random_su2(rng);
  return kron(a, random_su2(rng));
}

/// Mixture of Haar unitary channels with a depolarizing admixture.
ProcessMatrix random_channel(SeededRng& rng) {
  double w[4];
  double total = 0.0;
  for (double& x : w) total += (x = -std::log(1.0 - rng.uniform()));
  ProcessMatrix::Storage e = ProcessMatrix::Storage::Zero();
  for (int k = 0; k < 3; ++k) e += (w[k] / total) * process_matrix_of_unitary(sample_su4(rng)).matrix();
  for (int i = 0; i < 4; ++i) e.block<4, 4>(4 * i, 4 * i) += (w[3] / total) * Mat4::Identity() / 4.0;
  return ProcessMatrix(e);
}

void criterion1() {
  const Mat4 u = load_matrix("U.json");
  double worst = 0.0;
  const double s = timed([&] {
    for (const char* row : {"program_U_row1.json", "program_U_row2.json"}) {
      worst = std::max(worst, max_elementwise(circuit_to_unitary(load_program(row)), u));
    }
  });
  report(1, "reference-rows", worst < 5e-3 && s < 1.0,
         fmt("max elementwise error %.2e (limit 5e-3, runtime limit 1 s)", worst), s);
}

void criterion2() {
  double worst = 0.0, worst_unit = 0.0, worst_pid = 0.0;
  const double s = timed([&] {
    for (const char* id : {"a", "b", "c", "d"}) {
      const Mat4 u = load_matrix(std::string("U_") + id + ".json");
      CircuitParams p = load_program(std::string("program_U_") + id + ".json");
      worst = std::max(worst, max_elementwise(circuit_to_unitary(p), u));
      worst_pid = std::max(worst_pid, phase_invariant_distance(u, circuit_to_unitary(p)));
      p.global_phase = 1.0;
      worst_unit = std::max(worst_unit, max_elementwise(circuit_to_unitary(p), u));
    }
  });
  report(2, "four-matrix-rows", worst < 5e-3,
         fmt("max elementwise error %.2e with printed phases (i, -i, i, -i) (limit 5e-3)", worst), s);
  info(fmt("same rows with global phase +1: max elementwise error %.2e; "
           "phase-invariant distance %.2e",
           worst_unit, worst_pid));
}

void criterion3() {
  double worst = 0.0;
  int count = 0;
  const double s = timed([&] {
    SeededRng rng(3);
    std::vector<Mat4> cases;
    for (int i = 0; i < 1000; ++i) cases.push_back(sample_su4(rng));
    const Mat4 g = gate_matrix(GGate{});
    cases.push_back(Mat4::Identity());
    cases.push_back(g);
    cases.push_back(g * g);
    cases.push_back(g.adjoint());
    Mat4 swap = Mat4::Zero();
    swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
    cases.push_back(swap);
    Mat4 cnot = Mat4::Zero();
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
    cases.push_back(cnot);
    for (int i = 0; i < 20; ++i) {
      const Mat4 a = random_local(rng);
      cases.push_back(a);
      cases.push_back(a * g * random_local(rng));
    }
    for (const Mat4& u : cases) {
      worst = std::max(worst, phase_invariant_distance(u, circuit_to_unitary(decompose(u))));
      ++count;
    }
  });
  report(3, "compiler-round-trip", worst < 1e-9 && s < 30.0,
         fmt("%.0f matrices, worst phase-invariant distance %.2e (limit 1e-9, runtime limit 30 s)", count, worst),
         s);
}

void criterion4() {
  double worst = 0.0;
  const double s = timed([&] {
    SeededRng rng(4);
    for (int i = 0; i < 500; ++i) {
      const Mat4 u = sample_su4(rng);
      const Mat4 dressed = random_local(rng) * u * random_local(rng);
      const auto a = local_invariants(u);
      const auto b = local_invariants(dressed);
      for (int k = 0; k < 4; ++k) {
        worst = std::max(worst, std::abs(std::remainder(a[k] - b[k], kTwoPi)));
      }
    }
  });
  report(4, "local-invariance", worst < 1e-8, fmt("500 dressed pairs, worst invariant gap %.2e (limit 1e-8)", worst), s);
}

void criterion5() {
  double worst = 0.0;
  bool same_shape = true;
  std::size_t pulses = 0;
  const double s = timed([&] {
    SeededRng rng(5);
    for (int i = 0; i < 1000; ++i) {
      const double theta = rng.uniform() * kTwoPi;
      const double phi = rng.uniform() * kTwoPi;
      PulseSequence seq;
      detail::push_lowered_r(seq, theta, phi, 0);
      Mat2 product = Mat2::Identity();
      for (const auto& g : seq.pulses()) {
        product = (std::holds_alternative<RGate>(g) ? gate_matrix(std::get<RGate>(g))
                                                    : gate_matrix(std::get<RzGate>(g))) *
                  product;
      }
      worst = std::max(worst, max_abs(product - r_matrix(theta, phi)));
    }
    // Layout signature: gate kind and target of every pulse, in time order.
    const auto layout = [](const PulseSequence& seq) {
      std::string sig;
      for (const auto& g : seq.pulses()) {
        if (const auto* r = std::get_if<RGate>(&g)) sig += "R" + std::to_string(r->target);
        else if (const auto* z = std::get_if<RzGate>(&g)) sig += "Z" + std::to_string(z->target);
        else sig += "G";
      }
      return sig;
    };
    std::string first;
    for (int i = 0; i < 200; ++i) {
      const PulseSequence seq = lower_to_pulses(decompose(sample_su4(rng)));
      if (first.empty()) first = layout(seq);
      same_shape = same_shape && layout(seq) == first;
      pulses = seq.size();
    }
  });
  report(5, "pulse-lowering", worst < 1e-10 && same_shape,
         fmt("1000 rotations, worst error %.2e (limit 1e-10); ", worst) +
             (same_shape ? "identical" : "DIFFERENT") +
             fmt(" pulse layout (%.0f pulses) across 200 compiled circuits", double(pulses)),
         s);
}

void criterion6() {
  double worst_state = 0.0, worst_process = 0.0;
  const double s = timed([&] {
    SeededRng rng(6);
    for (int i = 0; i < 1000; ++i) {
      const Mat4 rho = random_density(rng, 1 + i % 4);
      const auto counts = exact_counts(DensityMatrix::checked(rho));
      worst_state = std::max(worst_state, max_abs(reconstruct_state_linear(counts).matrix() - rho));
    }
    const auto labels = all_input_labels();
    for (int i = 0; i < 100; ++i) {
      const Mat4 u = sample_su4(rng);
      std::vector<std::pair<InputStateLabel, DensityMatrix>> outputs;
      for (const auto& l : labels) outputs.emplace_back(l, DensityMatrix::pure(u * input_state(l)));
      const ProcessMatrix e = reconstruct_process(outputs);
      worst_process = std::max(worst_process, max_abs(e.matrix() - process_matrix_of_unitary(u).matrix()));
    }
  });
  report(6, "tomography-oracle", worst_state < 1e-9 && worst_process < 1e-9,
         fmt("state worst %.2e, process worst %.2e (limit 1e-9)", worst_state, worst_process), s);
}

void criterion7() {
  double worst_rel = 0.0, worst_tr = 0.0, worst_dep = 0.0;
  const double s = timed([&] {
    SeededRng rng(7);
    for (int i = 0; i < 50; ++i) {
      const ProcessMatrix ideal = process_matrix_of_unitary(sample_su4(rng));
      const ProcessMatrix exp = random_channel(rng);
      const auto r = fidelity_report(ideal, exp);
      worst_rel = std::max(worst_rel, std::abs(r.relation_residual()));
    }
    for (int i = 0; i < 100; ++i) {
      const Mat4 u = sample_su4(rng);
      const Mat4 v = sample_su4(rng);
      const double f = entanglement_fidelity(process_matrix_of_unitary(u), process_matrix_of_unitary(v));
      worst_tr = std::max(worst_tr, std::abs(f - std::norm((u.adjoint() * v).trace()) / 16.0));
    }
    for (int i = 0; i < 50; ++i) {
      const Mat4 u = sample_su4(rng);
      const auto r = fidelity_report(process_matrix_of_unitary(u), depolarized_process(u, rng.uniform()));
      worst_dep = std::max(worst_dep, std::abs(r.relation_residual()));
    }
  });
  report(7, "fidelity-identities", worst_rel < 1e-9 && worst_tr < 1e-9,
         fmt("f_bar vs (4F+1)/5 worst %.2e; F vs |Tr(U'V)|^2/16 worst %.2e (limit 1e-9)", worst_rel,
             worst_tr),
         s);
  info(fmt("36 product states, ideal unitary vs depolarized copy: worst f_bar gap %.2e", worst_dep));
}

void criterion8() {
  BenchmarkConfig c;
  c.n = 160;
  c.seed = 8;
  BenchmarkReport low, high;
  const double s = timed([&] {
    c.shots = 100;
    low = run_benchmark(c);
    c.shots = 10000;
    high = run_benchmark(c);
  });
  const bool pass = low.stddev >= 0.02 && low.stddev <= 0.05 && high.stddev < 0.01 &&
                    high.mean > low.mean && s < 300.0;
  report(8, "shot-noise-statistics", pass,
         fmt("MLE, 100 shots: mean %.4f std %.4f (band [0.02, 0.05]); 10^4 shots: mean %.4f std %.4f (limit 0.01)",
             low.mean, low.stddev, high.mean, high.stddev),
         s);
  c.shots = 100;
  c.method = TomographyMethod::kLinear;
  const BenchmarkReport lin = run_benchmark(c);
  info(fmt("linear inversion, 100 shots: mean %.4f std %.4f", lin.mean, lin.stddev));
}

void criterion9() {
  const double f = mean_fidelity_from_entanglement(0.73);
  report(9, "reported-fidelity-consistency", std::abs(f - 0.784) < 1e-12 && f >= 0.77 && f <= 0.81,
         fmt("(4*0.73+1)/5 = %.4f (interval [0.77, 0.81])", f), 0.0);
}

void criterion10() {
  double moment = 0.0;
  bool deterministic = true;
  const double s = timed([&] {
    SeededRng rng(10);
    const int n = 100000;
    for (int i = 0; i < n; ++i) moment += std::norm(sample_su4(rng).trace());
    moment /= n;
    SeededRng a(1234), b(1234);
    for (int i = 0; i < 100; ++i) deterministic = deterministic && sample_su4(a) == sample_su4(b);
  });
  report(10, "haar-moment", std::abs(moment - 1.0) <= 0.03 && deterministic,
         fmt("E|Tr U|^2 = %.4f (band 1 +/- 0.03); ", moment) +
             (deterministic ? "identical draws under a fixed seed" : "NON-DETERMINISTIC"),
         s);
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                    criterion5, criterion6, criterion7, criterion8,
                                                    criterion9, criterion10};
  for (const auto& c : criteria) {
    try {
      c();
    } catch (const std::exception& e) {
      std::printf("[FAIL] criterion threw: %s\n", e.what());
      ++failures;
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

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

#include <gtest/gtest.h>

#include "support.hpp"

namespace su4c {
namespace {

using testing::expm_g;
using testing::expm_r;
using testing::load_matrix;
using testing::load_program;
using testing::max_diff;

TEST(Gates, ElementaryGatesAreUnitary) {
  SeededRng rng(1);
  for (int i = 0; i < 100; ++i) {
    EXPECT_LT(unitarity_error(gate_matrix(make_r(rng.uniform() * 7, rng.uniform() * 7, 0))), 1e-14);
    EXPECT_LT(unitarity_error(gate_matrix(make_rz(rng.uniform() * 7, 1))), 1e-14);
  }
  EXPECT_LT(unitarity_error(gate_matrix(GGate{})), 1e-15);
}

TEST(Gates, GMatchesExponentialAndPrintedDiagonal) {
  const Mat4 g = gate_matrix(GGate{});
  EXPECT_LT(max_diff(g, expm_g()), 1e-14);
  const Vec4 printed(1.0, -kI, -kI, 1.0);
  EXPECT_LT(max_diff(g, Mat4(printed.asDiagonal())), 1e-15);
  EXPECT_NEAR(std::abs(g.determinant() + 1.0), 0.0, 1e-15);
}

TEST(Gates, TargetValidation) {
  EXPECT_THROW(make_r(1.0, 0.0, 2), std::invalid_argument);
  EXPECT_THROW(make_rz(1.0, -1), std::invalid_argument);
}

TEST(Gates, EmbeddingActsOnTheNamedQubit) {
  const Mat2 r = expm_r(0.7, 1.3);
  EXPECT_LT(max_diff(embed(make_r(0.7, 1.3, 0)), kron(r, Mat2::Identity())), 1e-13);
  EXPECT_LT(max_diff(embed(make_r(0.7, 1.3, 1)), kron(Mat2::Identity(), r)), 1e-13);
}

TEST(Gates, MagicBasisMakesLocalGatesRealOrthogonal) {
  SeededRng rng(2);
  const Mat4 lambda = magic_basis();
  EXPECT_LT(unitarity_error(lambda), 1e-15);
  for (int i = 0; i < 200; ++i) {
    const Mat4 m = to_magic(testing::random_local(rng));
    EXPECT_LT(max_abs(Mat4(m.imag().cast<Complex>())), 1e-12);
    EXPECT_NEAR(m.real().determinant(), 1.0, 1e-12);
    EXPECT_LT(max_diff(from_magic(m), lambda * m * lambda.adjoint()), 1e-12);
  }
}

TEST(Gates, CanonicalVExamples) {
  EXPECT_LT(max_diff(canonical_v({0, 0, 0}), Mat4::Identity()), 1e-15);
  SeededRng rng(3);
  for (int i = 0; i < 200; ++i) {
    const ClassParams p{rng.uniform() * kTwoPi, rng.uniform() * kTwoPi, rng.uniform() * kTwoPi};
    const Mat4 v = canonical_v(p);
    EXPECT_LT(unitarity_error(v), 1e-13);
    EXPECT_LT(std::abs(v.determinant() - 1.0), 1e-12);
  }
}

/// Sorted phases of the eigenvalues of (Λ†VΛ)(Λ†VΛ)ᵀ, from Eigen's general solver.
std::array<double, 4> vvt_phases(const Mat4& v) {
  const Mat4 m = to_magic(v);
  Eigen::ComplexEigenSolver<Mat4> es(m * m.transpose());
  std::array<double, 4> out;
  for (int k = 0; k < 4; ++k) out[k] = std::arg(es.eigenvalues()(k));
  std::sort(out.begin(), out.end());
  return out;
}

TEST(Gates, EntanglingCoreHasClassEigenphases) {
  SeededRng rng(4);
  for (int i = 0; i < 500; ++i) {
    const ClassParams p{rng.uniform() * kTwoPi, rng.uniform() * kTwoPi, rng.uniform() * kTwoPi};
    const Mat4 v = entangling_core(p);
    EXPECT_LT(std::abs(v.determinant() - 1.0), 1e-12);
    auto expected = p.eigenphases();
    for (double& x : expected) x = std::arg(std::polar(1.0, x));
    std::sort(expected.begin(), expected.end());
    const auto got = vvt_phases(v);
    for (int k = 0; k < 4; ++k) {
      EXPECT_LT(std::abs(std::remainder(got[k] - expected[k], kTwoPi)), 1e-9) << i;
    }
    const auto canon = vvt_phases(canonical_v(p));
    for (int k = 0; k < 4; ++k) EXPECT_LT(std::abs(std::remainder(got[k] - canon[k], kTwoPi)), 1e-9);
  }
}

TEST(Gates, EntanglingCoreAtOriginIsLocal) {
  const Mat4 v = entangling_core({0, 0, 0});
  EXPECT_LT(phase_invariant_distance(v, kron(Mat2::Identity(), expm_r(kPi / 2, 0.0))), 1e-12);
}

TEST(Gates, NormalizedFoldsAnglesAndTracksSign) {
  SeededRng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const RotationParams p{rng.uniform() * 40 - 20, rng.uniform() * 40 - 20, rng.uniform() * 40 - 20,
                           i % 2 ? 1 : -1};
    const RotationParams n = normalized(p);
    EXPECT_LT(max_abs(n.matrix() - p.matrix()), 1e-12);
    EXPECT_GE(n.theta, 0.0);
    EXPECT_LT(n.theta, kTwoPi);
    EXPECT_GE(n.phiz, 0.0);
    EXPECT_LT(n.phiz, kTwoPi);
  }
}

TEST(Gates, PrintedRowsReproduceReferenceMatrix) {
  const Mat4 u = load_matrix("U.json");
  for (const char* row : {"program_U_row1.json", "program_U_row2.json"}) {
    EXPECT_LT(max_diff(circuit_to_unitary(load_program(row)), u), 5e-3) << row;
  }
  EXPECT_EQ(load_program("program_U_row1.json").global_phase, Complex(-1.0, 0.0));
  EXPECT_EQ(load_program("program_U_row2.json").global_phase, Complex(0.0, -1.0));
}

TEST(Gates, PrintedRowsForFourMatricesReproduceUpToGlobalPhase) {
  for (const char* id : {"a", "b", "c", "d"}) {
    const Mat4 u = load_matrix(std::string("U_") + id + ".json");
    CircuitParams p = load_program(std::string("program_U_") + id + ".json");
    EXPECT_LT(phase_invariant_distance(u, circuit_to_unitary(p)), 5e-3) << id;
    p.global_phase = 1.0;
    EXPECT_LT(max_diff(circuit_to_unitary(p), u), 5e-3) << id;
  }
}

TEST(Gates, LoweringIdentityHoldsForRandomRotations) {
  SeededRng rng(6);
  for (int i = 0; i < 1000; ++i) {
    const double t = rng.uniform() * kTwoPi;
    const double ph = rng.uniform() * kTwoPi;
    PulseSequence seq;
    detail::push_lowered_r(seq, t, ph, 1);
    EXPECT_LT(max_diff(seq.compose(), kron(Mat2::Identity(), expm_r(t, ph))), 1e-10);
  }
}

TEST(Gates, LoweredCircuitComposesExactly) {
  SeededRng rng(7);
  std::size_t size = 0;
  for (int i = 0; i < 300; ++i) {
    CircuitParams c;
    c.cls = {rng.uniform() * kTwoPi, rng.uniform() * kTwoPi, rng.uniform() * kTwoPi};
    for (RotationParams* p : {&c.a, &c.b, &c.c, &c.d}) {
      *p = {rng.uniform() * kTwoPi, rng.uniform() * kTwoPi, rng.uniform() * kTwoPi, i % 3 ? 1 : -1};
    }
    c.global_phase = std::polar(1.0, rng.uniform() * kTwoPi);
    const PulseSequence seq = lower_to_pulses(c);
    EXPECT_LT(max_diff(seq.compose(), circuit_to_unitary(c)), 1e-9);
    if (i == 0) size = seq.size();
    EXPECT_EQ(seq.size(), size);
    for (const auto& g : seq.pulses())
      if (const auto* r = std::get_if<RGate>(&g)) EXPECT_EQ(r->theta, kCalibratedTheta);
  }
  EXPECT_EQ(size, 27u);
}

TEST(Gates, PulseSequenceRejectsUncalibratedRotation) {
  PulseSequence seq;
  EXPECT_THROW(seq.push(make_r(0.3, 0.0, 0)), std::invalid_argument);
  EXPECT_NO_THROW(seq.push(make_r(kCalibratedTheta, 0.3, 0)));
  EXPECT_NO_THROW(seq.push(make_rz(0.3, 0)));
}

}  // namespace
}  // namespace su4c

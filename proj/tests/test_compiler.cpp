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

using testing::load_matrix;
using testing::load_program;
using testing::random_local;

double gap(double a, double b) { return std::abs(std::remainder(a - b, kTwoPi)); }

TEST(Compiler, InvariantsOfIdentityAndG) {
  for (double x : local_invariants(Mat4::Identity())) EXPECT_NEAR(x, 0.0, 1e-12);
  // to_magic(G) = diag(1, 1, −i, −i), det −1; dividing by e^{iπ/4} and squaring
  // gives phases −π/2, −π/2, π/2, π/2.
  const auto g = local_invariants(gate_matrix(GGate{}));
  const std::array<double, 4> expected{-kPi / 2, -kPi / 2, kPi / 2, kPi / 2};
  for (int k = 0; k < 4; ++k) EXPECT_LT(gap(g[k], expected[k]), 1e-12);
}

TEST(Compiler, InvariantsOnTheMinusPiBranchLandOnPlusPi) {
  // Magic-diagonal (i, −i, 1, 1) has det 1 and u·uᵀ = diag(−1, −1, 1, 1).
  const Vec4 d(kI, -kI, 1.0, 1.0);
  const auto inv = local_invariants(from_magic(Mat4(d.asDiagonal())));
  EXPECT_DOUBLE_EQ(inv[3], kPi);
  EXPECT_NEAR(inv[0], 0.0, 1e-12);
}

TEST(Compiler, MismatchIgnoresGlobalPhaseBranch) {
  SeededRng rng(9);
  const Mat4 u = sample_su4(rng);
  for (int k = 0; k < 4; ++k) {
    EXPECT_LT(detail::invariant_mismatch(local_invariants(u), local_invariants(std::pow(kI, k) * u)), 1e-12);
  }
}

TEST(Compiler, InvariantsSortedOnPrincipalBranch) {
  SeededRng rng(1);
  for (int i = 0; i < 200; ++i) {
    const auto inv = local_invariants(sample_su4(rng));
    EXPECT_TRUE(std::is_sorted(inv.begin(), inv.end()));
    for (double x : inv) {
      EXPECT_GT(x, -kPi);
      EXPECT_LE(x, kPi);
    }
  }
}

TEST(Compiler, InvariantsUnchangedByLocalDressing) {
  SeededRng rng(2);
  for (int i = 0; i < 500; ++i) {
    const Mat4 u = sample_su4(rng);
    const auto a = local_invariants(u);
    const auto b = local_invariants(random_local(rng) * u * random_local(rng));
    for (int k = 0; k < 4; ++k) EXPECT_LT(gap(a[k], b[k]), 1e-8);
  }
}

TEST(Compiler, ClassParametersReproduceInvariants) {
  EXPECT_EQ(class_parameters(Mat4::Identity()), (ClassParams{0, 0, 0}));
  SeededRng rng(3);
  std::vector<Mat4> cases{gate_matrix(GGate{})};
  for (int i = 0; i < 1000; ++i) cases.push_back(sample_su4(rng));
  for (const Mat4& u : cases) {
    const ClassParams p = class_parameters(u);
    for (double x : {p.alpha, p.beta, p.delta}) {
      EXPECT_GE(x, 0.0);
      EXPECT_LT(x, kTwoPi);
    }
    const auto a = local_invariants(u);
    const auto b = local_invariants(canonical_v(p));
    EXPECT_LT(detail::invariant_mismatch(a, b), 1e-8);
  }
}

TEST(Compiler, GClassMatchesDerivedParameters) {
  // From sorted phases (−π/2, −π/2, π/2, π/2): α = −π/2 ≡ 3π/2, β = δ = 0.
  const ClassParams p = class_parameters(gate_matrix(GGate{}));
  EXPECT_NEAR(p.alpha, 3 * kPi / 2, 1e-12);
  EXPECT_NEAR(p.beta, 0.0, 1e-12);
  EXPECT_NEAR(p.delta, 0.0, 1e-12);
  EXPECT_LT(detail::invariant_mismatch(local_invariants(canonical_v(p)),
                                       local_invariants(gate_matrix(GGate{}))),
            1e-12);
}

TEST(Compiler, RoundTripHaar) {
  SeededRng rng(4);
  for (int i = 0; i < 1000; ++i) {
    const Mat4 u = std::polar(1.0, rng.uniform() * kTwoPi) * sample_su4(rng);
    const CircuitParams c = decompose(u);
    ASSERT_LT(max_abs(circuit_to_unitary(c) - u), 1e-9) << i;
  }
}

TEST(Compiler, RoundTripStructured) {
  SeededRng rng(5);
  const Mat4 g = gate_matrix(GGate{});
  Mat4 swap = Mat4::Zero();
  swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
  Mat4 cnot = Mat4::Zero();
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  std::vector<Mat4> cases{Mat4::Identity(), g, g.adjoint(), g * g, swap, cnot, swap * g,
                          Complex(0, 1) * Mat4::Identity()};
  for (int i = 0; i < 50; ++i) {
    cases.push_back(random_local(rng));
    cases.push_back(random_local(rng) * g * random_local(rng));
    cases.push_back(random_local(rng) * swap * random_local(rng));
    cases.push_back(kron(rz_matrix(rng.uniform() * kTwoPi), Mat2::Identity()));
  }
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const CircuitParams c = decompose(cases[i]);
    EXPECT_LT(max_abs(circuit_to_unitary(c) - cases[i]), 1e-9) << i;
  }
}

TEST(Compiler, OutputAnglesFollowTableFormat) {
  SeededRng rng(6);
  for (int i = 0; i < 200; ++i) {
    const CircuitParams c = decompose(sample_su4(rng));
    for (const RotationParams* p : {&c.a, &c.b, &c.c, &c.d}) {
      EXPECT_EQ(p->sign, 1);
      for (double x : {p->theta, p->phi, p->phiz}) {
        EXPECT_GE(x, 0.0);
        EXPECT_LT(x, kTwoPi);
      }
    }
    EXPECT_NEAR(std::abs(c.global_phase), 1.0, 1e-12);
  }
}

TEST(Compiler, Deterministic) {
  SeededRng rng(7);
  for (int i = 0; i < 50; ++i) {
    const Mat4 u = sample_su4(rng);
    const CircuitParams a = decompose(u);
    const CircuitParams b = decompose(u);
    EXPECT_EQ(a.cls, b.cls);
    EXPECT_EQ(a.a, b.a);
    EXPECT_EQ(a.d, b.d);
    EXPECT_EQ(a.global_phase, b.global_phase);
  }
}

TEST(Compiler, ReferenceMatrixCompiles) {
  const Mat4 u = load_matrix("U_unitary.json");
  const CircuitParams c = decompose(u);
  EXPECT_TRUE(verify(u, c).pass);
  EXPECT_LT(verify(u, c).distance, 1e-9);
  // The printed matrix itself agrees with the compiled circuit to its printed precision.
  EXPECT_LT(phase_invariant_distance(load_matrix("U.json"), circuit_to_unitary(c)), 2e-3);
}

TEST(Compiler, PrintedMatrixIsRejectedAsInputAtStrictTolerance) {
  EXPECT_THROW(decompose(load_matrix("U.json")), NonUnitaryError);
}

TEST(Compiler, VerifyDetectsWrongProgram) {
  SeededRng rng(8);
  for (int i = 0; i < 20; ++i) {
    const Mat4 u = sample_su4(rng);
    const Mat4 w = sample_su4(rng);
    const auto r = verify(u, decompose(w));
    EXPECT_FALSE(r.pass);
    EXPECT_GT(r.distance, 0.1);
  }
}

TEST(Compiler, VerifyPrintedRowAtPrintedPrecision) {
  Tolerances tol;
  tol.verify = 5e-3;
  const auto r = verify(load_matrix("U_a.json"), load_program("program_U_a.json"), tol);
  EXPECT_TRUE(r.pass) << r.distance;
  EXPECT_LT(r.invariant_error, 1e-2);
}

}  // namespace
}  // namespace su4c

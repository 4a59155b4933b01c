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

using testing::expm_r;
using testing::expm_rz;
using testing::random_su2;

TEST(Linalg, RotationMatricesMatchExponentials) {
  SeededRng rng(1);
  for (int i = 0; i < 200; ++i) {
    const double t = rng.uniform() * 4 * kPi - kTwoPi;
    const double p = rng.uniform() * 4 * kPi - kTwoPi;
    EXPECT_LT(max_abs(r_matrix(t, p) - expm_r(t, p)), 1e-13);
    EXPECT_LT(max_abs(rz_matrix(p) - expm_rz(p)), 1e-13);
  }
}

TEST(Linalg, WrapPhaseUsesHalfOpenBranch) {
  EXPECT_DOUBLE_EQ(wrap_phase(kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap_phase(-kPi), kPi);
  EXPECT_NEAR(wrap_phase(3 * kPi / 2), -kPi / 2, 1e-15);
  EXPECT_NEAR(normalize_angle(-0.5), kTwoPi - 0.5, 1e-15);
  EXPECT_GE(normalize_angle(-1e-18), 0.0);
  EXPECT_LT(normalize_angle(-1e-18), kTwoPi);
}

TEST(Linalg, SpecialUnitaryProjectionHasUnitDeterminant) {
  SeededRng rng(2);
  for (int i = 0; i < 100; ++i) {
    const Mat4 u = std::exp(Complex(0, rng.uniform() * 10)) * sample_su4(rng);
    const auto p = special_unitary_projection<4>(u);
    EXPECT_LT(std::abs(p.su.determinant() - 1.0), 1e-12);
    EXPECT_LT(max_abs(p.phase * p.su - u), 1e-12);
  }
}

TEST(Linalg, RequireUnitaryRejectsNonUnitary) {
  Mat4 m = Mat4::Identity();
  m(0, 0) = 1.001;
  EXPECT_THROW(require_unitary(m, 1e-8, "m"), NonUnitaryError);
  EXPECT_NO_THROW(require_unitary(Mat4::Identity(), 1e-8, "m"));
}

TEST(Linalg, Su2RoundTrip) {
  SeededRng rng(3);
  for (int i = 0; i < 10000; ++i) {
    Mat2 m = random_su2(rng);
    if (i % 2) m = -m;
    const RotationParams p = su2_params(m);
    ASSERT_LT(max_abs(p.matrix() - m), 1e-12) << i;
    ASSERT_GE(p.theta, 0.0);
    ASSERT_LE(p.theta, kPi + 1e-12);
    ASSERT_GE(p.phi, 0.0);
    ASSERT_LT(p.phi, kTwoPi);
    ASSERT_GE(p.phiz, 0.0);
    ASSERT_LT(p.phiz, kTwoPi);
  }
}

TEST(Linalg, Su2EdgeAngles) {
  for (const Mat2& m : {Mat2(Mat2::Identity()), Mat2(-Mat2::Identity()), Mat2(r_matrix(kPi, 0.3)),
                        Mat2(rz_matrix(1.1)), Mat2(rz_matrix(2.0) * r_matrix(kPi, 4.0))}) {
    const auto p = su2_params(m);
    EXPECT_LT(max_abs(p.matrix() - m), 1e-12);
  }
  EXPECT_EQ(su2_params(Mat2::Identity()).phi, 0.0);
}

TEST(Linalg, Su2RejectsNonSpecialUnitary) {
  EXPECT_THROW(su2_params(Complex(0, 1) * Mat2::Identity()), Error);
}

TEST(Linalg, JointDiagonalizationRandomUnitaries) {
  SeededRng rng(4);
  for (int i = 0; i < 300; ++i) {
    const Mat4 u = sample_su4(rng);
    const Mat4 w = u * u.transpose();
    const EigenSystem es = joint_real_diagonalization(w);
    const Mat4 o = es.vectors.cast<Complex>();
    EXPECT_LT(max_abs(es.vectors * es.vectors.transpose() - RealMat4::Identity()), 1e-10);
    EXPECT_NEAR(es.vectors.determinant(), 1.0, 1e-10);
    const Mat4 d = o.transpose() * w * o;
    for (int k = 0; k < 4; ++k) {
      EXPECT_LT(std::abs(d(k, k) - std::exp(Complex(0, es.phases[k]))), 1e-9);
      for (int l = 0; l < 4; ++l)
        if (l != k) EXPECT_LT(std::abs(d(k, l)), 1e-9);
    }
    EXPECT_TRUE(std::is_sorted(es.phases.begin(), es.phases.end()));
  }
}

TEST(Linalg, JointDiagonalizationOrthogonalConjugates) {
  SeededRng rng(5);
  for (int i = 0; i < 10000; ++i) {
    RealMat4 g;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) g(r, c) = rng.normal();
    const RealMat4 o = g.householderQr().householderQ();
    std::array<double, 4> s;
    for (double& x : s) x = (rng.uniform() * 2 - 1) * kPi;
    if (i % 3 == 1) s[1] = s[0];                      // 2-fold
    if (i % 3 == 2) s[1] = s[2] = s[3] = s[0];        // 4-fold
    Mat4 diag = Mat4::Zero();
    for (int k = 0; k < 4; ++k) diag(k, k) = std::exp(Complex(0, s[k]));
    const Mat4 w = o.cast<Complex>() * diag * o.transpose().cast<Complex>();
    const EigenSystem es = joint_real_diagonalization(w);
    Mat4 back = Mat4::Zero();
    for (int k = 0; k < 4; ++k) back(k, k) = std::exp(Complex(0, es.phases[k]));
    const Mat4 v = es.vectors.cast<Complex>();
    ASSERT_LT(max_abs(v * back * v.transpose() - w), 1e-9) << i;
    ASSERT_NEAR(es.vectors.determinant(), 1.0, 1e-10);
  }
}

TEST(Linalg, JointDiagonalizationRejectsNonSymmetric) {
  SeededRng rng(6);
  const Mat4 u = sample_su4(rng);
  EXPECT_THROW(joint_real_diagonalization(u), NotSymmetricError);
}

TEST(Linalg, FactorTensorProductInvertsKron) {
  SeededRng rng(7);
  for (int i = 0; i < 1000; ++i) {
    const Mat2 a = random_su2(rng);
    const Mat2 b = random_su2(rng);
    const Complex g = std::exp(Complex(0, rng.uniform() * kTwoPi));
    const Mat4 m = g * kron(a, b);
    const TensorFactors f = factor_tensor_product(m);
    ASSERT_LT(max_abs(f.phase * kron(f.a, f.b) - m), 1e-12);
    ASSERT_LT(std::abs(f.a.determinant() - 1.0), 1e-12);
    ASSERT_LT(std::abs(f.b.determinant() - 1.0), 1e-12);
  }
}

TEST(Linalg, FactorTensorProductRejectsEntangling) {
  const Mat4 g = gate_matrix(GGate{});
  EXPECT_THROW(factor_tensor_product(g), NotAProductError);
}

TEST(Linalg, PhaseInvariantDistanceIsPseudoMetric) {
  SeededRng rng(8);
  for (int i = 0; i < 100; ++i) {
    const Mat4 u = sample_su4(rng);
    const Mat4 v = sample_su4(rng);
    const Mat4 w = sample_su4(rng);
    const Complex g = std::exp(Complex(0, rng.uniform() * kTwoPi));
    EXPECT_LT(phase_invariant_distance(u, g * u), 1e-12);
    EXPECT_NEAR(phase_invariant_distance(u, v), phase_invariant_distance(v, u), 1e-12);
    EXPECT_LE(phase_invariant_distance(u, w),
              phase_invariant_distance(u, v) + phase_invariant_distance(v, w) + 1e-12);
    EXPECT_GT(phase_invariant_distance(u, v), 1e-3);
  }
}

TEST(Linalg, PhaseInvariantDistanceOrthogonalFallback) {
  // Tr(U†W) = 0: the optimal phase is found by scanning.
  const Mat4 u = Mat4::Identity();
  const Mat4 w = kron(pauli::z(), Mat2::Identity());
  EXPECT_NEAR(phase_invariant_distance(u, w), std::sqrt(2.0), 1e-3);
}

}  // namespace
}  // namespace su4c

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

#include <algorithm>
#include <vector>

#include "support.hpp"

namespace su4c {
namespace {

double mean_trace_moment(int n, std::uint64_t seed, bool fix_phases) {
  SeededRng rng(seed);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const Mat4 u = fix_phases ? sample_su4(rng) : detail::ginibre_qr(rng, false);
    sum += std::norm(u.trace());
  }
  return sum / n;
}

/// Two-sample Kolmogorov–Smirnov statistic.
double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return d;
}

TEST(Haar, TraceMomentIsOne) {
  EXPECT_NEAR(mean_trace_moment(100000, 10, true), 1.0, 0.03);
}

TEST(Haar, MissingPhaseCorrectionIsDetected) {
  // QR without the diagonal phase fix is biased; the moment test must catch it.
  EXPECT_GT(std::abs(mean_trace_moment(20000, 11, false) - 1.0), 0.3);
}

TEST(Haar, SamplesAreSpecialUnitary) {
  SeededRng rng(12);
  for (int i = 0; i < 1000; ++i) {
    const Mat4 u = sample_su4(rng);
    ASSERT_LT(unitarity_error(u), 1e-12);
    ASSERT_LT(std::abs(u.determinant() - 1.0), 1e-12);
  }
}

TEST(Haar, EntryModulusFollowsBetaOneThree) {
  // |U₀₀|² of a Haar unitary in dimension 4 has CDF 1 − (1 − x)³.
  SeededRng rng(13);
  const int n = 5000;
  std::vector<double> x;
  for (int i = 0; i < n; ++i) x.push_back(std::norm(sample_su4(rng)(0, 0)));
  std::sort(x.begin(), x.end());
  double d = 0.0;
  for (int i = 0; i < n; ++i) {
    const double cdf = 1.0 - std::pow(1.0 - x[i], 3);
    d = std::max({d, std::abs(cdf - double(i) / n), std::abs(cdf - double(i + 1) / n)});
  }
  EXPECT_LT(d, 1.95 / std::sqrt(double(n)));  // α = 0.001
}

TEST(Haar, LeftInvariance) {
  SeededRng rng(14);
  const Mat4 v = sample_su4(rng);
  const int n = 5000;
  std::vector<double> plain, shifted;
  for (int i = 0; i < n; ++i) {
    plain.push_back(std::real(sample_su4(rng).trace()));
    shifted.push_back(std::real((v * sample_su4(rng)).trace()));
  }
  EXPECT_LT(ks_two_sample(plain, shifted), 1.95 * std::sqrt(2.0 / n));
}

TEST(Haar, FixedSeedIsDeterministic) {
  SeededRng a(42), b(42), c(43);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const Mat4 x = sample_su4(a);
    EXPECT_EQ(x, sample_su4(b));
    differs = differs || !(x == sample_su4(c));
  }
  EXPECT_TRUE(differs);
}

TEST(Haar, ForksAreReproducibleAndDistinct) {
  const SeededRng master(7);
  SeededRng f1 = master.fork(3), f2 = master.fork(3), f3 = master.fork(4);
  const double a = f1.uniform();
  EXPECT_EQ(a, f2.uniform());
  EXPECT_NE(a, f3.uniform());
  SeededRng used(7);
  used.uniform();
  EXPECT_EQ(used.fork(3).uniform(), master.fork(3).uniform());
}

TEST(Haar, UniformAndBelowRanges) {
  SeededRng rng(15);
  std::array<int, 5> hist{};
  for (int i = 0; i < 50000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const auto k = rng.below(5);
    ASSERT_LT(k, 5u);
    ++hist[k];
  }
  for (int h : hist) EXPECT_NEAR(h, 10000, 500);
}

TEST(Haar, NormalMoments) {
  SeededRng rng(16);
  double s1 = 0, s2 = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    s1 += x;
    s2 += x * x;
  }
  EXPECT_NEAR(s1 / n, 0.0, 0.01);
  EXPECT_NEAR(s2 / n, 1.0, 0.01);
}

}  // namespace
}  // namespace su4c

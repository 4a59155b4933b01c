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

#include <cmath>
#include <cstdint>
#include <random>

#include "su4c/linalg.hpp"

namespace su4c {

/// Reproducible random stream: std::mt19937_64 (bit-exact by the standard),
/// 53-bit uniforms, Box–Muller normals. Child streams come from SplitMix64
/// over (seed, stream id), so forks are independent of consumption order.
class SeededRng {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64/splitmix64-fork/box-muller";

  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(kTwoPi * u2);
    has_spare_ = true;
    return r * std::cos(kTwoPi * u2);
  }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    // Rejection keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
  }

  SeededRng fork(std::uint64_t stream) const {
    return SeededRng(splitmix64(splitmix64(seed_) ^ splitmix64(stream + 0x632be59bd9b4e019ULL)));
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

namespace detail {

/// QR of a complex Ginibre matrix. With `fix_phases`, Q's columns are
/// rescaled by the phases of R's diagonal so Q is Haar distributed.
inline Mat4 ginibre_qr(SeededRng& rng, bool fix_phases) {
  Mat4 z;
  const double scale = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) z(i, j) = Complex(rng.normal(), rng.normal()) * scale;
  Eigen::HouseholderQR<Mat4> qr(z);
  Mat4 q = qr.householderQ();
  if (fix_phases) {
    const Mat4& r = qr.matrixQR();
    for (int j = 0; j < 4; ++j) q.col(j) *= r(j, j) / std::abs(r(j, j));
  }
  return q;
}

}  // namespace detail

/// Haar-random element of SU(4).
inline Mat4 sample_su4(SeededRng& rng) {
  return special_unitary_projection<4>(detail::ginibre_qr(rng, true)).su;
}

}  // namespace su4c

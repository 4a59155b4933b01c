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

// Numerical thresholds shared by every module. Each operation takes a
// `const Tolerances&` defaulting to these values so tests can pin them.

namespace su4c {

struct Tolerances {
  double unitary_tag = 1e-10;       // ‖M†M − I‖_max for values tagged unitary
  double unitary_input = 1e-8;      // rejection threshold for caller input
  double symmetric_input = 1e-8;    // ‖W − Wᵀ‖_max for joint diagonalization
  double special_unitary = 1e-9;    // |det − 1| for SU(2) parameter extraction
  double not_a_product = 1e-6;      // tensor-factor residual
  double reality = 1e-6;            // imaginary residue of magic-basis SO(4) factors
  double eigen_match = 1e-6;        // eigenvalue pairing between uuᵀ and vvᵀ
  double eigen_offdiag = 1e-8;      // acceptance of a joint diagonalizer
  double degenerate_phase = 1e-9;   // eigenphases closer than this sort as ties
  double branch = 1e-12;            // phases within this of −π are moved to +π
  double theta_edge = 1e-9;         // θ near 0 or π in SU(2) extraction
  double verify = 1e-6;             // circuit verification distance
  double density_input = 1e-9;      // Hermiticity/trace/positivity of channel input
  double density_invariant = 1e-10; // DensityMatrix invariants
  double eigen_clip = 1e-13;        // eigenvalues below this are treated as zero in sqrt
};

}  // namespace su4c

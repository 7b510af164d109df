// Copyright 2026 The qsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include "qsim/statevec.hpp"

namespace qsim {

enum class QftDirection { forward, inverse };

/// Gate list of the exact quantum Fourier transform on one register:
/// k Hadamards, k(k-1)/2 controlled phases with angles +-pi/2^m, and
/// floor(k/2) swaps realizing the bit reversal.
///
/// Forward convention: |j> -> 2^{-k/2} sum_l exp(+2*pi*i*j*l/2^k) |l>.
/// The inverse list is the reverse with negated phase angles.
std::vector<GateOp> qft_circuit(Register reg, QftDirection dir);

/// Applies qft_circuit gate by gate; acts as identity outside the register.
void apply_qft(StateVector& state, Register reg, QftDirection dir,
               GateCounts* tally = nullptr);

}  // namespace qsim

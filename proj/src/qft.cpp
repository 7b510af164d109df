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

#include "qsim/qft.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qsim {

std::vector<GateOp> qft_circuit(Register reg, QftDirection dir) {
    if (reg.width < 1) {
        throw RegisterOutOfRange("QFT register width must be >= 1");
    }
    const int k = reg.width;
    const int base = reg.start_qubit;
    std::vector<GateOp> gates;
    gates.reserve(static_cast<std::size_t>(k) + k * (k - 1) / 2 + k / 2);
    // Cascade from the top wire down. After it, output bit m sits on wire
    // k-1-m; the trailing swaps put the register back in little-endian order.
    for (int w = k - 1; w >= 0; --w) {
        gates.push_back(HadamardGate{base + w});
        for (int wp = w - 1; wp >= 0; --wp) {
            const double angle = std::numbers::pi / static_cast<double>(1 << (w - wp));
            gates.push_back(ControlledPhaseGate{base + wp, base + w, angle});
        }
    }
    for (int w = 0; w < k / 2; ++w) {
        gates.push_back(SwapGate{base + w, base + (k - 1 - w)});
    }
    if (dir == QftDirection::inverse) {
        std::reverse(gates.begin(), gates.end());
        for (GateOp& g : gates) {
            if (auto* cp = std::get_if<ControlledPhaseGate>(&g)) {
                cp->angle = -cp->angle;
            }
        }
    }
    return gates;
}

void apply_qft(StateVector& state, Register reg, QftDirection dir, GateCounts* tally) {
    require_register(state, reg);
    for (const GateOp& g : qft_circuit(reg, dir)) {
        apply_gate(state, g, tally);
    }
}

}  // namespace qsim

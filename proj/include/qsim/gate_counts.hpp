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

#include <cstdint>

namespace qsim {

/// Tally of elementary operations applied to a state. Evolution routines
/// accept an optional GateCounts* and increment it at the application site;
/// observable and sampling code never counts.
struct GateCounts {
    std::uint64_t hadamard = 0;
    std::uint64_t controlled_phase = 0;
    std::uint64_t swap = 0;
    std::uint64_t diagonal_phase = 0;  // one per diagonal sweep over the state
    std::uint64_t literal_term = 0;    // first-order I + i*sign*H*dt applications
    std::uint64_t exact_term = 0;      // exp(-i*H*dt) term applications

    GateCounts& operator+=(const GateCounts& o) {
        hadamard += o.hadamard;
        controlled_phase += o.controlled_phase;
        swap += o.swap;
        diagonal_phase += o.diagonal_phase;
        literal_term += o.literal_term;
        exact_term += o.exact_term;
        return *this;
    }
    friend bool operator==(const GateCounts&, const GateCounts&) = default;

    std::uint64_t total() const {
        return hadamard + controlled_phase + swap + diagonal_phase +
               literal_term + exact_term;
    }
};

}  // namespace qsim

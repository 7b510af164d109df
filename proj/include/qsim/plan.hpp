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

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "qsim/errors.hpp"

namespace qsim {

/// Stepping algorithm. Spin systems accept literal_paper, exact_term and
/// strang; particle systems accept lie and strang.
enum class StepAlgorithm {
    literal_paper,  // apply I + i*sign*H*dt/hbar per term (not unitary)
    exact_term,     // apply exp(-i*H*dt/hbar) per term
    strang,         // symmetrized sweep: half-step forward, half-step reversed
    lie,            // particles: kinetic sweep then potential phase
};

std::string to_string(StepAlgorithm mode);
StepAlgorithm step_algorithm_from_string(const std::string& s);

/// Time-stepping schedule shared by both problem families.
struct EvolutionPlan {
    double dt = 0.0;
    double total_time = 0.0;  // T; the realized T' = steps()*dt is reported
    StepAlgorithm mode = StepAlgorithm::exact_term;
    int literal_sign = +1;  // sign of the first-order step; +1 is the printed form
    std::int64_t sample_stride = 1;
    std::uint64_t seed = 1;
    std::uint64_t shots = 0;
    bool renormalize_after_step = false;  // literal mode only
    bool paper_literal_signs = false;     // particles: flip phase signs to +
    bool minimal_image = false;           // two-body separation wraps to [-L/2, L/2)

    /// round(T/dt), at least 1. Throws InvalidPlan on a non-positive dt or T.
    std::int64_t steps() const {
        if (!(dt > 0.0) || !(total_time > 0.0)) {
            throw InvalidPlan("plan needs dt > 0 and T > 0");
        }
        if (sample_stride < 1) {
            throw InvalidPlan("sample_stride must be >= 1");
        }
        const auto n = static_cast<std::int64_t>(std::llround(total_time / dt));
        if (n < 1) {
            throw InvalidPlan("round(T/dt) must be >= 1");
        }
        return n;
    }

    double realized_time() const { return static_cast<double>(steps()) * dt; }
};

/// One sampled point of an evolution: values holds the declared observables
/// in declaration order; densities (when captured) sit alongside.
struct TrajectoryRecord {
    std::int64_t step = 0;
    double t = 0.0;
    double norm = 1.0;
    std::vector<double> values;
    std::vector<std::vector<double>> densities;  // one per density observable
};

struct Trajectory {
    std::vector<std::string> labels;          // one per scalar value column
    std::vector<std::string> density_labels;  // one per captured density
    std::vector<TrajectoryRecord> records;
};

}  // namespace qsim

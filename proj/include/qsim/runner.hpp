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
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qsim/oracle.hpp"
#include "qsim/particle_sim.hpp"
#include "qsim/particle_system.hpp"
#include "qsim/plan.hpp"
#include "qsim/spin_sim.hpp"
#include "qsim/spin_system.hpp"
#include "qsim/statevec.hpp"

namespace qsim {

enum class ProblemType { spins, particles };

enum class InitKind { basis, amplitudes, wavepackets };

/// Optional embedded checks evaluated after a run; a failed bound flips the
/// run's tolerance verdict (CLI exit 3) without aborting the evolution.
struct Tolerances {
    std::optional<double> norm_drift_max;       // bound on |final norm - 1|
    std::optional<double> oracle_fidelity_min;  // dense-oracle overlap floor
};

/// Fully validated problem: one system family, an initial state recipe, a
/// stepping plan, the declared observables and the tolerance block.
struct Problem {
    ProblemType type = ProblemType::spins;
    SpinSystem spins;
    ParticleSystem particles;
    PotentialSpec potentials;
    EvolutionPlan plan;

    InitKind init_kind = InitKind::basis;
    std::uint64_t basis_index = 0;
    std::vector<cplx> init_amplitudes;
    WavepacketSpec packets;

    bool record_term_expectations = false;
    bool record_density = false;
    Tolerances tolerances;

    nlohmann::json config_echo;

    int num_qubits() const {
        return type == ProblemType::spins ? spins.num_spins : particles.total_qubits();
    }
    double hbar() const {
        return type == ProblemType::spins ? spins.hbar : particles.hbar;
    }
};

/// QSIM_CAP_QUBITS (positive integer) when set, else the default cap.
int effective_qubit_cap();

/// Parses and fully validates one config document. Unknown keys anywhere in
/// the document are a hard ParseError; invariant violations surface as
/// ValidationError (or the more specific error the violated invariant names).
Problem parse_problem(const nlohmann::json& config);

/// Reads the file, parses JSON (ParseError is position-annotated), then
/// defers to parse_problem.
Problem load_problem(const std::string& path);

StateVector initial_state(const Problem& problem, int cap = kDefaultQubitCap);

struct RunOutcome {
    nlohmann::json report;
    Trajectory trajectory;
    bool tolerances_ok = true;
};

/// Evolves the problem per its plan and assembles the full report:
/// trajectory, gate counts, realized time, optional histogram, tolerance
/// verdicts, config echo and the rng id. Deterministic for a fixed seed
/// apart from the timestamp field.
RunOutcome run(const Problem& problem, int cap = kDefaultQubitCap);

/// Runs the problem at dt, dt/2, ..., dt/2^halvings and reports the 2-norm
/// distance to the dense-oracle propagator at each run's realized time,
/// with consecutive error ratios and observed orders.
nlohmann::json convergence_sweep(const Problem& problem, int halvings,
                                 int cap = kDefaultQubitCap,
                                 int cap_dense = oracle::kDenseCap);

/// Closed-form per-step gate counts for the problem's plan next to the
/// instrumented totals of an actual run; "match" requires exact equality.
nlohmann::json gate_census(const Problem& problem, int cap = kDefaultQubitCap);

/// Per-step closed form behind the census, exposed for table builders.
GateCounts predicted_counts_per_step(const Problem& problem);

nlohmann::json gate_counts_json(const GateCounts& counts);

/// step,t,norm,<one column per observable>; doubles at full round-trip
/// precision. Densities are report-only and never enter the CSV.
std::string trajectory_csv(const Trajectory& trajectory);

}  // namespace qsim

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

#include "qsim/gate_counts.hpp"
#include "qsim/plan.hpp"
#include "qsim/spin_system.hpp"
#include "qsim/statevec.hpp"

namespace qsim {

Mat2 pauli_matrix(Pauli p);

/// exp(-i*theta*P) with theta = coefficient*dt/hbar, via
/// cos(theta)*I - i*sin(theta)*P (P^2 = I for any Pauli product).
/// The 4x4 form indexes sites[0] on local bit 0, sites[1] on bit 1.
Mat2 term_unitary_exact_1(const PauliTerm& term, double dt, double hbar);
Mat4 term_unitary_exact_2(const PauliTerm& term, double dt, double hbar);

/// One exact per-term step on the term's site block.
void apply_term_exact(StateVector& state, const PauliTerm& term, double dt,
                      double hbar, GateCounts* tally = nullptr);

/// First-order step applied verbatim: psi += i*sign*(coefficient*dt/hbar)*P psi.
/// Not unitary; one application multiplies norm^2 by exactly
/// 1 + (coefficient*dt/hbar)^2.
void term_step_literal(StateVector& state, const PauliTerm& term, double dt,
                       double hbar, int sign, GateCounts* tally = nullptr);

/// One sweep over all terms in listed order. strang sweeps forward at dt/2
/// then in reverse order at dt/2. renormalize rescales to unit norm after
/// the sweep (meaningful in literal mode only).
void trotter_step(StateVector& state, const SpinSystem& system, double dt,
                  StepAlgorithm mode, int literal_sign = +1,
                  bool renormalize = false, GateCounts* tally = nullptr);

/// Coefficient-free <psi|P|psi>. Requires a normalized state; the imaginary
/// part must be below 1e-10 and is discarded.
double expectation_pauli(const StateVector& state, const PauliTerm& term);

/// sum_j coefficient_j * <P_j>.
double expectation_energy(const StateVector& state, const SpinSystem& system);

struct SpinRunResult {
    Trajectory trajectory;
    GateCounts counts;
};

/// Advances the state through round(T/dt) Trotter steps, recording
/// [Z0..Z{N-1}, energy] at t = 0 and at every sample_stride-th step
/// (trajectory length floor(steps/stride) + 1). record_term_expectations adds
/// one coefficient-free <P_j> column per Hamiltonian term. Observables are
/// taken on a normalized copy; the norm column carries the raw norm.
SpinRunResult evolve_spins(StateVector& state, const SpinSystem& system,
                           const EvolutionPlan& plan,
                           bool record_term_expectations = false);

}  // namespace qsim

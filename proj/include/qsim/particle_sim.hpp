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

#include "qsim/gate_counts.hpp"
#include "qsim/particle_system.hpp"
#include "qsim/plan.hpp"
#include "qsim/qft.hpp"
#include "qsim/statevec.hpp"

namespace qsim {

/// x = j * L / 2^k.
double position_of_index(const ParticleSystem& system, std::uint64_t j);

/// p = (2*pi*hbar/L) * s with s = l for l < 2^{k-1}, s = l - 2^k otherwise.
double momentum_of_index(const ParticleSystem& system, std::uint64_t l);

/// Product state of per-particle Gaussian packets, normalized per register.
/// Throws UnresolvableWidth if any width < 2*dx; warns on stderr when a
/// packet's box-edge tail exceeds 1e-8 of its peak.
StateVector prepare_product_wavepackets(const ParticleSystem& system,
                                        const WavepacketSpec& spec,
                                        int cap = kDefaultQubitCap);

/// psi <- QFT_i^{-1} . diag(exp(i*s*dt*p^2/(2*m_i*hbar))) . QFT_i . psi with
/// s = -1 (physical) or +1 when paper_signs is set.
void kinetic_phase_step(StateVector& state, const ParticleSystem& system,
                        int particle, double dt, bool paper_signs = false,
                        GateCounts* tally = nullptr);

/// One diagonal sweep exp(i*s*dt*V/hbar) per potential entry, one-body
/// entries first, then two-body, each in listed order.
void potential_phase_step(StateVector& state, const ParticleSystem& system,
                          const PotentialSpec& potentials, double dt,
                          bool minimal_image = false, bool paper_signs = false,
                          GateCounts* tally = nullptr);

/// lie: kinetic sweep over particles 0..N-1 at dt, then potential at dt.
/// strang: kinetic sweep at dt/2, potential at dt, kinetic sweep at dt/2.
void split_step(StateVector& state, const ParticleSystem& system,
                const PotentialSpec& potentials, double dt, StepAlgorithm mode,
                bool minimal_image = false, bool paper_signs = false,
                GateCounts* tally = nullptr);

struct ParticleMoments {
    double x_mean = 0.0;
    double x_sq = 0.0;
    double p_mean = 0.0;
    double p_sq = 0.0;
    std::vector<double> density;  // 2^k position marginals
};

/// Position moments from register marginals; momentum moments from an
/// inverse-QFT-transformed copy (the analysis direction under the forward
/// e^{+2*pi*i} convention). Requires a normalized state.
std::vector<ParticleMoments> particle_observables(const StateVector& state,
                                                  const ParticleSystem& system);

struct ParticleRunResult {
    Trajectory trajectory;
    GateCounts counts;
};

/// Advances through round(T/dt) split steps, recording per-particle
/// [x_i, x2_i, p_i, p2_i] (labels "x_0", "x2_0", "p_0", "p2_0", ...) at t = 0
/// and at every sample_stride-th step (trajectory length
/// floor(steps/stride) + 1). Position densities are captured alongside when
/// record_density is set.
ParticleRunResult evolve_particles(StateVector& state, const ParticleSystem& system,
                                   const PotentialSpec& potentials,
                                   const EvolutionPlan& plan,
                                   bool record_density = false);

}  // namespace qsim

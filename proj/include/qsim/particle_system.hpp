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
#include <vector>

#include "qsim/errors.hpp"
#include "qsim/statevec.hpp"

namespace qsim {

/// N distinguishable particles on a 1D grid of 2^k points spanning [0, L).
/// Particle i owns the qubit register [i*k, (i+1)*k).
struct ParticleSystem {
    int num_particles = 1;
    int qubits_per_particle = 1;
    double box_length = 1.0;
    std::vector<double> masses;  // one per particle
    double hbar = 1.0;

    std::uint64_t grid_points() const { return std::uint64_t{1} << qubits_per_particle; }
    double dx() const { return box_length / static_cast<double>(grid_points()); }
    int total_qubits() const { return num_particles * qubits_per_particle; }
    Register register_of(int particle) const {
        return Register{particle * qubits_per_particle, qubits_per_particle};
    }
};

enum class PotentialKind { harmonic, polynomial, coulomb_soft, tabulated };

/// One potential function. Field use by kind:
///   harmonic:     0.5 * stiffness * (u - center)^2
///   polynomial:   sum_n coefficients[n] * u^n
///   coulomb_soft: strength / sqrt((u - center)^2 + softening^2), softening > 0
///   tabulated:    table lookup; one-body tables hold 2^k values indexed by
///                 grid index, two-body tables hold 2^{k+1}-1 values indexed
///                 by j_a - j_b + 2^k - 1
/// where u is the position (one-body) or the separation x_a - x_b (two-body;
/// center is then a separation offset, normally 0).
struct PotentialTerm {
    PotentialKind kind = PotentialKind::harmonic;
    double center = 0.0;
    double stiffness = 0.0;
    std::vector<double> coefficients;
    double strength = 0.0;
    double softening = 0.0;
    std::vector<double> table;
};

struct OneBodyPotential {
    int particle = 0;
    PotentialTerm term;
};

struct TwoBodyPotential {
    int particle_a = 0;
    int particle_b = 0;  // distinct from particle_a
    PotentialTerm term;
};

struct PotentialSpec {
    std::vector<OneBodyPotential> one_body;
    std::vector<TwoBodyPotential> two_body;
};

/// Gaussian packet exp(-(x-center)^2/(4*width^2)) * exp(i*momentum*x/hbar).
struct Wavepacket {
    double center = 0.0;
    double momentum = 0.0;
    double width = 0.0;
};

/// One packet per particle, in particle order.
struct WavepacketSpec {
    std::vector<Wavepacket> packets;
};

/// Throw ValidationError naming the violated invariant. Potential validation
/// needs the grid size for table-length checks.
void validate(const ParticleSystem& system, int cap = kDefaultQubitCap);
void validate(const PotentialTerm& term, const ParticleSystem& system, bool two_body);
void validate(const PotentialSpec& potentials, const ParticleSystem& system);
void validate(const WavepacketSpec& spec, const ParticleSystem& system);

/// Smooth potential value at position/separation u; tabulated terms are
/// index-based and rejected here (ValidationError).
double potential_value(const PotentialTerm& term, double u);

}  // namespace qsim

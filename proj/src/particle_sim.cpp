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

#include "qsim/particle_sim.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <string>
#include <utility>

namespace qsim {

namespace {

constexpr double kNormTol = 1e-6;
constexpr double kTailWarnRatio = 1e-8;

double phase_sign(bool paper_signs) { return paper_signs ? +1.0 : -1.0; }

void require_particle(const ParticleSystem& system, int particle) {
    if (particle < 0 || particle >= system.num_particles) {
        throw IndexOutOfRange("particle " + std::to_string(particle) + " outside 0.." +
                              std::to_string(system.num_particles - 1));
    }
}

double wrap_separation(double r, double box_length) {
    // Raw separations live in (-L, L); one shift lands in [-L/2, L/2).
    if (r >= box_length / 2.0) return r - box_length;
    if (r < -box_length / 2.0) return r + box_length;
    return r;
}

double two_body_value(const PotentialTerm& term, const ParticleSystem& system,
                      std::uint64_t ja, std::uint64_t jb, bool minimal_image) {
    if (term.kind == PotentialKind::tabulated) {
        const auto idx = static_cast<std::size_t>(
            static_cast<std::int64_t>(ja) - static_cast<std::int64_t>(jb) +
            static_cast<std::int64_t>(system.grid_points()) - 1);
        return term.table[idx];
    }
    double r = (static_cast<double>(ja) - static_cast<double>(jb)) * system.dx();
    if (minimal_image) r = wrap_separation(r, system.box_length);
    return potential_value(term, r);
}

}  // namespace

void validate(const ParticleSystem& system, int cap) {
    if (system.num_particles < 1) {
        throw ValidationError("num_particles must be >= 1");
    }
    if (system.qubits_per_particle < 1) {
        throw ValidationError("qubits_per_particle must be >= 1");
    }
    if (!(system.box_length > 0.0) || !std::isfinite(system.box_length)) {
        throw ValidationError("box_length must be positive and finite");
    }
    if (static_cast<int>(system.masses.size()) != system.num_particles) {
        throw ValidationError("need one mass per particle");
    }
    for (double m : system.masses) {
        if (!(m > 0.0) || !std::isfinite(m)) {
            throw ValidationError("masses must be positive and finite");
        }
    }
    if (!(system.hbar > 0.0) || !std::isfinite(system.hbar)) {
        throw ValidationError("hbar must be positive and finite");
    }
    if (system.total_qubits() > cap) {
        throw CapExceeded("system needs " + std::to_string(system.total_qubits()) +
                          " qubits, cap is " + std::to_string(cap));
    }
}

void validate(const PotentialTerm& term, const ParticleSystem& system, bool two_body) {
    switch (term.kind) {
        case PotentialKind::harmonic:
            if (!std::isfinite(term.stiffness) || !std::isfinite(term.center)) {
                throw ValidationError("harmonic potential needs finite center and stiffness");
            }
            break;
        case PotentialKind::polynomial:
            for (double c : term.coefficients) {
                if (!std::isfinite(c)) {
                    throw ValidationError("polynomial coefficients must be finite");
                }
            }
            break;
        case PotentialKind::coulomb_soft:
            if (!(term.softening > 0.0) || !std::isfinite(term.softening)) {
                throw ValidationError("coulomb_soft needs softening > 0");
            }
            if (!std::isfinite(term.strength) || !std::isfinite(term.center)) {
                throw ValidationError("coulomb_soft needs finite strength and center");
            }
            break;
        case PotentialKind::tabulated: {
            const std::size_t want = two_body
                ? static_cast<std::size_t>(2 * system.grid_points() - 1)
                : static_cast<std::size_t>(system.grid_points());
            if (term.table.size() != want) {
                throw ValidationError("tabulated potential needs " + std::to_string(want) +
                                      " values, got " + std::to_string(term.table.size()));
            }
            for (double v : term.table) {
                if (!std::isfinite(v)) {
                    throw ValidationError("tabulated values must be finite");
                }
            }
            break;
        }
    }
}

void validate(const PotentialSpec& potentials, const ParticleSystem& system) {
    for (const OneBodyPotential& p : potentials.one_body) {
        require_particle(system, p.particle);
        validate(p.term, system, false);
    }
    for (const TwoBodyPotential& p : potentials.two_body) {
        require_particle(system, p.particle_a);
        require_particle(system, p.particle_b);
        if (p.particle_a == p.particle_b) {
            throw ValidationError("two-body potential sites must be distinct");
        }
        validate(p.term, system, true);
    }
}

void validate(const WavepacketSpec& spec, const ParticleSystem& system) {
    if (static_cast<int>(spec.packets.size()) != system.num_particles) {
        throw ValidationError("need one wavepacket per particle");
    }
    for (const Wavepacket& w : spec.packets) {
        if (!std::isfinite(w.center) || w.center < 0.0 || w.center >= system.box_length) {
            throw ValidationError("packet center must lie in [0, L)");
        }
        if (!std::isfinite(w.momentum)) {
            throw ValidationError("packet momentum must be finite");
        }
        if (!(w.width > 0.0) || !std::isfinite(w.width)) {
            throw ValidationError("packet width must be positive and finite");
        }
        if (w.width < 2.0 * system.dx()) {
            throw UnresolvableWidth("packet width " + std::to_string(w.width) +
                                    " below 2*dx = " + std::to_string(2.0 * system.dx()));
        }
    }
}

double potential_value(const PotentialTerm& term, double u) {
    switch (term.kind) {
        case PotentialKind::harmonic: {
            const double d = u - term.center;
            return 0.5 * term.stiffness * d * d;
        }
        case PotentialKind::polynomial: {
            double v = 0.0;
            for (auto it = term.coefficients.rbegin(); it != term.coefficients.rend(); ++it) {
                v = v * u + *it;
            }
            return v;
        }
        case PotentialKind::coulomb_soft: {
            const double d = u - term.center;
            return term.strength / std::sqrt(d * d + term.softening * term.softening);
        }
        case PotentialKind::tabulated:
            throw ValidationError("tabulated potential is index-based, not pointwise");
    }
    throw ValidationError("unknown potential kind");
}

double position_of_index(const ParticleSystem& system, std::uint64_t j) {
    if (j >= system.grid_points()) {
        throw IndexOutOfRange("grid index " + std::to_string(j) + " outside 0.." +
                              std::to_string(system.grid_points() - 1));
    }
    return static_cast<double>(j) * system.box_length /
           static_cast<double>(system.grid_points());
}

double momentum_of_index(const ParticleSystem& system, std::uint64_t l) {
    const std::uint64_t n = system.grid_points();
    if (l >= n) {
        throw IndexOutOfRange("grid index " + std::to_string(l) + " outside 0.." +
                              std::to_string(n - 1));
    }
    const auto s = (l < n / 2) ? static_cast<double>(l)
                               : static_cast<double>(l) - static_cast<double>(n);
    return 2.0 * std::numbers::pi * system.hbar * s / system.box_length;
}

StateVector prepare_product_wavepackets(const ParticleSystem& system,
                                        const WavepacketSpec& spec, int cap) {
    validate(system, cap);
    validate(spec, system);
    const std::uint64_t n = system.grid_points();
    const int k = system.qubits_per_particle;

    std::vector<std::vector<cplx>> regs;
    regs.reserve(spec.packets.size());
    for (int i = 0; i < system.num_particles; ++i) {
        const Wavepacket& w = spec.packets[static_cast<std::size_t>(i)];
        std::vector<cplx> amps(n);
        double peak = 0.0;
        for (std::uint64_t j = 0; j < n; ++j) {
            const double x = position_of_index(system, j);
            const double d = x - w.center;
            const double g = std::exp(-d * d / (4.0 * w.width * w.width));
            peak = std::max(peak, g);
            amps[j] = std::polar(g, w.momentum * x / system.hbar);
        }
        if (std::abs(amps.front()) > kTailWarnRatio * peak ||
            std::abs(amps.back()) > kTailWarnRatio * peak) {
            std::cerr << "warning: particle " << i
                      << " packet tail exceeds 1e-8 of peak at the box edge\n";
        }
        double norm_sq = 0.0;
        for (const cplx& a : amps) norm_sq += std::norm(a);
        const double inv = 1.0 / std::sqrt(norm_sq);
        for (cplx& a : amps) a *= inv;
        regs.push_back(std::move(amps));
    }

    const std::uint64_t dim = std::uint64_t{1} << system.total_qubits();
    std::vector<cplx> full(dim);
    const std::uint64_t mask = n - 1;
    for (std::uint64_t b = 0; b < dim; ++b) {
        cplx v = 1.0;
        for (int i = 0; i < system.num_particles; ++i) {
            v *= regs[static_cast<std::size_t>(i)][(b >> (i * k)) & mask];
        }
        full[b] = v;
    }
    return StateVector::from_amplitudes(system.total_qubits(), std::move(full), cap);
}

void kinetic_phase_step(StateVector& state, const ParticleSystem& system,
                        int particle, double dt, bool paper_signs, GateCounts* tally) {
    require_particle(system, particle);
    const Register reg = system.register_of(particle);
    const double s = phase_sign(paper_signs);
    const double m = system.masses[static_cast<std::size_t>(particle)];

    std::vector<double> angles(system.grid_points());
    for (std::uint64_t l = 0; l < system.grid_points(); ++l) {
        const double p = momentum_of_index(system, l);
        angles[l] = s * dt * p * p / (2.0 * m * system.hbar);
    }
    apply_qft(state, reg, QftDirection::forward, tally);
    apply_register_phase_table(state, reg, angles, tally);
    apply_qft(state, reg, QftDirection::inverse, tally);
}

void potential_phase_step(StateVector& state, const ParticleSystem& system,
                          const PotentialSpec& potentials, double dt,
                          bool minimal_image, bool paper_signs, GateCounts* tally) {
    const double s = phase_sign(paper_signs);
    const std::uint64_t n = system.grid_points();

    for (const OneBodyPotential& p : potentials.one_body) {
        require_particle(system, p.particle);
        std::vector<double> angles(n);
        for (std::uint64_t j = 0; j < n; ++j) {
            const double v = (p.term.kind == PotentialKind::tabulated)
                ? p.term.table[j]
                : potential_value(p.term, position_of_index(system, j));
            angles[j] = s * dt * v / system.hbar;
        }
        apply_register_phase_table(state, system.register_of(p.particle), angles, tally);
    }
    for (const TwoBodyPotential& p : potentials.two_body) {
        require_particle(system, p.particle_a);
        require_particle(system, p.particle_b);
        std::vector<double> angles(n * n);
        for (std::uint64_t jb = 0; jb < n; ++jb) {
            for (std::uint64_t ja = 0; ja < n; ++ja) {
                const double v = two_body_value(p.term, system, ja, jb, minimal_image);
                angles[ja + (jb << system.qubits_per_particle)] = s * dt * v / system.hbar;
            }
        }
        apply_pair_phase_table(state, system.register_of(p.particle_a),
                               system.register_of(p.particle_b), angles, tally);
    }
}

void split_step(StateVector& state, const ParticleSystem& system,
                const PotentialSpec& potentials, double dt, StepAlgorithm mode,
                bool minimal_image, bool paper_signs, GateCounts* tally) {
    switch (mode) {
        case StepAlgorithm::lie:
            for (int i = 0; i < system.num_particles; ++i) {
                kinetic_phase_step(state, system, i, dt, paper_signs, tally);
            }
            potential_phase_step(state, system, potentials, dt, minimal_image,
                                 paper_signs, tally);
            break;
        case StepAlgorithm::strang:
            for (int i = 0; i < system.num_particles; ++i) {
                kinetic_phase_step(state, system, i, dt / 2.0, paper_signs, tally);
            }
            potential_phase_step(state, system, potentials, dt, minimal_image,
                                 paper_signs, tally);
            for (int i = 0; i < system.num_particles; ++i) {
                kinetic_phase_step(state, system, i, dt / 2.0, paper_signs, tally);
            }
            break;
        case StepAlgorithm::literal_paper:
        case StepAlgorithm::exact_term:
            throw InvalidPlan("spin stepping modes do not apply to particle systems");
    }
}

std::vector<ParticleMoments> particle_observables(const StateVector& state,
                                                  const ParticleSystem& system) {
    if (std::abs(state.norm() - 1.0) > kNormTol) {
        throw UnnormalizedState("particle_observables needs a normalized state");
    }
    std::vector<ParticleMoments> out;
    out.reserve(static_cast<std::size_t>(system.num_particles));
    for (int i = 0; i < system.num_particles; ++i) {
        const Register reg = system.register_of(i);
        ParticleMoments m;
        m.density = marginal_probabilities(state, reg);
        for (std::uint64_t j = 0; j < system.grid_points(); ++j) {
            const double x = position_of_index(system, j);
            m.x_mean += m.density[j] * x;
            m.x_sq += m.density[j] * x * x;
        }
        StateVector momentum_view = state;
        apply_qft(momentum_view, reg, QftDirection::inverse, nullptr);
        const std::vector<double> pd = marginal_probabilities(momentum_view, reg);
        for (std::uint64_t l = 0; l < system.grid_points(); ++l) {
            const double p = momentum_of_index(system, l);
            m.p_mean += pd[l] * p;
            m.p_sq += pd[l] * p * p;
        }
        out.push_back(std::move(m));
    }
    return out;
}

ParticleRunResult evolve_particles(StateVector& state, const ParticleSystem& system,
                                   const PotentialSpec& potentials,
                                   const EvolutionPlan& plan, bool record_density) {
    validate(system);
    validate(potentials, system);
    if (state.num_qubits() != system.total_qubits()) {
        throw DimensionMismatch("state has " + std::to_string(state.num_qubits()) +
                                " qubits, system needs " +
                                std::to_string(system.total_qubits()));
    }
    if (plan.mode != StepAlgorithm::lie && plan.mode != StepAlgorithm::strang) {
        throw InvalidPlan("particle systems step in lie or strang mode");
    }
    const std::int64_t steps = plan.steps();

    ParticleRunResult out;
    for (int i = 0; i < system.num_particles; ++i) {
        const std::string suffix = "_" + std::to_string(i);
        out.trajectory.labels.push_back("x" + suffix);
        out.trajectory.labels.push_back("x2" + suffix);
        out.trajectory.labels.push_back("p" + suffix);
        out.trajectory.labels.push_back("p2" + suffix);
        if (record_density) {
            out.trajectory.density_labels.push_back("density" + suffix);
        }
    }

    auto record = [&](std::int64_t step) {
        TrajectoryRecord rec;
        rec.step = step;
        rec.t = static_cast<double>(step) * plan.dt;
        rec.norm = state.norm();
        StateVector obs_state = state;
        obs_state.normalize();
        std::vector<ParticleMoments> moments = particle_observables(obs_state, system);
        for (ParticleMoments& m : moments) {
            rec.values.push_back(m.x_mean);
            rec.values.push_back(m.x_sq);
            rec.values.push_back(m.p_mean);
            rec.values.push_back(m.p_sq);
            if (record_density) rec.densities.push_back(std::move(m.density));
        }
        out.trajectory.records.push_back(std::move(rec));
    };

    // Trajectory length is pinned to floor(steps/stride) + 1: records land
    // exactly at stride multiples, t = 0 included.
    record(0);
    for (std::int64_t step = 1; step <= steps; ++step) {
        split_step(state, system, potentials, plan.dt, plan.mode, plan.minimal_image,
                   plan.paper_literal_signs, &out.counts);
        if (step % plan.sample_stride == 0) record(step);
    }
    return out;
}

}  // namespace qsim

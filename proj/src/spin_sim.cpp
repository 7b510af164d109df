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

#include "qsim/spin_sim.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace qsim {

namespace {

constexpr double kNormTol = 1e-6;
constexpr double kImagTol = 1e-10;

Mat4 kron_low_first(const Mat2& on_bit1, const Mat2& on_bit0) {
    Mat4 m{};
    for (int r1 = 0; r1 < 2; ++r1)
        for (int r0 = 0; r0 < 2; ++r0)
            for (int c1 = 0; c1 < 2; ++c1)
                for (int c0 = 0; c0 < 2; ++c0)
                    m[static_cast<std::size_t>(((r1 << 1) | r0) * 4 + ((c1 << 1) | c0))] =
                        on_bit1[static_cast<std::size_t>(r1 * 2 + c1)] *
                        on_bit0[static_cast<std::size_t>(r0 * 2 + c0)];
    return m;
}

void apply_term_matrix(StateVector& state, const PauliTerm& term, const cplx& diag,
                       const cplx& off) {
    // diag*I + off*P on the term's site block.
    if (term.sites.size() == 1) {
        Mat2 m = pauli_matrix(term.paulis[0]);
        for (auto& e : m) e *= off;
        m[0] += diag;
        m[3] += diag;
        apply_single_qubit_matrix(state, term.sites[0], m);
    } else {
        Mat4 m = kron_low_first(pauli_matrix(term.paulis[1]), pauli_matrix(term.paulis[0]));
        for (auto& e : m) e *= off;
        for (int d = 0; d < 4; ++d) m[static_cast<std::size_t>(d * 5)] += diag;
        apply_two_qubit_matrix(state, term.sites[0], term.sites[1], m);
    }
}

}  // namespace

char pauli_char(Pauli p) {
    switch (p) {
        case Pauli::X: return 'X';
        case Pauli::Y: return 'Y';
        case Pauli::Z: return 'Z';
    }
    throw ValidationError("unknown Pauli");
}

Pauli pauli_from_char(char c) {
    switch (c) {
        case 'X': case 'x': return Pauli::X;
        case 'Y': case 'y': return Pauli::Y;
        case 'Z': case 'z': return Pauli::Z;
        default:
            throw ValidationError(std::string("unknown Pauli label '") + c + "'");
    }
}

std::string PauliTerm::label() const {
    std::string s;
    for (Pauli p : paulis) s += pauli_char(p);
    s += '[';
    for (std::size_t i = 0; i < sites.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(sites[i]);
    }
    s += ']';
    return s;
}

void validate(const PauliTerm& term, int num_spins) {
    if (term.sites.size() < 1 || term.sites.size() > 2) {
        throw ValidationError("term must act on 1 or 2 sites");
    }
    if (term.paulis.size() != term.sites.size()) {
        throw ValidationError("term needs one Pauli per site");
    }
    if (term.sites.size() == 2 && term.sites[0] == term.sites[1]) {
        throw ValidationError("term sites must be distinct");
    }
    for (int s : term.sites) {
        if (s < 0 || s >= num_spins) {
            throw ValidationError("term site " + std::to_string(s) + " outside 0.." +
                                  std::to_string(num_spins - 1));
        }
    }
    if (!std::isfinite(term.coefficient)) {
        throw ValidationError("term coefficient must be finite");
    }
}

void validate(const SpinSystem& system) {
    if (system.num_spins < 1) {
        throw ValidationError("num_spins must be >= 1");
    }
    if (system.terms.empty()) {
        throw ValidationError("spin system needs at least one term");
    }
    if (!(system.hbar > 0.0) || !std::isfinite(system.hbar)) {
        throw ValidationError("hbar must be positive and finite");
    }
    for (const PauliTerm& t : system.terms) validate(t, system.num_spins);
}

Mat2 pauli_matrix(Pauli p) {
    const cplx i{0.0, 1.0};
    switch (p) {
        case Pauli::X: return {0.0, 1.0, 1.0, 0.0};
        case Pauli::Y: return {0.0, -i, i, 0.0};
        case Pauli::Z: return {1.0, 0.0, 0.0, -1.0};
    }
    throw ValidationError("unknown Pauli");
}

Mat2 term_unitary_exact_1(const PauliTerm& term, double dt, double hbar) {
    const double theta = term.coefficient * dt / hbar;
    const cplx diag{std::cos(theta), 0.0};
    const cplx off{0.0, -std::sin(theta)};
    Mat2 m = pauli_matrix(term.paulis[0]);
    for (auto& e : m) e *= off;
    m[0] += diag;
    m[3] += diag;
    return m;
}

Mat4 term_unitary_exact_2(const PauliTerm& term, double dt, double hbar) {
    const double theta = term.coefficient * dt / hbar;
    const cplx diag{std::cos(theta), 0.0};
    const cplx off{0.0, -std::sin(theta)};
    Mat4 m = kron_low_first(pauli_matrix(term.paulis[1]), pauli_matrix(term.paulis[0]));
    for (auto& e : m) e *= off;
    for (int d = 0; d < 4; ++d) m[static_cast<std::size_t>(d * 5)] += diag;
    return m;
}

void apply_term_exact(StateVector& state, const PauliTerm& term, double dt,
                      double hbar, GateCounts* tally) {
    const double theta = term.coefficient * dt / hbar;
    apply_term_matrix(state, term, {std::cos(theta), 0.0}, {0.0, -std::sin(theta)});
    if (tally) tally->exact_term += 1;
}

void term_step_literal(StateVector& state, const PauliTerm& term, double dt,
                       double hbar, int sign, GateCounts* tally) {
    if (sign != 1 && sign != -1) {
        throw ValidationError("literal step sign must be +1 or -1");
    }
    const double theta = term.coefficient * dt / hbar;
    apply_term_matrix(state, term, 1.0, {0.0, sign * theta});
    if (tally) tally->literal_term += 1;
}

void trotter_step(StateVector& state, const SpinSystem& system, double dt,
                  StepAlgorithm mode, int literal_sign, bool renormalize,
                  GateCounts* tally) {
    switch (mode) {
        case StepAlgorithm::literal_paper:
            for (const PauliTerm& t : system.terms) {
                term_step_literal(state, t, dt, system.hbar, literal_sign, tally);
            }
            break;
        case StepAlgorithm::exact_term:
            for (const PauliTerm& t : system.terms) {
                apply_term_exact(state, t, dt, system.hbar, tally);
            }
            break;
        case StepAlgorithm::strang:
            for (const PauliTerm& t : system.terms) {
                apply_term_exact(state, t, dt / 2.0, system.hbar, tally);
            }
            for (auto it = system.terms.rbegin(); it != system.terms.rend(); ++it) {
                apply_term_exact(state, *it, dt / 2.0, system.hbar, tally);
            }
            break;
        case StepAlgorithm::lie:
            throw InvalidPlan("lie stepping applies to particle systems only");
    }
    if (renormalize) state.normalize();
}

double expectation_pauli(const StateVector& state, const PauliTerm& term) {
    if (std::abs(state.norm() - 1.0) > kNormTol) {
        throw UnnormalizedState("expectation_pauli needs a normalized state");
    }
    StateVector applied = state;
    apply_term_matrix(applied, term, 0.0, 1.0);
    const cplx v = inner_product(state, applied);
    if (std::abs(v.imag()) > kImagTol) {
        throw Error("Pauli expectation has imaginary part " + std::to_string(v.imag()));
    }
    return v.real();
}

double expectation_energy(const StateVector& state, const SpinSystem& system) {
    double e = 0.0;
    for (const PauliTerm& t : system.terms) {
        e += t.coefficient * expectation_pauli(state, t);
    }
    return e;
}

SpinRunResult evolve_spins(StateVector& state, const SpinSystem& system,
                           const EvolutionPlan& plan, bool record_term_expectations) {
    validate(system);
    if (state.num_qubits() != system.num_spins) {
        throw DimensionMismatch("state has " + std::to_string(state.num_qubits()) +
                                " qubits, system has " + std::to_string(system.num_spins));
    }
    if (plan.mode == StepAlgorithm::lie) {
        throw InvalidPlan("lie stepping applies to particle systems only");
    }
    const std::int64_t steps = plan.steps();

    SpinRunResult out;
    for (int s = 0; s < system.num_spins; ++s) {
        out.trajectory.labels.push_back("Z" + std::to_string(s));
    }
    out.trajectory.labels.push_back("energy");
    if (record_term_expectations) {
        for (const PauliTerm& t : system.terms) {
            out.trajectory.labels.push_back(t.label());
        }
    }

    auto record = [&](std::int64_t step) {
        TrajectoryRecord rec;
        rec.step = step;
        rec.t = static_cast<double>(step) * plan.dt;
        rec.norm = state.norm();
        StateVector obs_state = state;
        obs_state.normalize();
        rec.values.reserve(static_cast<std::size_t>(system.num_spins) + 1);
        for (int s = 0; s < system.num_spins; ++s) {
            rec.values.push_back(
                expectation_pauli(obs_state, PauliTerm{1.0, {s}, {Pauli::Z}}));
        }
        rec.values.push_back(expectation_energy(obs_state, system));
        if (record_term_expectations) {
            for (const PauliTerm& t : system.terms) {
                rec.values.push_back(expectation_pauli(obs_state, t));
            }
        }
        out.trajectory.records.push_back(std::move(rec));
    };

    // Trajectory length is pinned to floor(steps/stride) + 1: records land
    // exactly at stride multiples, t = 0 included.
    record(0);
    for (std::int64_t step = 1; step <= steps; ++step) {
        trotter_step(state, system, plan.dt, plan.mode, plan.literal_sign,
                     plan.renormalize_after_step, &out.counts);
        if (step % plan.sample_stride == 0) record(step);
    }
    return out;
}

}  // namespace qsim

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

#include "qsim/statevec.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace qsim {

namespace {

constexpr double kUnitaryTol = 1e-12;
constexpr double kSampleNormTol = 1e-6;

void require_qubit(const StateVector& state, int q, const char* what) {
    if (q < 0 || q >= state.num_qubits()) {
        throw QubitOutOfRange(std::string(what) + " qubit " + std::to_string(q) +
                              " out of range for " + std::to_string(state.num_qubits()) +
                              "-qubit state");
    }
}

void require_unitary2(const Mat2& m) {
    // max-norm of m^dag m - I
    double worst = 0.0;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            cplx e = std::conj(m[0 * 2 + r]) * m[0 * 2 + c] +
                     std::conj(m[1 * 2 + r]) * m[1 * 2 + c];
            if (r == c) e -= 1.0;
            worst = std::max(worst, std::abs(e));
        }
    }
    if (!(worst < kUnitaryTol)) {
        throw NonUnitaryGate("single-qubit matrix fails unitarity check (deviation " +
                             std::to_string(worst) + ")");
    }
}

}  // namespace

StateVector StateVector::basis(int num_qubits, std::uint64_t basis_index, int cap) {
    if (num_qubits < 1) {
        throw ValidationError("state needs at least one qubit");
    }
    if (num_qubits > cap) {
        throw CapExceeded("requested " + std::to_string(num_qubits) +
                          " qubits, cap is " + std::to_string(cap));
    }
    const std::uint64_t dim = std::uint64_t{1} << num_qubits;
    if (basis_index >= dim) {
        throw IndexOutOfRange("basis index " + std::to_string(basis_index) +
                              " >= 2^" + std::to_string(num_qubits));
    }
    StateVector s;
    s.num_qubits_ = num_qubits;
    s.amps_.assign(dim, cplx{0.0, 0.0});
    s.amps_[basis_index] = cplx{1.0, 0.0};
    return s;
}

StateVector StateVector::from_amplitudes(int num_qubits, std::vector<cplx> amps, int cap) {
    if (num_qubits < 1) {
        throw ValidationError("state needs at least one qubit");
    }
    if (num_qubits > cap) {
        throw CapExceeded("requested " + std::to_string(num_qubits) +
                          " qubits, cap is " + std::to_string(cap));
    }
    if (amps.size() != (std::uint64_t{1} << num_qubits)) {
        throw DimensionMismatch("amplitude vector size " + std::to_string(amps.size()) +
                                " is not 2^" + std::to_string(num_qubits));
    }
    StateVector s;
    s.num_qubits_ = num_qubits;
    s.amps_ = std::move(amps);
    return s;
}

cplx StateVector::amplitude(std::uint64_t b) const {
    if (b >= dim()) {
        throw IndexOutOfRange("basis index " + std::to_string(b) + " >= dim " +
                              std::to_string(dim()));
    }
    return amps_[b];
}

double StateVector::norm_squared() const {
    double s = 0.0;
    for (const cplx& a : amps_) s += std::norm(a);
    return s;
}

double StateVector::norm() const { return std::sqrt(norm_squared()); }

void StateVector::normalize() {
    const double n = norm();
    if (n <= 0.0) {
        throw UnnormalizedState("cannot normalize the zero vector");
    }
    const double inv = 1.0 / n;
    for (cplx& a : amps_) a *= inv;
}

void require_register(const StateVector& state, Register reg) {
    if (reg.start_qubit < 0 || reg.width < 1 ||
        reg.start_qubit + reg.width > state.num_qubits()) {
        throw RegisterOutOfRange("register [" + std::to_string(reg.start_qubit) + ", " +
                                 std::to_string(reg.start_qubit + reg.width) +
                                 ") invalid for " + std::to_string(state.num_qubits()) +
                                 " qubits");
    }
}

void apply_single_qubit_matrix(StateVector& state, int qubit, const Mat2& m) {
    auto amps = state.amplitudes();
    const std::uint64_t mask = std::uint64_t{1} << qubit;
    const std::uint64_t lo = mask - 1;
    const std::uint64_t hi = ~lo;
    const std::uint64_t half = state.dim() >> 1;
    for (std::uint64_t i = 0; i < half; ++i) {
        const std::uint64_t i0 = ((i & hi) << 1) | (i & lo);
        const std::uint64_t i1 = i0 | mask;
        const cplx a0 = amps[i0];
        const cplx a1 = amps[i1];
        amps[i0] = m[0] * a0 + m[1] * a1;
        amps[i1] = m[2] * a0 + m[3] * a1;
    }
}

void apply_two_qubit_matrix(StateVector& state, int q0, int q1, const Mat4& m) {
    auto amps = state.amplitudes();
    const std::uint64_t m0 = std::uint64_t{1} << q0;
    const std::uint64_t m1 = std::uint64_t{1} << q1;
    const int qlo = std::min(q0, q1);
    const int qhi = std::max(q0, q1);
    const std::uint64_t lo_mask = (std::uint64_t{1} << qlo) - 1;
    const std::uint64_t mid_mask = ((std::uint64_t{1} << (qhi - 1)) - 1) ^ lo_mask;
    const std::uint64_t hi_mask = ~(lo_mask | mid_mask);
    const std::uint64_t quarter = state.dim() >> 2;
    for (std::uint64_t i = 0; i < quarter; ++i) {
        const std::uint64_t base =
            ((i & hi_mask) << 2) | ((i & mid_mask) << 1) | (i & lo_mask);
        // local index: bit 0 = qubit q0, bit 1 = qubit q1
        const std::uint64_t idx[4] = {base, base | m0, base | m1, base | m0 | m1};
        const cplx a0 = amps[idx[0]];
        const cplx a1 = amps[idx[1]];
        const cplx a2 = amps[idx[2]];
        const cplx a3 = amps[idx[3]];
        for (int r = 0; r < 4; ++r) {
            amps[idx[r]] = m[r * 4 + 0] * a0 + m[r * 4 + 1] * a1 +
                           m[r * 4 + 2] * a2 + m[r * 4 + 3] * a3;
        }
    }
}

namespace {

void apply_hadamard(StateVector& state, int target) {
    static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Mat2 h{cplx{inv_sqrt2, 0}, cplx{inv_sqrt2, 0},
                 cplx{inv_sqrt2, 0}, cplx{-inv_sqrt2, 0}};
    apply_single_qubit_matrix(state, target, h);
}

void apply_controlled_phase(StateVector& state, int control, int target, double angle) {
    auto amps = state.amplitudes();
    const cplx phase = std::polar(1.0, angle);
    const std::uint64_t mc = std::uint64_t{1} << control;
    const std::uint64_t mt = std::uint64_t{1} << target;
    const int qlo = std::min(control, target);
    const int qhi = std::max(control, target);
    const std::uint64_t lo_mask = (std::uint64_t{1} << qlo) - 1;
    const std::uint64_t mid_mask = ((std::uint64_t{1} << (qhi - 1)) - 1) ^ lo_mask;
    const std::uint64_t hi_mask = ~(lo_mask | mid_mask);
    const std::uint64_t quarter = state.dim() >> 2;
    for (std::uint64_t i = 0; i < quarter; ++i) {
        const std::uint64_t b11 =
            (((i & hi_mask) << 2) | ((i & mid_mask) << 1) | (i & lo_mask)) | mc | mt;
        amps[b11] *= phase;
    }
}

void apply_swap(StateVector& state, int a, int b) {
    auto amps = state.amplitudes();
    const std::uint64_t ma = std::uint64_t{1} << a;
    const std::uint64_t mb = std::uint64_t{1} << b;
    const int qlo = std::min(a, b);
    const int qhi = std::max(a, b);
    const std::uint64_t lo_mask = (std::uint64_t{1} << qlo) - 1;
    const std::uint64_t mid_mask = ((std::uint64_t{1} << (qhi - 1)) - 1) ^ lo_mask;
    const std::uint64_t hi_mask = ~(lo_mask | mid_mask);
    const std::uint64_t quarter = state.dim() >> 2;
    for (std::uint64_t i = 0; i < quarter; ++i) {
        const std::uint64_t base =
            ((i & hi_mask) << 2) | ((i & mid_mask) << 1) | (i & lo_mask);
        std::swap(amps[base | ma], amps[base | mb]);
    }
}

}  // namespace

void apply_gate(StateVector& state, const GateOp& gate, GateCounts* tally) {
    std::visit(
        [&](const auto& g) {
            using G = std::decay_t<decltype(g)>;
            if constexpr (std::is_same_v<G, SingleQubitGate>) {
                require_qubit(state, g.target, "target");
                require_unitary2(g.matrix);
                apply_single_qubit_matrix(state, g.target, g.matrix);
            } else if constexpr (std::is_same_v<G, HadamardGate>) {
                require_qubit(state, g.target, "target");
                apply_hadamard(state, g.target);
                if (tally) ++tally->hadamard;
            } else if constexpr (std::is_same_v<G, ControlledPhaseGate>) {
                require_qubit(state, g.control, "control");
                require_qubit(state, g.target, "target");
                if (g.control == g.target) {
                    throw QubitOutOfRange("controlled phase needs distinct qubits");
                }
                apply_controlled_phase(state, g.control, g.target, g.angle);
                if (tally) ++tally->controlled_phase;
            } else if constexpr (std::is_same_v<G, SwapGate>) {
                require_qubit(state, g.a, "swap");
                require_qubit(state, g.b, "swap");
                if (g.a == g.b) {
                    throw QubitOutOfRange("swap needs distinct qubits");
                }
                apply_swap(state, g.a, g.b);
                if (tally) ++tally->swap;
            }
        },
        gate);
}

void apply_diagonal_phase(StateVector& state,
                          const std::function<double(std::uint64_t)>& phase_of_index,
                          GateCounts* tally) {
    auto amps = state.amplitudes();
    const std::uint64_t dim = state.dim();
    for (std::uint64_t b = 0; b < dim; ++b) {
        const double phi = phase_of_index(b);
        if (!std::isfinite(phi)) {
            throw NonFinitePhase("phase at basis index " + std::to_string(b) +
                                 " is not finite");
        }
        amps[b] *= std::polar(1.0, phi);
    }
    if (tally) ++tally->diagonal_phase;
}

namespace {

std::vector<cplx> phase_factors(std::span<const double> phases) {
    std::vector<cplx> f(phases.size());
    for (std::size_t i = 0; i < phases.size(); ++i) {
        if (!std::isfinite(phases[i])) {
            throw NonFinitePhase("phase table entry " + std::to_string(i) +
                                 " is not finite");
        }
        f[i] = std::polar(1.0, phases[i]);
    }
    return f;
}

}  // namespace

void apply_register_phase_table(StateVector& state, Register reg,
                                std::span<const double> phases, GateCounts* tally) {
    require_register(state, reg);
    if (phases.size() != reg.size()) {
        throw DimensionMismatch("phase table size " + std::to_string(phases.size()) +
                                " != 2^" + std::to_string(reg.width));
    }
    const std::vector<cplx> f = phase_factors(phases);
    auto amps = state.amplitudes();
    const std::uint64_t dim = state.dim();
    for (std::uint64_t b = 0; b < dim; ++b) {
        amps[b] *= f[reg.extract(b)];
    }
    if (tally) ++tally->diagonal_phase;
}

void apply_pair_phase_table(StateVector& state, Register reg_a, Register reg_b,
                            std::span<const double> phases, GateCounts* tally) {
    require_register(state, reg_a);
    require_register(state, reg_b);
    const bool overlap = reg_a.start_qubit < reg_b.start_qubit + reg_b.width &&
                         reg_b.start_qubit < reg_a.start_qubit + reg_a.width;
    if (overlap) {
        throw RegisterOutOfRange("register pair overlaps");
    }
    if (phases.size() != (std::uint64_t{1} << (reg_a.width + reg_b.width))) {
        throw DimensionMismatch("pair phase table size mismatch");
    }
    const std::vector<cplx> f = phase_factors(phases);
    auto amps = state.amplitudes();
    const std::uint64_t dim = state.dim();
    for (std::uint64_t b = 0; b < dim; ++b) {
        amps[b] *= f[reg_a.extract(b) | (reg_b.extract(b) << reg_a.width)];
    }
    if (tally) ++tally->diagonal_phase;
}

std::map<std::uint64_t, std::uint64_t> sample_counts(const StateVector& state,
                                                     std::uint64_t shots,
                                                     std::uint64_t seed) {
    if (shots < 1) {
        throw ValidationError("shots must be >= 1");
    }
    const double n2 = state.norm_squared();
    if (std::abs(std::sqrt(n2) - 1.0) > kSampleNormTol) {
        throw UnnormalizedState("state norm " + std::to_string(std::sqrt(n2)) +
                                " deviates from 1 beyond 1e-6");
    }
    // Cumulative |amp|^2 table, then inverse-CDF draws. The generator and
    // the uniform materialization are pinned so that a fixed seed gives the
    // same histogram on any conforming platform.
    const std::uint64_t dim = state.dim();
    auto amps = state.amplitudes();
    std::vector<double> cdf(dim);
    double acc = 0.0;
    for (std::uint64_t b = 0; b < dim; ++b) {
        acc += std::norm(amps[b]);
        cdf[b] = acc;
    }
    cdf[dim - 1] = acc;  // guard: upper_bound below never falls off the end
    std::mt19937_64 rng(seed);
    std::map<std::uint64_t, std::uint64_t> hist;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * acc;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::uint64_t b =
            it == cdf.end() ? dim - 1
                            : static_cast<std::uint64_t>(it - cdf.begin());
        ++hist[b];
    }
    return hist;
}

std::vector<double> marginal_probabilities(const StateVector& state, Register reg) {
    require_register(state, reg);
    std::vector<double> out(reg.size(), 0.0);
    auto amps = state.amplitudes();
    const std::uint64_t dim = state.dim();
    for (std::uint64_t b = 0; b < dim; ++b) {
        out[reg.extract(b)] += std::norm(amps[b]);
    }
    return out;
}

cplx inner_product(const StateVector& a, const StateVector& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw DimensionMismatch("inner product of " + std::to_string(a.num_qubits()) +
                                "- and " + std::to_string(b.num_qubits()) +
                                "-qubit states");
    }
    cplx acc{0.0, 0.0};
    auto aa = a.amplitudes();
    auto bb = b.amplitudes();
    for (std::uint64_t i = 0; i < a.dim(); ++i) {
        acc += std::conj(aa[i]) * bb[i];
    }
    return acc;
}

}  // namespace qsim

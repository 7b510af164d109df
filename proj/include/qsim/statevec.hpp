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

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <variant>
#include <vector>

#include "qsim/errors.hpp"
#include "qsim/gate_counts.hpp"

namespace qsim {

using cplx = std::complex<double>;

/// 2x2 and 4x4 complex matrices, row-major. Small enough to live on the
/// stack; used by gate application and by the per-term spin kernels.
using Mat2 = std::array<cplx, 4>;
using Mat4 = std::array<cplx, 16>;

/// Default ceiling on the register size: 2^26 complex doubles is 1 GiB.
inline constexpr int kDefaultQubitCap = 26;

/// Identifier of the sampling RNG recorded in every run report.
/// mt19937_64 seeded directly, 53-bit uniforms (x >> 11) * 2^-53,
/// outcomes drawn by inverse CDF over the cumulative |amp|^2 table.
inline constexpr const char* kRngAlgorithm = "mt19937_64/canonical53/inverse-cdf";

/// Dense register of n qubits holding 2^n complex amplitudes.
///
/// Basis-index convention is little-endian throughout: qubit q contributes
/// bit (b >> q) & 1 of basis index b, so qubit 0 is the least significant
/// bit and a grid coordinate stored in a register reads directly as an
/// unsigned integer.
class StateVector {
  public:
    StateVector() = default;

    /// |b> on n qubits. Throws IndexOutOfRange if b >= 2^n, CapExceeded if
    /// n exceeds the cap.
    static StateVector basis(int num_qubits, std::uint64_t basis_index,
                             int cap = kDefaultQubitCap);

    /// Takes ownership of a full amplitude vector (size must be 2^n).
    static StateVector from_amplitudes(int num_qubits, std::vector<cplx> amps,
                                       int cap = kDefaultQubitCap);

    int num_qubits() const { return num_qubits_; }
    std::uint64_t dim() const { return static_cast<std::uint64_t>(amps_.size()); }

    std::span<const cplx> amplitudes() const { return amps_; }
    std::span<cplx> amplitudes() { return amps_; }
    cplx amplitude(std::uint64_t b) const;

    double norm_squared() const;  // fixed (ascending-index) reduction order
    double norm() const;
    void normalize();

  private:
    int num_qubits_ = 0;
    std::vector<cplx> amps_;
};

/// Contiguous block of qubits [start_qubit, start_qubit + width).
struct Register {
    int start_qubit = 0;
    int width = 1;

    std::uint64_t size() const { return std::uint64_t{1} << width; }
    std::uint64_t mask() const { return size() - 1; }
    std::uint64_t extract(std::uint64_t b) const { return (b >> start_qubit) & mask(); }
};

void require_register(const StateVector& state, Register reg);

// ---------------------------------------------------------------------------
// Gates

struct SingleQubitGate {
    int target = 0;
    Mat2 matrix{};  // must be unitary to 1e-12 (max-norm of U^dag U - I)
};

struct HadamardGate {
    int target = 0;
};

struct ControlledPhaseGate {
    int control = 0;
    int target = 0;  // control != target; the gate is symmetric in the pair
    double angle = 0.0;
};

struct SwapGate {
    int a = 0;
    int b = 0;  // a != b
};

using GateOp = std::variant<SingleQubitGate, HadamardGate, ControlledPhaseGate, SwapGate>;

/// Applies one gate in place. Validates qubit ranges (QubitOutOfRange) and,
/// for SingleQubitGate, unitarity (NonUnitaryGate). Named gate kinds are
/// tallied when a counter is supplied.
void apply_gate(StateVector& state, const GateOp& gate, GateCounts* tally = nullptr);

// Raw small-matrix kernels. No unitarity check: the spin stepper pushes
// deliberately non-unitary first-order matrices through these.
void apply_single_qubit_matrix(StateVector& state, int qubit, const Mat2& m);

/// Two-qubit kernel. Local index convention: bit 0 of the 4-dim local space
/// is qubit q0's bit, bit 1 is qubit q1's bit (q0 and q1 in caller order).
void apply_two_qubit_matrix(StateVector& state, int q0, int q1, const Mat4& m);

// ---------------------------------------------------------------------------
// Diagonal phases

/// amp_b *= exp(i * phase_of_index(b)) for every basis index, evaluated
/// lazily. Throws NonFinitePhase on a NaN or infinite phase (a singular
/// potential reaching the grid). Counts as one diagonal sweep.
void apply_diagonal_phase(StateVector& state,
                          const std::function<double(std::uint64_t)>& phase_of_index,
                          GateCounts* tally = nullptr);

/// Diagonal sweep whose phase depends only on one register's value:
/// amp_b *= exp(i * phases[reg.extract(b)]). Table size must be 2^width.
void apply_register_phase_table(StateVector& state, Register reg,
                                std::span<const double> phases,
                                GateCounts* tally = nullptr);

/// Diagonal sweep over a register pair: table index is
/// reg_a value + (reg_b value << reg_a.width). Registers must not overlap.
void apply_pair_phase_table(StateVector& state, Register reg_a, Register reg_b,
                            std::span<const double> phases,
                            GateCounts* tally = nullptr);

// ---------------------------------------------------------------------------
// Readout

/// `shots` independent draws from |amp_b|^2, binned per basis index.
/// Identical (state, shots, seed) gives identical histograms; see
/// kRngAlgorithm. Requires |norm - 1| <= 1e-6 (UnnormalizedState).
std::map<std::uint64_t, std::uint64_t> sample_counts(const StateVector& state,
                                                     std::uint64_t shots,
                                                     std::uint64_t seed);

/// Probability of each of the 2^width register values, summed over the
/// complementary qubits. Entries sum to the squared norm.
std::vector<double> marginal_probabilities(const StateVector& state, Register reg);

/// <a|b>. Fixed ascending-index accumulation order.
cplx inner_product(const StateVector& a, const StateVector& b);

}  // namespace qsim

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
#include <map>
#include <string>
#include <vector>

#include "qsim/particle_system.hpp"
#include "qsim/plan.hpp"
#include "qsim/qft.hpp"
#include "qsim/spin_system.hpp"
#include "qsim/statevec.hpp"

// Ground-truth engines for the test suite. Everything here is independent of
// the gate path: Pauli action, grids, potentials and Fourier transforms are
// reimplemented from their definitions, sharing only the domain types.
namespace qsim::oracle {

/// 2^12 x 2^12 complex doubles is ~268 MB; dense ops stop here.
inline constexpr int kDenseCap = 12;

struct DenseOperator {
    std::uint64_t dim = 0;
    std::vector<cplx> entries;  // row-major dim*dim

    static DenseOperator zero(std::uint64_t dim);
    cplx& at(std::uint64_t r, std::uint64_t c) { return entries[r * dim + c]; }
    const cplx& at(std::uint64_t r, std::uint64_t c) const { return entries[r * dim + c]; }
};

/// sum_j coefficient_j * (Pauli product extended by identities), little-endian
/// kron ordering (qubit 0 varies fastest). Hermitian by construction.
DenseOperator dense_spin_hamiltonian(const SpinSystem& system, int cap_dense = kDenseCap);

/// H = sum_i F_i^dag diag(p^2/2m_i) F_i + diag(V_total) with F the
/// e^{+2*pi*i*jl/2^k}/sqrt(2^k) transform on particle i's axis.
DenseOperator dense_grid_hamiltonian(const ParticleSystem& system,
                                     const PotentialSpec& potentials,
                                     bool minimal_image = false,
                                     int cap_dense = kDenseCap);

/// exp(-i*H*t/hbar) psi0 via Hermitian eigendecomposition.
StateVector exact_propagate(const DenseOperator& h, const StateVector& psi0,
                            double t, double hbar = 1.0);

StateVector apply_dense(const DenseOperator& a, const StateVector& psi);

/// Re <psi|A|psi>.
double real_expectation(const DenseOperator& a, const StateVector& psi);

/// Direct O(4^k) DFT over one register's axis; forward matches the gate
/// convention |j> -> 2^{-k/2} sum_l e^{+2*pi*i*jl/2^k} |l>.
StateVector classical_dft(const StateVector& state, Register reg, QftDirection dir);

/// Array-FFT twin of the gate-path split step: same schedule, phases and
/// transform conventions, no gates. Runs `steps` steps of size dt.
StateVector classical_split_step(const StateVector& psi0, const ParticleSystem& system,
                                 const PotentialSpec& potentials, double dt,
                                 std::int64_t steps, StepAlgorithm mode,
                                 bool minimal_image = false, bool paper_signs = false);

/// Closed forms used by acceptance tests. Cases:
///   rabi(omega=1)                      -> cos(2*omega*t)
///   free_width(sigma0; m=1, hbar=1)    -> sigma0*sqrt(1 + (hbar*t/(2*m*sigma0^2))^2)
///   harmonic_x(x0=0, p0=0; m=1, omega=1),
///     displacement from the well center -> x0*cos(omega*t) + p0/(m*omega)*sin(omega*t)
/// Unknown names throw UnknownAnalyticCase; missing required parameters throw
/// ValidationError.
double analytic_suite(const std::string& name,
                      const std::map<std::string, double>& params, double t);

}  // namespace qsim::oracle

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

#include <string>
#include <vector>

#include "qsim/errors.hpp"

namespace qsim {

enum class Pauli { X, Y, Z };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// One Hamiltonian summand c * P acting on one or two distinct sites.
struct PauliTerm {
    double coefficient = 0.0;
    std::vector<int> sites;    // 1 or 2 entries, distinct
    std::vector<Pauli> paulis; // one per site

    /// "X[0]" or "ZZ[0,2]"; used for observable column labels.
    std::string label() const;
};

/// N two-state systems under an ordered list of one- and two-site terms.
/// Term order is part of the system identity: sweeps apply terms in input
/// order, and the Trotter result depends on it.
struct SpinSystem {
    int num_spins = 1;
    std::vector<PauliTerm> terms;
    double hbar = 1.0;
};

/// Throws ValidationError naming the violated invariant.
void validate(const PauliTerm& term, int num_spins);
void validate(const SpinSystem& system);

}  // namespace qsim

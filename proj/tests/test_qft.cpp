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

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "qsim/oracle.hpp"
#include "qsim/qft.hpp"
#include "testutil.hpp"

using namespace qsim;
using test::l2_distance;
using test::random_state;

namespace {

constexpr double kPi = std::numbers::pi;

struct CircuitTally {
  std::int64_t h = 0;
  std::int64_t cp = 0;
  std::int64_t sw = 0;
};

CircuitTally tally_circuit(const std::vector<GateOp>& gates) {
  CircuitTally t;
  for (const auto& g : gates) {
    if (std::holds_alternative<HadamardGate>(g)) ++t.h;
    if (std::holds_alternative<ControlledPhaseGate>(g)) ++t.cp;
    if (std::holds_alternative<SwapGate>(g)) ++t.sw;
  }
  return t;
}

}  // namespace

TEST_CASE("qft circuit gate counts follow the closed form") {
  for (int k = 1; k <= 10; ++k) {
    const auto gates = qft_circuit(Register{0, k}, QftDirection::forward);
    const auto t = tally_circuit(gates);
    CHECK(t.h == k);
    CHECK(t.cp == k * (k - 1) / 2);
    CHECK(t.sw == k / 2);
    CHECK(static_cast<int>(gates.size()) == t.h + t.cp + t.sw);
  }
  // k = 1 is a single Hadamard; k = 7 is the 31-gate circuit.
  CHECK(qft_circuit(Register{0, 1}, QftDirection::forward).size() == 1);
  const auto t7 = tally_circuit(qft_circuit(Register{0, 7}, QftDirection::forward));
  CHECK(t7.h == 7);
  CHECK(t7.cp == 21);
  CHECK(t7.sw == 3);
}

TEST_CASE("inverse circuit reverses order and negates angles") {
  const auto fwd = qft_circuit(Register{0, 4}, QftDirection::forward);
  const auto inv = qft_circuit(Register{0, 4}, QftDirection::inverse);
  REQUIRE(fwd.size() == inv.size());
  const std::size_t n = fwd.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = fwd[i];
    const auto& b = inv[n - 1 - i];
    CHECK(a.index() == b.index());
    if (const auto* cp = std::get_if<ControlledPhaseGate>(&a)) {
      const auto* cpb = std::get_if<ControlledPhaseGate>(&b);
      REQUIRE(cpb != nullptr);
      CHECK(cp->angle == -cpb->angle);
      CHECK(cp->control == cpb->control);
      CHECK(cp->target == cpb->target);
    }
  }
}

TEST_CASE("forward qft of the zero state is uniform") {
  for (int k = 1; k <= 6; ++k) {
    StateVector s = StateVector::basis(k, 0);
    apply_qft(s, Register{0, k}, QftDirection::forward);
    const double expected = std::pow(2.0, -0.5 * k);
    for (std::uint64_t b = 0; b < s.dim(); ++b) {
      CHECK(std::abs(s.amplitude(b) - cplx(expected, 0)) < 1e-12);
    }
  }
}

TEST_CASE("forward qft of |1> on two qubits lands on (1, i, -1, -i)/2") {
  StateVector s = StateVector::basis(2, 1);
  apply_qft(s, Register{0, 2}, QftDirection::forward);
  CHECK(std::abs(s.amplitude(0) - cplx(0.5, 0)) < 1e-14);
  CHECK(std::abs(s.amplitude(1) - cplx(0, 0.5)) < 1e-14);
  CHECK(std::abs(s.amplitude(2) - cplx(-0.5, 0)) < 1e-14);
  CHECK(std::abs(s.amplitude(3) - cplx(0, -0.5)) < 1e-14);
}

TEST_CASE("k=4 circuit reproduces the transform matrix entrywise") {
  const int k = 4;
  const std::uint64_t dim = 16;
  for (std::uint64_t j = 0; j < dim; ++j) {
    StateVector s = StateVector::basis(k, j);
    apply_qft(s, Register{0, k}, QftDirection::forward);
    for (std::uint64_t l = 0; l < dim; ++l) {
      const cplx expected =
          std::polar(0.25, 2.0 * kPi * static_cast<double>(j * l) / 16.0);
      CHECK(std::abs(s.amplitude(l) - expected) < 1e-12);
    }
  }
}

TEST_CASE("gate qft matches the direct transform on random states") {
  for (int k = 1; k <= 6; ++k) {
    for (int trial = 0; trial < 5; ++trial) {
      StateVector s =
          random_state(k, 1000 + static_cast<std::uint64_t>(10 * k + trial));
      StateVector expected =
          oracle::classical_dft(s, Register{0, k}, QftDirection::forward);
      apply_qft(s, Register{0, k}, QftDirection::forward);
      CHECK(l2_distance(s, expected) < 1e-10);
    }
  }
}

TEST_CASE("inverse qft matches the direct inverse transform") {
  StateVector s = random_state(5, 2000);
  StateVector expected =
      oracle::classical_dft(s, Register{0, 5}, QftDirection::inverse);
  apply_qft(s, Register{0, 5}, QftDirection::inverse);
  CHECK(l2_distance(s, expected) < 1e-10);
}

TEST_CASE("forward then inverse is the identity") {
  StateVector s = random_state(6, 3000);
  const StateVector original = s;
  apply_qft(s, Register{0, 6}, QftDirection::forward);
  apply_qft(s, Register{0, 6}, QftDirection::inverse);
  CHECK(l2_distance(s, original) < 1e-12);
}

TEST_CASE("qft on an inner register leaves the rest alone") {
  // 6 qubits, transform the middle block [1, 5) of an entangled state.
  StateVector s = random_state(6, 4000);
  const Register reg{1, 4};
  StateVector expected = oracle::classical_dft(s, reg, QftDirection::forward);
  apply_qft(s, reg, QftDirection::forward);
  CHECK(l2_distance(s, expected) < 1e-10);

  // Gates outside the register commute with the transform.
  StateVector a = random_state(6, 4001);
  StateVector b = a;
  const Mat2 x{cplx(0, 0), cplx(1, 0), cplx(1, 0), cplx(0, 0)};
  apply_single_qubit_matrix(a, 5, x);
  apply_qft(a, reg, QftDirection::forward);
  apply_qft(b, reg, QftDirection::forward);
  apply_single_qubit_matrix(b, 5, x);
  CHECK(l2_distance(a, b) < 1e-12);
}

TEST_CASE("apply_qft validates the register and tallies gates") {
  StateVector s = StateVector::basis(3, 0);
  CHECK_THROWS_AS(apply_qft(s, Register{1, 3}, QftDirection::forward),
                  RegisterOutOfRange);
  GateCounts counts;
  apply_qft(s, Register{0, 3}, QftDirection::forward, &counts);
  CHECK(counts.hadamard == 3);
  CHECK(counts.controlled_phase == 3);
  CHECK(counts.swap == 1);
}

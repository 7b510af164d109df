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
#include "qsim/statevec.hpp"
#include "testutil.hpp"

using namespace qsim;
using test::apply_one_qubit_reference;
using test::apply_two_qubit_reference;
using test::l2_distance;
using test::random_state;
using test::random_unitary2;

namespace {
const Mat2 kPauliX{cplx(0, 0), cplx(1, 0), cplx(1, 0), cplx(0, 0)};
constexpr double kPi = std::numbers::pi;
}  // namespace

TEST_CASE("basis state has a single unit amplitude") {
  StateVector s = StateVector::basis(3, 5);
  CHECK(s.num_qubits() == 3);
  CHECK(s.dim() == 8);
  for (std::uint64_t b = 0; b < 8; ++b) {
    CHECK(s.amplitude(b) == (b == 5 ? cplx(1, 0) : cplx(0, 0)));
  }
  CHECK(s.norm() == doctest::Approx(1.0));
}

TEST_CASE("basis state construction validates its arguments") {
  CHECK_THROWS_AS(StateVector::basis(3, 8), IndexOutOfRange);
  CHECK_THROWS_AS(StateVector::basis(0, 0), ValidationError);
  CHECK_THROWS_AS(StateVector::basis(27, 0), CapExceeded);
  CHECK_THROWS_AS(StateVector::basis(5, 0, 4), CapExceeded);
  CHECK_NOTHROW(StateVector::basis(5, 0, 5));
}

TEST_CASE("from_amplitudes rejects a wrong-sized vector") {
  std::vector<cplx> amps(7, cplx(0, 0));
  CHECK_THROWS_AS(StateVector::from_amplitudes(3, amps), DimensionMismatch);
}

TEST_CASE("amplitude access is bounds checked") {
  StateVector s = StateVector::basis(2, 0);
  CHECK_THROWS_AS(s.amplitude(4), IndexOutOfRange);
}

TEST_CASE("normalize rescales to unit norm") {
  std::vector<cplx> amps{cplx(3, 0), cplx(0, 4), cplx(0, 0), cplx(0, 0)};
  StateVector s = StateVector::from_amplitudes(2, std::move(amps));
  CHECK(s.norm() == doctest::Approx(5.0));
  s.normalize();
  CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(s.amplitude(0) - cplx(0.6, 0)) < 1e-15);
}

TEST_CASE("single-qubit kernel matches the by-definition reference") {
  for (int q = 0; q < 4; ++q) {
    StateVector s = random_state(4, 100 + static_cast<std::uint64_t>(q));
    const Mat2 u = random_unitary2(200 + static_cast<std::uint64_t>(q));
    StateVector expected = apply_one_qubit_reference(s, q, u);
    apply_single_qubit_matrix(s, q, u);
    CHECK(l2_distance(s, expected) < 1e-13);
    CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("X gate permutes basis states through the kernel") {
  for (int q = 0; q < 3; ++q) {
    for (std::uint64_t b = 0; b < 8; ++b) {
      StateVector s = StateVector::basis(3, b);
      apply_single_qubit_matrix(s, q, kPauliX);
      CHECK(s.amplitude(b ^ (std::uint64_t{1} << q)) == cplx(1, 0));
    }
  }
}

TEST_CASE("two-qubit kernel matches the reference on every qubit pair") {
  Mat4 m{};
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(0.0, 1.0);
  for (auto& e : m) e = cplx(g(rng), g(rng));
  for (int q0 = 0; q0 < 4; ++q0) {
    for (int q1 = 0; q1 < 4; ++q1) {
      if (q0 == q1) continue;
      StateVector s =
          random_state(4, 300 + static_cast<std::uint64_t>(4 * q0 + q1));
      StateVector expected = apply_two_qubit_reference(s, q0, q1, m);
      apply_two_qubit_matrix(s, q0, q1, m);
      CHECK(l2_distance(s, expected) < 1e-12);
    }
  }
}

TEST_CASE("two-qubit kernel puts the first argument on local bit 0") {
  // diag(1, -1, 1, 1) negates exactly the local value 1: q0 set, q1 clear.
  Mat4 m{};
  m[0] = cplx(1, 0);
  m[5] = cplx(-1, 0);
  m[10] = cplx(1, 0);
  m[15] = cplx(1, 0);
  StateVector s = StateVector::from_amplitudes(
      3, std::vector<cplx>(8, cplx(std::sqrt(1.0 / 8.0), 0)));
  apply_two_qubit_matrix(s, 2, 0, m);
  for (std::uint64_t b = 0; b < 8; ++b) {
    const bool flipped = ((b >> 2) & 1u) == 1 && (b & 1u) == 0;
    CHECK(s.amplitude(b).real() ==
          doctest::Approx((flipped ? -1.0 : 1.0) * std::sqrt(1.0 / 8.0)));
  }
}

TEST_CASE("apply_gate validates targets and unitarity") {
  StateVector s = StateVector::basis(2, 0);
  CHECK_THROWS_AS(apply_gate(s, HadamardGate{2}), QubitOutOfRange);
  CHECK_THROWS_AS(apply_gate(s, HadamardGate{-1}), QubitOutOfRange);
  CHECK_THROWS_AS(apply_gate(s, ControlledPhaseGate{1, 1, 0.3}), QubitOutOfRange);
  CHECK_THROWS_AS(apply_gate(s, SwapGate{0, 0}), QubitOutOfRange);
  CHECK_THROWS_AS(apply_gate(s, SwapGate{0, 2}), QubitOutOfRange);
  Mat2 not_unitary{cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(2, 0)};
  CHECK_THROWS_AS(apply_gate(s, SingleQubitGate{0, not_unitary}), NonUnitaryGate);
}

TEST_CASE("hadamard gate matches its matrix") {
  const double h = std::sqrt(0.5);
  StateVector s = StateVector::basis(1, 1);
  apply_gate(s, HadamardGate{0});
  CHECK(std::abs(s.amplitude(0) - cplx(h, 0)) < 1e-15);
  CHECK(std::abs(s.amplitude(1) - cplx(-h, 0)) < 1e-15);
}

TEST_CASE("controlled phase acts on the |11> slice and is symmetric") {
  const double angle = 0.37;
  StateVector a = random_state(3, 11);
  StateVector b = a;
  apply_gate(a, ControlledPhaseGate{0, 2, angle});
  apply_gate(b, ControlledPhaseGate{2, 0, angle});
  CHECK(l2_distance(a, b) == 0.0);

  StateVector c = random_state(3, 12);
  const StateVector before = c;
  apply_gate(c, ControlledPhaseGate{0, 2, angle});
  const cplx phase = std::polar(1.0, angle);
  for (std::uint64_t idx = 0; idx < 8; ++idx) {
    const bool both = (idx & 1u) && ((idx >> 2) & 1u);
    const cplx expected = both ? phase * before.amplitude(idx) : before.amplitude(idx);
    CHECK(std::abs(c.amplitude(idx) - expected) < 1e-15);
  }
}

TEST_CASE("swap gate exchanges qubit values") {
  StateVector s = random_state(4, 13);
  const StateVector before = s;
  apply_gate(s, SwapGate{1, 3});
  for (std::uint64_t b = 0; b < 16; ++b) {
    const std::uint64_t b1 = (b >> 1) & 1u;
    const std::uint64_t b3 = (b >> 3) & 1u;
    const std::uint64_t swapped = (b & ~std::uint64_t{0b1010}) | (b1 << 3) | (b3 << 1);
    CHECK(s.amplitude(swapped) == before.amplitude(b));
  }
}

TEST_CASE("apply_gate tallies the named gate kinds") {
  GateCounts counts;
  StateVector s = random_state(3, 14);
  apply_gate(s, HadamardGate{0}, &counts);
  apply_gate(s, ControlledPhaseGate{0, 1, 0.1}, &counts);
  apply_gate(s, ControlledPhaseGate{1, 2, 0.1}, &counts);
  apply_gate(s, SwapGate{0, 2}, &counts);
  CHECK(counts.hadamard == 1);
  CHECK(counts.controlled_phase == 2);
  CHECK(counts.swap == 1);
  CHECK(counts.diagonal_phase == 0);
  CHECK(counts.total() == 4);
}

TEST_CASE("diagonal phase multiplies per-index phases and tallies one sweep") {
  StateVector s = random_state(3, 15);
  const StateVector before = s;
  GateCounts counts;
  apply_diagonal_phase(
      s, [](std::uint64_t b) { return 0.1 * static_cast<double>(b); }, &counts);
  CHECK(counts.diagonal_phase == 1);
  for (std::uint64_t b = 0; b < 8; ++b) {
    const cplx expected =
        std::polar(1.0, 0.1 * static_cast<double>(b)) * before.amplitude(b);
    CHECK(std::abs(s.amplitude(b) - expected) < 1e-15);
  }
}

TEST_CASE("diagonal phase rejects non-finite values") {
  StateVector s = StateVector::basis(2, 0);
  CHECK_THROWS_AS(apply_diagonal_phase(
                      s, [](std::uint64_t) { return std::nan(""); }),
                  NonFinitePhase);
  StateVector t = StateVector::basis(2, 0);
  CHECK_THROWS_AS(
      apply_diagonal_phase(
          t, [](std::uint64_t) { return std::numeric_limits<double>::infinity(); }),
      NonFinitePhase);
}

TEST_CASE("register phase table matches the per-index diagonal") {
  StateVector a = random_state(5, 16);
  StateVector b = a;
  const Register reg{1, 3};
  std::vector<double> table(8);
  for (std::size_t v = 0; v < 8; ++v) table[v] = 0.2 * static_cast<double>(v * v);
  apply_register_phase_table(a, reg, table);
  apply_diagonal_phase(b, [&](std::uint64_t idx) { return table[reg.extract(idx)]; });
  CHECK(l2_distance(a, b) < 1e-15);
}

TEST_CASE("register phase table validates size and range") {
  StateVector s = StateVector::basis(3, 0);
  std::vector<double> wrong(3, 0.0);
  CHECK_THROWS_AS(apply_register_phase_table(s, Register{0, 2}, wrong),
                  DimensionMismatch);
  std::vector<double> ok(4, 0.0);
  CHECK_THROWS_AS(apply_register_phase_table(s, Register{2, 2}, ok),
                  RegisterOutOfRange);
}

TEST_CASE("pair phase table indexes a + (b << width_a)") {
  StateVector s = random_state(4, 17);
  const StateVector before = s;
  const Register ra{0, 2};
  const Register rb{2, 2};
  std::vector<double> table(16);
  for (std::size_t i = 0; i < 16; ++i) table[i] = 0.01 * static_cast<double>(i);
  apply_pair_phase_table(s, ra, rb, table);
  for (std::uint64_t idx = 0; idx < 16; ++idx) {
    const std::uint64_t a = ra.extract(idx);
    const std::uint64_t b = rb.extract(idx);
    const cplx expected =
        std::polar(1.0, table[a + (b << 2)]) * before.amplitude(idx);
    CHECK(std::abs(s.amplitude(idx) - expected) < 1e-15);
  }
}

TEST_CASE("pair phase table rejects overlapping registers") {
  StateVector s = StateVector::basis(4, 0);
  std::vector<double> table(16, 0.0);
  CHECK_THROWS_AS(apply_pair_phase_table(s, Register{0, 2}, Register{1, 2}, table),
                  RegisterOutOfRange);
}

TEST_CASE("marginal probabilities sum to the squared norm") {
  StateVector s = random_state(5, 18);
  for (int start = 0; start < 4; ++start) {
    const Register reg{start, 2};
    const auto probs = marginal_probabilities(s, reg);
    REQUIRE(probs.size() == 4);
    double total = 0.0;
    for (double p : probs) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    // Brute force over the full index set.
    std::vector<double> expected(4, 0.0);
    for (std::uint64_t idx = 0; idx < s.dim(); ++idx) {
      expected[reg.extract(idx)] += std::norm(s.amplitude(idx));
    }
    for (std::size_t v = 0; v < 4; ++v) {
      CHECK(probs[v] == doctest::Approx(expected[v]).epsilon(1e-12));
    }
  }
}

TEST_CASE("sampling is deterministic for a fixed seed") {
  StateVector s = random_state(4, 19);
  const auto h1 = sample_counts(s, 5000, 42);
  const auto h2 = sample_counts(s, 5000, 42);
  CHECK(h1 == h2);
  const auto h3 = sample_counts(s, 5000, 43);
  CHECK(h1 != h3);
  std::uint64_t total = 0;
  for (const auto& [b, c] : h1) {
    CHECK(b < 16);
    total += c;
  }
  CHECK(total == 5000);
}

TEST_CASE("sampling tracks the distribution") {
  // 1-qubit state with p(1) = 0.36.
  std::vector<cplx> amps{cplx(0.8, 0), cplx(0, 0.6)};
  StateVector s = StateVector::from_amplitudes(1, std::move(amps));
  const auto h = sample_counts(s, 100000, 7);
  const double p1 = static_cast<double>(h.at(1)) / 100000.0;
  CHECK(p1 == doctest::Approx(0.36).epsilon(0.02));
}

TEST_CASE("sampling rejects an unnormalized state") {
  std::vector<cplx> amps{cplx(1, 0), cplx(0.1, 0)};
  StateVector s = StateVector::from_amplitudes(1, std::move(amps));
  CHECK_THROWS_AS(sample_counts(s, 10, 1), UnnormalizedState);
}

TEST_CASE("inner product is conjugate-symmetric and orthonormal on basis states") {
  StateVector a = random_state(3, 20);
  StateVector b = random_state(3, 21);
  const cplx ab = inner_product(a, b);
  const cplx ba = inner_product(b, a);
  CHECK(std::abs(ab - std::conj(ba)) < 1e-15);
  CHECK(std::abs(inner_product(a, a) - cplx(1, 0)) < 1e-13);
  StateVector e2 = StateVector::basis(2, 2);
  StateVector e3 = StateVector::basis(2, 3);
  CHECK(inner_product(e2, e3) == cplx(0, 0));
  CHECK_THROWS_AS(inner_product(a, StateVector::basis(2, 0)), DimensionMismatch);
}

TEST_CASE("gate counts add and compare") {
  GateCounts a{1, 2, 3, 4, 5, 6};
  GateCounts b{10, 20, 30, 40, 50, 60};
  a += b;
  CHECK(a == GateCounts{11, 22, 33, 44, 55, 66});
  CHECK(a.total() == 231);
}

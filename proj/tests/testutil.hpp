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

#ifndef QSIM_TESTS_TESTUTIL_HPP_
#define QSIM_TESTS_TESTUTIL_HPP_

#include <cmath>
#include <complex>
#include <random>
#include <utility>
#include <vector>

#include "qsim/statevec.hpp"

namespace qsim::test {

inline StateVector random_state(int num_qubits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  const std::uint64_t dim = std::uint64_t{1} << num_qubits;
  std::vector<cplx> amps(dim);
  for (auto& a : amps) a = cplx(g(rng), g(rng));
  StateVector s = StateVector::from_amplitudes(num_qubits, std::move(amps));
  s.normalize();
  return s;
}

inline double l2_distance(const StateVector& a, const StateVector& b) {
  auto sa = a.amplitudes();
  auto sb = b.amplitudes();
  double acc = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) acc += std::norm(sa[i] - sb[i]);
  return std::sqrt(acc);
}

inline double max_amp_distance(const StateVector& a, const StateVector& b) {
  auto sa = a.amplitudes();
  auto sb = b.amplitudes();
  double m = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i)
    m = std::max(m, std::abs(sa[i] - sb[i]));
  return m;
}

inline double fidelity(const StateVector& a, const StateVector& b) {
  return std::abs(inner_product(a, b));
}

// Parametrized 2x2 unitary: global phase times an SU(2) element.
inline Mat2 random_unitary2(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 2.0 * 3.14159265358979323846);
  const double theta = 0.5 * u(rng);
  const double alpha = u(rng);
  const double beta = u(rng);
  const cplx g = std::polar(1.0, u(rng));
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return Mat2{g * std::polar(c, alpha), g * std::polar(s, beta),
              -g * std::polar(s, -beta), g * std::polar(c, -alpha)};
}

// Applies a single-qubit matrix by definition, one basis state at a time.
// Deliberately independent of the strided kernels under test.
inline StateVector apply_one_qubit_reference(const StateVector& in, int qubit,
                                             const Mat2& m) {
  const std::uint64_t dim = in.dim();
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  std::vector<cplx> out(dim, cplx(0.0, 0.0));
  for (std::uint64_t b = 0; b < dim; ++b) {
    const int v = static_cast<int>((b >> qubit) & 1u);
    for (int vp = 0; vp < 2; ++vp) {
      const std::uint64_t bp =
          (b & ~bit) | (static_cast<std::uint64_t>(vp) << qubit);
      out[bp] += m[static_cast<std::size_t>(vp * 2 + v)] * in.amplitude(b);
    }
  }
  return StateVector::from_amplitudes(in.num_qubits(), std::move(out));
}

// Same idea for an arbitrary two-qubit matrix acting on (q0, q1), where q0
// carries local bit 0 and q1 carries local bit 1.
inline StateVector apply_two_qubit_reference(const StateVector& in, int q0,
                                             int q1, const Mat4& m) {
  const std::uint64_t dim = in.dim();
  const std::uint64_t bit0 = std::uint64_t{1} << q0;
  const std::uint64_t bit1 = std::uint64_t{1} << q1;
  std::vector<cplx> out(dim, cplx(0.0, 0.0));
  for (std::uint64_t b = 0; b < dim; ++b) {
    const int v = static_cast<int>(((b >> q0) & 1u) | (((b >> q1) & 1u) << 1));
    for (int vp = 0; vp < 4; ++vp) {
      std::uint64_t bp = b & ~(bit0 | bit1);
      if (vp & 1) bp |= bit0;
      if (vp & 2) bp |= bit1;
      out[bp] += m[static_cast<std::size_t>(vp * 4 + v)] * in.amplitude(b);
    }
  }
  return StateVector::from_amplitudes(in.num_qubits(), std::move(out));
}

}  // namespace qsim::test

#endif  // QSIM_TESTS_TESTUTIL_HPP_

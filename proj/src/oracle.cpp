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

#include "qsim/oracle.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numbers>
#include <utility>

namespace qsim::oracle {

namespace {

constexpr double kHermitianTol = 1e-8;

using EMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;
using EVector = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;

EMatrix to_eigen(const DenseOperator& a) {
    EMatrix m(a.dim, a.dim);
    for (std::uint64_t r = 0; r < a.dim; ++r)
        for (std::uint64_t c = 0; c < a.dim; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = a.at(r, c);
    return m;
}

void require_dense_cap(int qubits, int cap_dense) {
    if (qubits > cap_dense) {
        throw CapExceeded("dense oracle handles up to " + std::to_string(cap_dense) +
                          " qubits, got " + std::to_string(qubits));
    }
}

// Independent Pauli action on one basis state: P|v> = factor |v'>.
void pauli_bit_action(Pauli p, int bit, std::uint64_t& basis, cplx& factor) {
    const std::uint64_t mask = std::uint64_t{1} << bit;
    const bool one = (basis & mask) != 0;
    switch (p) {
        case Pauli::X:
            basis ^= mask;
            break;
        case Pauli::Y:
            basis ^= mask;
            factor *= one ? cplx{0.0, -1.0} : cplx{0.0, 1.0};
            break;
        case Pauli::Z:
            if (one) factor = -factor;
            break;
    }
}

double oracle_momentum(std::uint64_t l, std::uint64_t n, double box_length, double hbar) {
    const auto s = (l < n / 2) ? static_cast<double>(l)
                               : static_cast<double>(l) - static_cast<double>(n);
    return 2.0 * std::numbers::pi * hbar * s / box_length;
}

double oracle_potential(const PotentialTerm& term, double u) {
    switch (term.kind) {
        case PotentialKind::harmonic:
            return 0.5 * term.stiffness * (u - term.center) * (u - term.center);
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

// Total potential at a full basis index, decoding every particle register.
double total_potential(const ParticleSystem& system, const PotentialSpec& potentials,
                       std::uint64_t b, bool minimal_image) {
    const int k = system.qubits_per_particle;
    const std::uint64_t mask = system.grid_points() - 1;
    const double dx = system.box_length / static_cast<double>(system.grid_points());
    double v = 0.0;
    for (const OneBodyPotential& p : potentials.one_body) {
        const std::uint64_t j = (b >> (p.particle * k)) & mask;
        v += (p.term.kind == PotentialKind::tabulated)
            ? p.term.table[j]
            : oracle_potential(p.term, static_cast<double>(j) * dx);
    }
    for (const TwoBodyPotential& p : potentials.two_body) {
        const std::uint64_t ja = (b >> (p.particle_a * k)) & mask;
        const std::uint64_t jb = (b >> (p.particle_b * k)) & mask;
        if (p.term.kind == PotentialKind::tabulated) {
            v += p.term.table[static_cast<std::size_t>(
                static_cast<std::int64_t>(ja) - static_cast<std::int64_t>(jb) +
                static_cast<std::int64_t>(system.grid_points()) - 1)];
        } else {
            double r = (static_cast<double>(ja) - static_cast<double>(jb)) * dx;
            if (minimal_image) {
                if (r >= system.box_length / 2.0) r -= system.box_length;
                else if (r < -system.box_length / 2.0) r += system.box_length;
            }
            v += oracle_potential(p.term, r);
        }
    }
    return v;
}

double require_param(const std::map<std::string, double>& params, const std::string& key) {
    const auto it = params.find(key);
    if (it == params.end()) {
        throw ValidationError("analytic case needs parameter '" + key + "'");
    }
    return it->second;
}

double param_or(const std::map<std::string, double>& params, const std::string& key,
                double fallback) {
    const auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

}  // namespace

DenseOperator DenseOperator::zero(std::uint64_t dim) {
    DenseOperator a;
    a.dim = dim;
    a.entries.assign(dim * dim, cplx{0.0, 0.0});
    return a;
}

DenseOperator dense_spin_hamiltonian(const SpinSystem& system, int cap_dense) {
    validate(system);
    require_dense_cap(system.num_spins, cap_dense);
    const std::uint64_t dim = std::uint64_t{1} << system.num_spins;
    DenseOperator h = DenseOperator::zero(dim);
    for (const PauliTerm& term : system.terms) {
        for (std::uint64_t col = 0; col < dim; ++col) {
            std::uint64_t row = col;
            cplx factor = term.coefficient;
            for (std::size_t s = 0; s < term.sites.size(); ++s) {
                pauli_bit_action(term.paulis[s], term.sites[s], row, factor);
            }
            h.at(row, col) += factor;
        }
    }
    return h;
}

DenseOperator dense_grid_hamiltonian(const ParticleSystem& system,
                                     const PotentialSpec& potentials,
                                     bool minimal_image, int cap_dense) {
    validate(system, cap_dense);
    validate(potentials, system);
    require_dense_cap(system.total_qubits(), cap_dense);
    const std::uint64_t dim = std::uint64_t{1} << system.total_qubits();
    const std::uint64_t n = system.grid_points();
    const int k = system.qubits_per_particle;
    DenseOperator h = DenseOperator::zero(dim);

    for (int i = 0; i < system.num_particles; ++i) {
        // K1[a,b] = (1/n) sum_l d_l e^{+2*pi*i*l(b-a)/n}: Toeplitz in (b-a).
        std::vector<cplx> circ(n);
        for (std::uint64_t t = 0; t < n; ++t) {
            cplx acc = 0.0;
            for (std::uint64_t l = 0; l < n; ++l) {
                const double p = oracle_momentum(l, n, system.box_length, system.hbar);
                const double d = p * p / (2.0 * system.masses[static_cast<std::size_t>(i)]);
                const double ang = 2.0 * std::numbers::pi * static_cast<double>(l) *
                                   static_cast<double>(t) / static_cast<double>(n);
                acc += d * std::polar(1.0, ang);
            }
            circ[t] = acc / static_cast<double>(n);
        }
        const std::uint64_t reg_mask = (n - 1) << (i * k);
        for (std::uint64_t b = 0; b < dim; ++b) {
            const std::uint64_t jb = (b >> (i * k)) & (n - 1);
            const std::uint64_t rest = b & ~reg_mask;
            for (std::uint64_t ja = 0; ja < n; ++ja) {
                const std::uint64_t a = rest | (ja << (i * k));
                h.at(a, b) += circ[(jb + n - ja) & (n - 1)];
            }
        }
    }
    for (std::uint64_t b = 0; b < dim; ++b) {
        h.at(b, b) += total_potential(system, potentials, b, minimal_image);
    }
    return h;
}

StateVector exact_propagate(const DenseOperator& h, const StateVector& psi0,
                            double t, double hbar) {
    if (h.dim != psi0.dim()) {
        throw DimensionMismatch("operator dim " + std::to_string(h.dim) +
                                " vs state dim " + std::to_string(psi0.dim()));
    }
    const EMatrix m = to_eigen(h);
    const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kHermitianTol) {
        throw NonHermitian("max |H - H^dag| = " + std::to_string(herm));
    }
    Eigen::SelfAdjointEigenSolver<EMatrix> es(m);
    if (es.info() != Eigen::Success) {
        throw Error("eigendecomposition failed");
    }
    EVector v(static_cast<Eigen::Index>(psi0.dim()));
    for (std::uint64_t b = 0; b < psi0.dim(); ++b) {
        v(static_cast<Eigen::Index>(b)) = psi0.amplitude(b);
    }
    EVector coeffs = es.eigenvectors().adjoint() * v;
    for (Eigen::Index j = 0; j < coeffs.size(); ++j) {
        coeffs(j) *= std::polar(1.0, -es.eigenvalues()(j) * t / hbar);
    }
    EVector out = es.eigenvectors() * coeffs;
    std::vector<cplx> amps(psi0.dim());
    for (std::uint64_t b = 0; b < psi0.dim(); ++b) {
        amps[b] = out(static_cast<Eigen::Index>(b));
    }
    return StateVector::from_amplitudes(psi0.num_qubits(), std::move(amps));
}

StateVector apply_dense(const DenseOperator& a, const StateVector& psi) {
    if (a.dim != psi.dim()) {
        throw DimensionMismatch("operator dim " + std::to_string(a.dim) +
                                " vs state dim " + std::to_string(psi.dim()));
    }
    std::vector<cplx> out(psi.dim(), cplx{0.0, 0.0});
    for (std::uint64_t r = 0; r < a.dim; ++r) {
        cplx acc = 0.0;
        for (std::uint64_t c = 0; c < a.dim; ++c) {
            acc += a.at(r, c) * psi.amplitude(c);
        }
        out[r] = acc;
    }
    return StateVector::from_amplitudes(psi.num_qubits(), std::move(out));
}

double real_expectation(const DenseOperator& a, const StateVector& psi) {
    const StateVector applied = apply_dense(a, psi);
    return inner_product(psi, applied).real();
}

StateVector classical_dft(const StateVector& state, Register reg, QftDirection dir) {
    require_register(state, reg);
    const std::uint64_t m = reg.size();
    const double sign = (dir == QftDirection::forward) ? +1.0 : -1.0;
    const double inv_sqrt = 1.0 / std::sqrt(static_cast<double>(m));
    std::vector<cplx> w(m);
    for (std::uint64_t t = 0; t < m; ++t) {
        w[t] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(t) /
                                   static_cast<double>(m));
    }
    const std::uint64_t dim = state.dim();
    const std::uint64_t reg_mask = (m - 1) << reg.start_qubit;
    std::vector<cplx> out(dim);
    for (std::uint64_t rest = 0; rest < dim; ++rest) {
        if ((rest & reg_mask) != 0) continue;
        for (std::uint64_t l = 0; l < m; ++l) {
            cplx acc = 0.0;
            for (std::uint64_t j = 0; j < m; ++j) {
                acc += w[(j * l) % m] * state.amplitude(rest | (j << reg.start_qubit));
            }
            out[rest | (l << reg.start_qubit)] = acc * inv_sqrt;
        }
    }
    return StateVector::from_amplitudes(state.num_qubits(), std::move(out));
}

StateVector classical_split_step(const StateVector& psi0, const ParticleSystem& system,
                                 const PotentialSpec& potentials, double dt,
                                 std::int64_t steps, StepAlgorithm mode,
                                 bool minimal_image, bool paper_signs) {
    validate(system);
    validate(potentials, system);
    if (psi0.num_qubits() != system.total_qubits()) {
        throw DimensionMismatch("state has " + std::to_string(psi0.num_qubits()) +
                                " qubits, system needs " +
                                std::to_string(system.total_qubits()));
    }
    if (mode != StepAlgorithm::lie && mode != StepAlgorithm::strang) {
        throw InvalidPlan("particle systems step in lie or strang mode");
    }
    const double s = paper_signs ? +1.0 : -1.0;
    const std::uint64_t n = system.grid_points();
    const int k = system.qubits_per_particle;
    const std::uint64_t dim = psi0.dim();

    std::vector<cplx> amps(psi0.amplitudes().begin(), psi0.amplitudes().end());
    Eigen::FFT<double> fft;
    std::vector<cplx> slice(n), freq(n);
    const double sqrt_n = std::sqrt(static_cast<double>(n));

    std::vector<double> kin_base(n);  // p^2/(2*hbar) per momentum index
    for (std::uint64_t l = 0; l < n; ++l) {
        const double p = oracle_momentum(l, n, system.box_length, system.hbar);
        kin_base[l] = p * p / (2.0 * system.hbar);
    }

    auto kinetic = [&](int particle, double tau) {
        const double mass = system.masses[static_cast<std::size_t>(particle)];
        std::vector<cplx> phase(n);
        for (std::uint64_t l = 0; l < n; ++l) {
            phase[l] = std::polar(1.0, s * tau * kin_base[l] / mass);
        }
        const std::uint64_t stride = std::uint64_t{1} << (particle * k);
        const std::uint64_t block = stride * n;
        for (std::uint64_t base = 0; base < dim; base += block) {
            for (std::uint64_t off = 0; off < stride; ++off) {
                for (std::uint64_t j = 0; j < n; ++j) {
                    slice[j] = amps[base + off + j * stride];
                }
                // Gate-convention forward transform = sqrt(n) * unnormalized
                // inverse FFT; back again with fwd / sqrt(n).
                fft.inv(freq, slice);
                for (std::uint64_t l = 0; l < n; ++l) {
                    freq[l] *= sqrt_n * phase[l];
                }
                fft.fwd(slice, freq);
                for (std::uint64_t j = 0; j < n; ++j) {
                    amps[base + off + j * stride] = slice[j] / sqrt_n;
                }
            }
        }
    };
    auto potential = [&](double tau) {
        if (potentials.one_body.empty() && potentials.two_body.empty()) return;
        for (std::uint64_t b = 0; b < dim; ++b) {
            const double v = total_potential(system, potentials, b, minimal_image);
            amps[b] *= std::polar(1.0, s * tau * v / system.hbar);
        }
    };

    for (std::int64_t step = 0; step < steps; ++step) {
        if (mode == StepAlgorithm::lie) {
            for (int i = 0; i < system.num_particles; ++i) kinetic(i, dt);
            potential(dt);
        } else {
            for (int i = 0; i < system.num_particles; ++i) kinetic(i, dt / 2.0);
            potential(dt);
            for (int i = 0; i < system.num_particles; ++i) kinetic(i, dt / 2.0);
        }
    }
    return StateVector::from_amplitudes(psi0.num_qubits(), std::move(amps));
}

double analytic_suite(const std::string& name,
                      const std::map<std::string, double>& params, double t) {
    if (name == "rabi") {
        const double omega = param_or(params, "omega", 1.0);
        return std::cos(2.0 * omega * t);
    }
    if (name == "free_width") {
        const double sigma0 = require_param(params, "sigma0");
        const double m = param_or(params, "m", 1.0);
        const double hbar = param_or(params, "hbar", 1.0);
        const double r = hbar * t / (2.0 * m * sigma0 * sigma0);
        return sigma0 * std::sqrt(1.0 + r * r);
    }
    if (name == "harmonic_x") {
        const double x0 = param_or(params, "x0", 0.0);
        const double p0 = param_or(params, "p0", 0.0);
        const double m = param_or(params, "m", 1.0);
        const double omega = param_or(params, "omega", 1.0);
        return x0 * std::cos(omega * t) + p0 / (m * omega) * std::sin(omega * t);
    }
    throw UnknownAnalyticCase("no analytic case named '" + name + "'");
}

}  // namespace qsim::oracle

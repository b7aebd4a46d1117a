// Copyright 2026 The dipolink Authors
// SPDX-License-Identifier: Apache-2.0

// Test-only reference implementations. Nothing here calls into the library:
// the full 2^N spin Hamiltonian is assembled from Pauli matrices, and time
// evolution uses a fixed-step RK4 integrator instead of an eigenbasis.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

inline double dist(const std::vector<double>& x, std::size_t i, std::size_t j, bool ring) {
    double d = std::abs(x[i] - x[j]);
    if (ring) d = std::min(d, static_cast<double>(x.size()) - d);
    return d;
}

// S_i^z S_j^z and the flip-flop term on computational basis states, bit k set
// meaning spin k is up. Returns the full 2^N real matrix of
//   dipole:     sum_{i<j} C/r^3 [S_i . S_j - 3 S_i^z S_j^z]
//   heisenberg: -(1/2) sum_{bonds} J_b sigma_i . sigma_j,  J_b = C/(2 r^3)
inline Eigen::MatrixXd fullHamiltonian(const std::vector<double>& x, bool dipole, bool ring, double c = 2.0) {
    const std::size_t n = x.size();
    const std::size_t dim = std::size_t{1} << n;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const bool bond = ring ? (j == i + 1 || (i == 0 && j == n - 1)) : j == i + 1;
            if (!dipole && !bond) continue;
            const double r = dist(x, i, j, ring);
            // Coefficients of S.S (xy part), S^z S^z in spin-1/2 operators.
            double cxy = 0.0;
            double czz = 0.0;
            if (dipole) {
                cxy = c / (r * r * r);
                czz = c / (r * r * r) - 3.0 * c / (r * r * r);
            } else {
                const double jb = c / (2.0 * r * r * r);
                cxy = -0.5 * jb * 4.0;  // sigma = 2 S
                czz = -0.5 * jb * 4.0;
            }
            for (std::size_t s = 0; s < dim; ++s) {
                const bool ui = (s >> i) & 1U;
                const bool uj = (s >> j) & 1U;
                const double zi = ui ? 0.5 : -0.5;
                const double zj = uj ? 0.5 : -0.5;
                h(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)) += czz * zi * zj;
                if (ui != uj) {
                    // (S+S- + S-S+)/2 swaps the two spins with amplitude 1/2.
                    const std::size_t t = s ^ ((std::size_t{1} << i) | (std::size_t{1} << j));
                    h(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) += 0.5 * cxy;
                }
            }
        }
    }
    return h;
}

// Block of the full Hamiltonian on the states with exactly one spin up, in
// site order.
inline Eigen::MatrixXd oneFlipBlock(const Eigen::MatrixXd& full, std::size_t n) {
    Eigen::MatrixXd b(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                full(static_cast<Eigen::Index>(std::size_t{1} << i), static_cast<Eigen::Index>(std::size_t{1} << j));
    return b;
}

// psi(t) for i dpsi/dt = H psi, classic RK4 with `steps` equal steps.
inline Eigen::VectorXcd rk4Evolve(const Eigen::MatrixXd& h, const Eigen::VectorXcd& psi0, double t, std::size_t steps) {
    const Eigen::MatrixXcd a = Complex(0.0, -1.0) * h.cast<Complex>();
    const double dt = t / static_cast<double>(steps);
    Eigen::VectorXcd psi = psi0;
    for (std::size_t k = 0; k < steps; ++k) {
        const Eigen::VectorXcd k1 = a * psi;
        const Eigen::VectorXcd k2 = a * (psi + 0.5 * dt * k1);
        const Eigen::VectorXcd k3 = a * (psi + 0.5 * dt * k2);
        const Eigen::VectorXcd k4 = a * (psi + dt * k3);
        psi += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return psi;
}

inline double bose(double fAbs) { return fAbs / 3.0 + fAbs * fAbs / 6.0 + 0.5; }

}  // namespace oracle

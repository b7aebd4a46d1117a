// Copyright 2026 The dipolink Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file spectral.hpp
 * @brief Eigendecomposition of excitation Hamiltonians and evaluation of the
 *        transition amplitude f(t) = <out| exp(-iHt) |in> and fidelity F(t).
 */

#pragma once

#include "dipolink/execution.hpp"
#include "dipolink/lattice.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace dipolink {

using Complex = std::complex<double>;

/// Ascending eigenvalues; column m of `eigenvectors` belongs to eigenvalue m.
/// In each column the component of largest magnitude is positive (ties go
/// to the lowest index).
struct SpectralDecomposition {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
    int sweeps = 0;

    std::size_t size() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }
};

struct JacobiOptions {
    double relativeTolerance = 1e-12;  ///< off-diagonal Frobenius norm / ||A||_F
    int maxSweeps = 100;
};

/// Cyclic Jacobi diagonalization of a dense symmetric matrix.
SpectralDecomposition decompose(const Eigen::MatrixXd& symmetric, const JacobiOptions& opts = {});
SpectralDecomposition decompose(const ExcitationHamiltonian& h, const JacobiOptions& opts = {});

/// Normalized state over the single-flip basis.
class SiteState {
public:
    /// |site>, 0-based.
    static SiteState basis(std::size_t n, std::size_t site);
    /// Checks unit norm to 1e-12.
    static SiteState fromAmplitudes(Eigen::VectorXcd amplitudes);
    /// Normalizes first; throws on a zero vector.
    static SiteState normalized(Eigen::VectorXcd amplitudes);

    const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(amplitudes_.size()); }
    Complex overlap(const SiteState& other) const;  ///< <this|other>

private:
    explicit SiteState(Eigen::VectorXcd a) : amplitudes_(std::move(a)) {}
    Eigen::VectorXcd amplitudes_;
};

/// Precomputed spectral weights w_m = <out|m><m|in>; f(t) = sum w_m e^{-i E_m t}.
class TransitionAmplitude {
public:
    TransitionAmplitude(const SpectralDecomposition& spec, const SiteState& input, const SiteState& output);

    Complex operator()(double t) const;
    double fidelityAt(double t) const;

    const Eigen::VectorXd& energies() const noexcept { return energies_; }
    const Eigen::VectorXcd& weights() const noexcept { return weights_; }
    /// E_max - E_min over eigenvalues with non-negligible weight.
    double bandwidth() const noexcept { return bandwidth_; }

private:
    Eigen::VectorXd energies_;
    Eigen::VectorXcd weights_;
    double bandwidth_ = 0.0;
};

Complex propagator(const SpectralDecomposition& spec, const SiteState& input, const SiteState& output, double t);

/// F = |f|/3 + |f|^2/6 + 1/2. Overshoot up to 1e-9 is clamped to 1.
double fidelity(double fAbs);

struct FidelityCurve {
    std::vector<double> times;
    std::vector<double> values;
    std::string description;
};

/// F on the uniform grid t_k = k * tMax / (nSteps - 1).
FidelityCurve fidelityCurve(const SpectralDecomposition& spec, const SiteState& input, const SiteState& output,
                            double tMax, std::size_t nSteps, Execution exec = Execution::Parallel);

/// Samples `amp` at each time; the parallel/serial map shared by the curve
/// and peak-search kernels.
std::vector<double> sampleFidelity(const TransitionAmplitude& amp, double tMax, std::size_t nPoints,
                                   Execution exec);

/// CSV with header `t,F`, 17 significant digits, LF endings.
void writeCurveCsv(std::ostream& os, const FidelityCurve& curve);

}  // namespace dipolink

// Copyright 2026 The dipolink Authors
// SPDX-License-Identifier: Apache-2.0

#include "dipolink/spectral.hpp"

#include "dipolink/error.hpp"
#include "dipolink/io.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace dipolink {

namespace {

double offDiagonalNorm(const Eigen::MatrixXd& a) {
    double s = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
        for (Eigen::Index i = 0; i < a.rows(); ++i)
            if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
}

// Rotation that zeroes a(p,q); Golub & Van Loan, sym.schur2.
void rotate(Eigen::MatrixXd& a, Eigen::MatrixXd& v, Eigen::Index p, Eigen::Index q) {
    const double apq = a(p, q);
    if (apq == 0.0) return;
    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
    const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;
    const Eigen::Index n = a.rows();

    for (Eigen::Index k = 0; k < n; ++k) {
        const double akp = a(k, p);
        const double akq = a(k, q);
        a(k, p) = c * akp - s * akq;
        a(k, q) = s * akp + c * akq;
    }
    for (Eigen::Index k = 0; k < n; ++k) {
        const double apk = a(p, k);
        const double aqk = a(q, k);
        a(p, k) = c * apk - s * aqk;
        a(q, k) = s * apk + c * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        const double vkp = v(k, p);
        const double vkq = v(k, q);
        v(k, p) = c * vkp - s * vkq;
        v(k, q) = s * vkp + c * vkq;
    }
}

void fixSign(Eigen::Ref<Eigen::VectorXd> col) {
    const double peak = col.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < col.size(); ++i) {
        if (std::abs(col(i)) >= peak * (1.0 - 1e-10)) {
            if (col(i) < 0.0) col = -col;
            return;
        }
    }
}

}  // namespace

SpectralDecomposition decompose(const Eigen::MatrixXd& symmetric, const JacobiOptions& opts) {
    const Eigen::Index n = symmetric.rows();
    if (n == 0 || symmetric.cols() != n) throw ShapeError("decompose: matrix must be square and non-empty");
    if (!symmetric.allFinite()) throw NumericError("decompose: non-finite matrix entry");
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (symmetric(i, j) != symmetric(j, i)) throw DomainError("decompose: matrix is not symmetric");

    Eigen::MatrixXd a = symmetric;
    Eigen::MatrixXd v = Eigen::MatrixXd::Identity(n, n);
    const double scale = a.norm();
    const double target = opts.relativeTolerance * scale;

    int sweeps = 0;
    double off = offDiagonalNorm(a);
    while (off > target) {
        if (sweeps == opts.maxSweeps) {
            throw ConvergenceError("decompose: Jacobi did not converge, off-diagonal residual " +
                                       std::to_string(off / scale),
                                   off);
        }
        for (Eigen::Index p = 0; p < n - 1; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) rotate(a, v, p, q);
        ++sweeps;
        off = offDiagonalNorm(a);
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) { return a(x, x) < a(y, y); });

    SpectralDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    out.sweeps = sweeps;
    for (Eigen::Index m = 0; m < n; ++m) {
        const Eigen::Index src = order[static_cast<std::size_t>(m)];
        out.eigenvalues(m) = a(src, src);
        out.eigenvectors.col(m) = v.col(src);
        fixSign(out.eigenvectors.col(m));
    }
    return out;
}

SpectralDecomposition decompose(const ExcitationHamiltonian& h, const JacobiOptions& opts) {
    return decompose(h.matrix, opts);
}

// ---------------------------------------------------------------------------
// States
// ---------------------------------------------------------------------------

SiteState SiteState::basis(std::size_t n, std::size_t site) {
    if (site >= n) throw DomainError("site index out of range");
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n));
    a(static_cast<Eigen::Index>(site)) = 1.0;
    return SiteState(std::move(a));
}

SiteState SiteState::fromAmplitudes(Eigen::VectorXcd amplitudes) {
    if (amplitudes.size() == 0) throw ShapeError("empty state");
    if (!amplitudes.allFinite()) throw NumericError("non-finite state amplitude");
    if (std::abs(amplitudes.squaredNorm() - 1.0) > 1e-12) throw DomainError("state is not normalized");
    return SiteState(std::move(amplitudes));
}

SiteState SiteState::normalized(Eigen::VectorXcd amplitudes) {
    const double norm = amplitudes.norm();
    if (!(norm > 0.0) || !std::isfinite(norm)) throw DomainError("cannot normalize a zero or non-finite state");
    amplitudes /= norm;
    return SiteState(std::move(amplitudes));
}

Complex SiteState::overlap(const SiteState& other) const {
    if (other.size() != size()) throw ShapeError("state dimension mismatch");
    return amplitudes_.dot(other.amplitudes_);
}

// ---------------------------------------------------------------------------
// Propagator and fidelity
// ---------------------------------------------------------------------------

TransitionAmplitude::TransitionAmplitude(const SpectralDecomposition& spec, const SiteState& input,
                                         const SiteState& output)
    : energies_(spec.eigenvalues) {
    const Eigen::Index n = spec.eigenvalues.size();
    if (static_cast<Eigen::Index>(input.size()) != n || static_cast<Eigen::Index>(output.size()) != n)
        throw ShapeError("propagator: state dimension does not match the Hamiltonian");
    // <out|m> = sum_j conj(out_j) V_jm ; <m|in> = sum_j V_jm in_j (V real)
    const Eigen::MatrixXcd v = spec.eigenvectors.cast<Complex>();
    const Eigen::VectorXcd outProj = v.adjoint() * output.amplitudes();
    const Eigen::VectorXcd inProj = v.adjoint() * input.amplitudes();
    weights_ = outProj.conjugate().cwiseProduct(inProj);

    double lo = 0.0;
    double hi = 0.0;
    bool any = false;
    for (Eigen::Index m = 0; m < n; ++m) {
        if (std::abs(weights_(m)) < 1e-14) continue;
        lo = any ? std::min(lo, energies_(m)) : energies_(m);
        hi = any ? std::max(hi, energies_(m)) : energies_(m);
        any = true;
    }
    bandwidth_ = hi - lo;
}

Complex TransitionAmplitude::operator()(double t) const {
    Complex f{0.0, 0.0};
    for (Eigen::Index m = 0; m < energies_.size(); ++m) {
        const double phase = -energies_(m) * t;
        f += weights_(m) * Complex(std::cos(phase), std::sin(phase));
    }
    return f;
}

double TransitionAmplitude::fidelityAt(double t) const { return fidelity(std::abs((*this)(t))); }

Complex propagator(const SpectralDecomposition& spec, const SiteState& input, const SiteState& output, double t) {
    return TransitionAmplitude(spec, input, output)(t);
}

double fidelity(double fAbs) {
    if (!(fAbs >= 0.0) || fAbs > 1.0 + 1e-9) throw DomainError("fidelity: |f| outside [0, 1]");
    const double a = std::min(fAbs, 1.0);
    return a / 3.0 + a * a / 6.0 + 0.5;
}

std::vector<double> sampleFidelity(const TransitionAmplitude& amp, double tMax, std::size_t nPoints,
                                   Execution exec) {
    std::vector<double> values(nPoints);
    const double step = nPoints > 1 ? tMax / static_cast<double>(nPoints - 1) : 0.0;
    parallelFor(
        nPoints, exec, [&](std::size_t k) { values[k] = amp.fidelityAt(static_cast<double>(k) * step); }, 4096);
    return values;
}

FidelityCurve fidelityCurve(const SpectralDecomposition& spec, const SiteState& input, const SiteState& output,
                            double tMax, std::size_t nSteps, Execution exec) {
    if (!(tMax > 0.0) || !std::isfinite(tMax)) throw DomainError("fidelityCurve: tMax must be > 0");
    if (nSteps < 2) throw DomainError("fidelityCurve: need at least 2 steps");
    const TransitionAmplitude amp(spec, input, output);
    FidelityCurve curve;
    curve.values = sampleFidelity(amp, tMax, nSteps, exec);
    curve.times.resize(nSteps);
    const double step = tMax / static_cast<double>(nSteps - 1);
    for (std::size_t k = 0; k < nSteps; ++k) curve.times[k] = static_cast<double>(k) * step;
    return curve;
}

void writeCurveCsv(std::ostream& os, const FidelityCurve& curve) {
    os << "t,F\n";
    for (std::size_t k = 0; k < curve.times.size(); ++k)
        os << formatDouble(curve.times[k]) << ',' << formatDouble(curve.values[k]) << '\n';
}

}  // namespace dipolink

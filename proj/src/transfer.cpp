// Copyright 2026 The dipolink Authors
// SPDX-License-Identifier: Apache-2.0

#include "dipolink/transfer.hpp"

#include "dipolink/error.hpp"
#include "dipolink/io.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <ostream>

namespace dipolink {

namespace {

constexpr double kInvPhi = 0.6180339887498949;  // 1/golden ratio

template <class F>
std::pair<double, double> goldenMaximize(F&& f, double lo, double hi, double tol) {
    double c = hi - kInvPhi * (hi - lo);
    double d = lo + kInvPhi * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    while (hi - lo > tol) {
        if (fc >= fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - kInvPhi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + kInvPhi * (hi - lo);
            fd = f(d);
        }
    }
    const double t = 0.5 * (lo + hi);
    return {t, f(t)};
}

double spectralWidth(const SpectralDecomposition& spec) {
    return spec.eigenvalues(spec.eigenvalues.size() - 1) - spec.eigenvalues(0);
}

}  // namespace

PeakResult findFirstPeak(const TransitionAmplitude& amp, double tMax, const PeakSearchConfig& cfg, Execution exec) {
    if (!(tMax > 0.0) || !std::isfinite(tMax)) throw DomainError("peak search: window must be > 0");

    const double omega = amp.bandwidth();
    const double wanted = cfg.samplesPerPeriod * tMax * omega / (2.0 * std::numbers::pi);
    std::size_t n = cfg.minGridPoints;
    if (wanted > static_cast<double>(n)) n = static_cast<std::size_t>(std::ceil(wanted)) + 1;
    n = std::min(n, std::max(cfg.maxGridPoints, cfg.minGridPoints));
    n = std::max<std::size_t>(n, 3);

    const std::vector<double> values = sampleFidelity(amp, tMax, n, exec);
    const double h = tMax / static_cast<double>(n - 1);
    const double coarse = *std::max_element(values.begin(), values.end());
    // Bound on how far a true local maximum can sit above its nearest sample.
    const double slack = omega * omega * h * h / 16.0;

    struct Candidate {
        double t;
        double f;
        std::size_t k;
    };
    std::vector<Candidate> candidates;
    const auto fid = [&](double t) { return amp.fidelityAt(t); };
    for (std::size_t k = 0; k < n; ++k) {
        const double v = values[k];
        if (v < coarse - slack) continue;
        if (k > 0 && values[k - 1] > v) continue;
        if (k + 1 < n && values[k + 1] > v) continue;
        const double lo = k > 0 ? static_cast<double>(k - 1) * h : 0.0;
        const double hi = k + 1 < n ? static_cast<double>(k + 1) * h : tMax;
        auto [t, f] = goldenMaximize(fid, lo, hi, cfg.timeTolerance);
        const double tk = static_cast<double>(k) * h;
        if (v >= f) {
            t = tk;
            f = v;
        }
        candidates.push_back({t, f, k});
    }

    PeakResult r;
    r.gridPoints = n;
    r.windowEnd = tMax;
    r.coarseMax = coarse;
    r.refinedCandidates = candidates.size();
    double best = coarse;
    for (const auto& c : candidates) best = std::max(best, c.f);
    r.fMax = best;
    // Earliest candidate that ties the global maximum.
    for (const auto& c : candidates) {
        if (c.f >= best - cfg.peakTolerance) {
            r.tPeak = c.t;
            r.boundaryPeak = c.k == n - 1;
            break;
        }
    }
    return r;
}

double defaultWindow(const ExcitationHamiltonian& h, const SpectralDecomposition& spec) {
    const double gap = spec.size() > 1 ? spec.eigenvalues(1) - spec.eigenvalues(0) : 0.0;
    const bool beating = gap > kDegenerateGap * spectralWidth(spec);
    const double beat = beating ? 3.0 * std::numbers::pi / gap : 0.0;
    if (h.geometry.topology() == Topology::Ring) return std::max(beat, 10.0 * static_cast<double>(h.size()));
    if (!beating) return 10.0 * static_cast<double>(h.size());
    return beat;
}

TransferSummary summarizeTransfer(const ExcitationHamiltonian& h, const SpectralDecomposition& spec,
                                  const SiteState& input, const SiteState& output, const PeakSearchConfig& cfg,
                                  Execution exec) {
    if (spec.size() != h.size()) throw ShapeError("summary: decomposition does not match the Hamiltonian");
    const TransitionAmplitude amp(spec, input, output);
    const double window = cfg.tMax ? *cfg.tMax : defaultWindow(h, spec);
    const PeakResult peak = findFirstPeak(amp, window, cfg, exec);

    TransferSummary s;
    s.n = h.size();
    s.fMax = peak.fMax;
    s.tPeak = peak.tPeak;
    s.windowEnd = peak.windowEnd;
    s.boundaryPeak = peak.boundaryPeak;
    s.length = h.geometry.length();
    s.deltaLambda = spec.size() > 1 ? spec.eigenvalues(1) - spec.eigenvalues(0) : 0.0;
    if (s.deltaLambda > kDegenerateGap * spectralWidth(spec)) {
        s.period = 2.0 * std::numbers::pi / s.deltaLambda;
        s.transferTime = std::numbers::pi / s.deltaLambda;
        if (h.geometry.topology() == Topology::Chain) s.tau = *s.transferTime / (s.length * s.length * s.length);
    }
    return s;
}

TransferSummary summarizeTransfer(const ExcitationHamiltonian& h, const SiteState& input, const SiteState& output,
                                  const PeakSearchConfig& cfg, Execution exec) {
    return summarizeTransfer(h, decompose(h), input, output, cfg, exec);
}

// ---------------------------------------------------------------------------
// Sweeps
// ---------------------------------------------------------------------------

std::size_t ringOppositeSite(std::size_t n) { return n % 2 == 0 ? n / 2 : (n - 1) / 2; }

namespace {

SweepRow sweepRow(const ExcitationHamiltonian& h, std::size_t outSite, const PeakSearchConfig& cfg, Execution exec) {
    const std::size_t n = h.size();
    const TransferSummary s =
        summarizeTransfer(h, SiteState::basis(n, 0), SiteState::basis(n, outSite), cfg, exec);
    return {n, h.coupling.model, h.geometry.topology(), s.fMax, s.tPeak, s.deltaLambda, s.tau, s.boundaryPeak};
}

template <class RowFn>
std::vector<SweepRow> sweep(std::size_t nMin, std::size_t nMax, RowFn&& row, Execution exec) {
    std::vector<SweepRow> rows(nMax - nMin + 1);
    // Rows are written by index, so completion order does not matter.
    parallelFor(rows.size(), exec, [&](std::size_t i) { rows[i] = row(nMin + i); });
    return rows;
}

}  // namespace

std::vector<SweepRow> chainSweep(std::size_t nMin, std::size_t nMax, const CouplingSpec& coupling,
                                 const PeakSearchConfig& cfg, Execution exec) {
    if (nMin < 2 || nMin > nMax) throw DomainError("chain sweep needs 2 <= nMin <= nMax");
    coupling.validate();
    return sweep(
        nMin, nMax,
        [&](std::size_t n) {
            return sweepRow(buildChainHamiltonian(Geometry::uniformChain(n), coupling), n - 1, cfg, Execution::Serial);
        },
        exec);
}

std::vector<SweepRow> ringSweep(std::size_t nMin, std::size_t nMax, const CouplingSpec& coupling,
                                const PeakSearchConfig& cfg, Execution exec) {
    if (nMin < 3 || nMin > nMax) throw DomainError("ring sweep needs 3 <= nMin <= nMax");
    coupling.validate();
    return sweep(
        nMin, nMax,
        [&](std::size_t n) {
            return sweepRow(buildRingHamiltonian(n, coupling), ringOppositeSite(n), cfg, Execution::Serial);
        },
        exec);
}

std::vector<NormalizedTime> normalizedTimeCurve(std::size_t nMin, std::size_t nMax, const CouplingSpec& coupling,
                                                Execution exec) {
    if (nMin < 2 || nMin > nMax) throw DomainError("normalized time needs 2 <= nMin <= nMax");
    if (coupling.model != CouplingModel::Dipole) throw DomainError("normalized time is defined for dipole chains");
    coupling.validate();
    // Only the spectrum is needed; no peak search.
    std::vector<NormalizedTime> out(nMax - nMin + 1);
    parallelFor(out.size(), exec, [&](std::size_t i) {
        const std::size_t n = nMin + i;
        const auto h = buildChainHamiltonian(Geometry::uniformChain(n), coupling);
        const auto spec = decompose(h);
        const double gap = spec.eigenvalues(1) - spec.eigenvalues(0);
        const double len = h.geometry.length();
        out[i] = {n, std::numbers::pi / gap / (len * len * len)};
    });
    return out;
}

double dominantPeriod(const FidelityCurve& curve) {
    const std::size_t n = curve.values.size();
    if (n < 8 || curve.times.size() != n) throw DomainError("dominantPeriod: need at least 8 samples");
    const double span = curve.times.back() - curve.times.front();
    if (!(span > 0.0)) throw DomainError("dominantPeriod: zero time span");
    const double step = span / static_cast<double>(n - 1);
    for (std::size_t k = 1; k < n; ++k)
        if (std::abs(curve.times[k] - curve.times[k - 1] - step) > 1e-9 * step)
            throw DomainError("dominantPeriod: samples must be uniformly spaced");

    double mean = 0.0;
    for (double v : curve.values) mean += v;
    mean /= static_cast<double>(n);

    // Coarse periodogram over all bins.
    std::vector<double> centred(n);
    for (std::size_t k = 0; k < n; ++k) centred[k] = curve.values[k] - mean;
    std::vector<fftw_complex> spectrum(n / 2 + 1);
    {
        static std::mutex planner;  // FFTW planning is not thread-safe
        fftw_plan plan;
        {
            const std::lock_guard lock(planner);
            plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), centred.data(), spectrum.data(), FFTW_ESTIMATE);
        }
        fftw_execute(plan);
        const std::lock_guard lock(planner);
        fftw_destroy_plan(plan);
    }
    std::size_t bestBin = 1;
    double bestPower = -1.0;
    for (std::size_t j = 1; j <= n / 2; ++j) {
        const double p = spectrum[j][0] * spectrum[j][0] + spectrum[j][1] * spectrum[j][1];
        if (p > bestPower) {
            bestPower = p;
            bestBin = j;
        }
    }

    // Refine between the neighbouring bins with the exact single-frequency DFT.
    const auto power = [&](double omega) {
        Complex acc{0.0, 0.0};
        for (std::size_t k = 0; k < n; ++k) {
            const double ph = -omega * step * static_cast<double>(k);
            acc += centred[k] * Complex(std::cos(ph), std::sin(ph));
        }
        return std::norm(acc);
    };
    const double dOmega = 2.0 * std::numbers::pi / (step * static_cast<double>(n));
    const double lo = dOmega * (static_cast<double>(bestBin) - 1.0);
    const double hi = dOmega * (static_cast<double>(bestBin) + 1.0);
    const auto [omega, p] = goldenMaximize(power, std::max(lo, 0.5 * dOmega), hi, 1e-12 * hi);
    (void)p;
    return 2.0 * std::numbers::pi / omega;
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

void writeSweepCsv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << "n,model,topology,f_max,t_peak,delta_lambda,tau\n";
    for (const auto& r : rows) {
        os << r.n << ',' << modelName(r.model) << ',' << topologyName(r.topology) << ',' << formatDouble(r.fMax) << ','
           << formatDouble(r.tPeak) << ',' << formatDouble(r.deltaLambda) << ',' << formatOptional(r.tau) << '\n';
    }
}

nlohmann::json sweepToJson(const std::vector<SweepRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) {
        out.push_back({{"n", r.n},
                       {"model", modelName(r.model)},
                       {"topology", topologyName(r.topology)},
                       {"f_max", r.fMax},
                       {"t_peak", r.tPeak},
                       {"delta_lambda", r.deltaLambda},
                       {"tau", r.tau ? nlohmann::json(*r.tau) : nlohmann::json(nullptr)},
                       {"boundary_peak", r.boundaryPeak}});
    }
    return out;
}

nlohmann::json summaryToJson(const TransferSummary& s) {
    const auto opt = [](const std::optional<double>& x) { return x ? nlohmann::json(*x) : nlohmann::json(nullptr); };
    return {{"n", s.n},
            {"f_max", s.fMax},
            {"t_peak", s.tPeak},
            {"delta_lambda", s.deltaLambda},
            {"period", opt(s.period)},
            {"transfer_time", opt(s.transferTime)},
            {"tau", opt(s.tau)},
            {"length", s.length},
            {"window_end", s.windowEnd},
            {"boundary_peak", s.boundaryPeak}};
}

}  // namespace dipolink

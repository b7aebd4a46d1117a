// Copyright 2026 The dipolink Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file transfer.hpp
 * @brief Transfer metrics (F_max, peak time, splitting, period, tau) and
 *        N-sweeps for chains and rings.
 *
 * Two times are reported per configuration:
 * - tPeak: the earliest time at which F(t) attains its maximum over the
 *   search window, found numerically.
 * - transferTime: pi / dLambda, half the beating period of the two lowest
 *   eigenstates. tau = transferTime / L^3 is the transfer time of the same
 *   chain rescaled to unit length.
 */

#pragma once

#include "dipolink/execution.hpp"
#include "dipolink/lattice.hpp"
#include "dipolink/spectral.hpp"

#include <json.hpp>

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

namespace dipolink {

struct PeakSearchConfig {
    /// Window end; unset selects 3 pi / dLambda for chains and
    /// max(3 pi / dLambda, 10 N) for rings.
    std::optional<double> tMax;
    std::size_t minGridPoints = 5000;
    /// Grid density relative to the fastest oscillation 2 pi / bandwidth.
    double samplesPerPeriod = 16.0;
    std::size_t maxGridPoints = 20'000'000;
    double timeTolerance = 1e-9;
    /// Earliest local maximum within this of the global maximum wins.
    double peakTolerance = 1e-9;
};

struct PeakResult {
    double fMax = 0.0;
    double tPeak = 0.0;
    double windowEnd = 0.0;
    std::size_t gridPoints = 0;
    std::size_t refinedCandidates = 0;
    double coarseMax = 0.0;   ///< best raw grid value
    bool boundaryPeak = false;  ///< maximum sits on the window's right edge
};

/// Coarse grid over [0, tMax] followed by golden-section refinement of every
/// grid local maximum that could exceed the best grid value.
PeakResult findFirstPeak(const TransitionAmplitude& amp, double tMax, const PeakSearchConfig& cfg,
                         Execution exec = Execution::Parallel);

struct TransferSummary {
    std::size_t n = 0;
    double fMax = 0.0;
    double tPeak = 0.0;
    double deltaLambda = 0.0;              ///< E_1 - E_0
    std::optional<double> period;          ///< 2 pi / dLambda
    std::optional<double> transferTime;    ///< pi / dLambda
    std::optional<double> tau;             ///< transferTime / L^3, chains only
    double length = 0.0;
    double windowEnd = 0.0;
    bool boundaryPeak = false;
};

/// Window used when PeakSearchConfig::tMax is unset.
double defaultWindow(const ExcitationHamiltonian& h, const SpectralDecomposition& spec);

/// A splitting below this fraction of the spectral width is treated as a
/// degeneracy (no beating period).
inline constexpr double kDegenerateGap = 1e-9;

TransferSummary summarizeTransfer(const ExcitationHamiltonian& h, const SpectralDecomposition& spec,
                                  const SiteState& input, const SiteState& output,
                                  const PeakSearchConfig& cfg = {}, Execution exec = Execution::Parallel);
TransferSummary summarizeTransfer(const ExcitationHamiltonian& h, const SiteState& input, const SiteState& output,
                                  const PeakSearchConfig& cfg = {}, Execution exec = Execution::Parallel);

struct SweepRow {
    std::size_t n = 0;
    CouplingModel model = CouplingModel::Dipole;
    Topology topology = Topology::Chain;
    double fMax = 0.0;
    double tPeak = 0.0;
    double deltaLambda = 0.0;
    std::optional<double> tau;
    bool boundaryPeak = false;
};

/// Uniform chains, input |1>, output |N>.
std::vector<SweepRow> chainSweep(std::size_t nMin, std::size_t nMax, const CouplingSpec& coupling,
                                 const PeakSearchConfig& cfg = {}, Execution exec = Execution::Parallel);

/// Rings, input |1>, output at the opposite site: |N/2 + 1> for even N,
/// |(N+1)/2> for odd N.
std::vector<SweepRow> ringSweep(std::size_t nMin, std::size_t nMax, const CouplingSpec& coupling,
                                const PeakSearchConfig& cfg = {}, Execution exec = Execution::Parallel);

/// 0-based index of the ring output site opposite site 0.
std::size_t ringOppositeSite(std::size_t n);

struct NormalizedTime {
    std::size_t n = 0;
    double tau = 0.0;
};

/// tau(N) for uniform dipole chains.
std::vector<NormalizedTime> normalizedTimeCurve(std::size_t nMin, std::size_t nMax, const CouplingSpec& coupling = {},
                                                Execution exec = Execution::Parallel);

/// Dominant oscillation period of a sampled curve: periodogram maximum over
/// all DFT bins, refined by golden section in frequency.
double dominantPeriod(const FidelityCurve& curve);

void writeSweepCsv(std::ostream& os, const std::vector<SweepRow>& rows);
nlohmann::json sweepToJson(const std::vector<SweepRow>& rows);
nlohmann::json summaryToJson(const TransferSummary& s);

}  // namespace dipolink

// Copyright 2026 The dipolink Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file optimize.hpp
 * @brief Mirror-symmetric placement search on a unit-length chain, and
 *        encoded multi-site end states.
 *
 * A mirror-symmetric chain of n sites has n-1 gaps g_1..g_{n-1} with
 * g_i = g_{n-i} and sum g = 1. The free coordinates are the outer gaps
 * g_1..g_k, k = ceil((n-1)/2) - 1; the central gap (or central pair) absorbs
 * the remainder.
 */

#pragma once

#include "dipolink/execution.hpp"
#include "dipolink/lattice.hpp"
#include "dipolink/spectral.hpp"
#include "dipolink/transfer.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace dipolink {

enum class Objective { MinimizeTau };

struct SearchConfig {
    std::size_t restarts = 10;   ///< perturbed starts in addition to the uniform one
    std::uint64_t seed = 0;
    double gapMin = 0.05;
    double perturbation = 0.05;  ///< half-width of the start perturbation, per free gap
    double initialStep = 0.02;   ///< simplex edge length
    double xTolerance = 1e-7;    ///< simplex diameter at convergence
    double fTolerance = 1e-12;   ///< objective spread at convergence
    std::size_t maxIterations = 400;
    PeakSearchConfig peak{};
    CouplingSpec coupling{};
};

struct PlacementEvaluation {
    std::vector<double> freeGaps;
    double objective = 0.0;  ///< tau, or +inf when rejected
    bool feasible = false;
    TransferSummary summary{};
};

struct PlacementResult {
    Geometry geometry = Geometry::uniformChain(2);
    TransferSummary summary{};
    std::vector<double> gaps;         ///< all n-1 gaps of the returned chain
    std::vector<double> startGaps;    ///< free gaps of the uniform start
    double startObjective = 0.0;
    double objective = 0.0;
    bool feasible = false;
    bool converged = false;
    std::size_t evaluations = 0;
    std::size_t trajectoryLength = 0;  ///< iterations of the winning restart
    double minFidelity = 0.0;
};

/// Number of free gaps of a mirror-symmetric n-site chain.
std::size_t freeGapCount(std::size_t n);

/// Unit-length mirror-symmetric chain from its free gaps. Positions are
/// rounded to multiples of 2^-40, which keeps reflection about 1/2 exact.
Geometry mirrorChain(std::size_t n, const std::vector<double>& freeGaps);

/// Free gaps of the uniform unit chain.
std::vector<double> uniformFreeGaps(std::size_t n);

PlacementEvaluation evaluatePlacement(std::size_t n, const std::vector<double>& freeGaps, double minFidelity,
                                      const SearchConfig& search);

/// Nelder-Mead over the free gaps from the uniform start and seeded
/// perturbations of it. Rejected points score +inf. No feasible point is
/// reported through PlacementResult::feasible, with the highest-fidelity
/// point returned.
PlacementResult optimizePlacement(std::size_t n, Objective objective, double minFidelity, const SearchConfig& search = {},
                                  Execution exec = Execution::Parallel);

/// Input: first `width` components of the lowest eigenvector of h,
/// renormalized. Output: its mirror image on the last `width` sites.
std::pair<SiteState, SiteState> encodedEndStates(const ExcitationHamiltonian& h, std::size_t width);

/// Summary for input |r>, output |s> (1-based).
TransferSummary offEndTransferCheck(const ExcitationHamiltonian& h, std::size_t r, std::size_t s,
                                    const PeakSearchConfig& cfg = {}, Execution exec = Execution::Parallel);

nlohmann::json placementToJson(const PlacementResult& r);

}  // namespace dipolink

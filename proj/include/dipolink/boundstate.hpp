// Copyright 2026 The dipolink Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file boundstate.hpp
 * @brief q-spin model of the two end-localized bound states of a uniform
 *        dipole chain and its asymptotic prediction of the splitting.
 *
 * |B> = sum_n a_n |n>, |E> = sum_n a_n |N+1-n>, n = 1..q, with a_n taken from
 * the lowest eigenvector of the leading q x q block of H(sourceN). Then
 *
 *   dLambda = 2 <B|H|E> ~= C [ Q / L^3 + a R / L^4 ],
 *   Q = sum_{n,m} a_n a_m,   R = sum_{n,m} 3 a_n a_m (n + m - 2).
 */

#pragma once

#include "dipolink/lattice.hpp"

#include <json.hpp>

#include <cstddef>
#include <vector>

namespace dipolink {

struct BoundStateModel {
    std::size_t q = 0;
    std::vector<double> coefficients;  ///< a_1..a_q, unit norm, a_1 > 0
    double qSum = 0.0;                 ///< Q
    double rSum = 0.0;                 ///< R
    std::size_t sourceN = 0;
};

/// Requires 1 <= q <= sourceN / 2.
BoundStateModel fitBoundState(std::size_t q, std::size_t sourceN, const CouplingSpec& coupling = {});

/// Predicted dLambda = C [Q/L^3 + a R/L^4]; throws ExpansionInvalid when the
/// first-order value is not positive.
double predictSplitting(const BoundStateModel& model, double lengthL, double spacing = 1.0,
                        const CouplingSpec& coupling = {});

struct BoundStatePrediction {
    double deltaLambda = 0.0;
    double transferTime = 0.0;  ///< pi / dLambda
    double tau = 0.0;           ///< transferTime / L^3
};
BoundStatePrediction predictTransfer(const BoundStateModel& model, double lengthL, double spacing = 1.0,
                                     const CouplingSpec& coupling = {});

struct ElementExpansion {
    double exact = 0.0;
    double firstOrder = 0.0;
    double relativeError() const { return (firstOrder - exact) / exact; }
};

/// <n|H|N+1-m> exactly and to first order in (n + m - 2); n, m are 1-based.
ElementExpansion taylorVsExactElement(const BoundStateModel& model, std::size_t n, std::size_t m, std::size_t bigN,
                                      double spacing = 1.0, const CouplingSpec& coupling = {});

/// 2 <B|H|E> summed over the exact matrix elements of a uniform chain.
double directSplitting(const BoundStateModel& model, std::size_t bigN, double spacing = 1.0,
                       const CouplingSpec& coupling = {});

/// |B> and |E> embedded in an N-site chain.
std::vector<double> beginState(const BoundStateModel& model, std::size_t bigN);
std::vector<double> endState(const BoundStateModel& model, std::size_t bigN);

nlohmann::json boundStateToJson(const BoundStateModel& model);

}  // namespace dipolink

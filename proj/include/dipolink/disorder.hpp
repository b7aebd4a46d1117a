// Copyright 2026 The dipolink Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file disorder.hpp
 * @brief Monte Carlo failure rate of end-to-end transfer under random
 *        placement errors.
 *
 * Every site, ends included, is displaced independently. The perturbed chain
 * is evolved for exactly the clean peak time; a sample fails when its
 * fidelity there is below the classical bound 2/3. Sample k draws from its
 * own generator seeded by (seed, k), so results do not depend on threading.
 */

#pragma once

#include "dipolink/execution.hpp"
#include "dipolink/lattice.hpp"
#include "dipolink/transfer.hpp"

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

namespace dipolink {

enum class NoiseModel { UniformPerSite, GaussianPerSite };

std::string_view noiseModelName(NoiseModel m);
NoiseModel parseNoiseModel(std::string_view s);

inline constexpr double kClassicalFidelity = 2.0 / 3.0;

struct DisorderConfig {
    double errorFraction = 0.02;  ///< epsilon, relative to the mean spacing a
    std::size_t samples = 10000;
    std::uint64_t seed = 0;
    NoiseModel noiseModel = NoiseModel::UniformPerSite;
    std::size_t maxRedraws = 1000;  ///< per sample

    /// 0 <= epsilon < 0.5 * min gap / a, samples >= 1.
    void validate(const Geometry& g) const;
};

struct DisorderSample {
    double fidelity = 0.0;
    bool failed = false;
    std::size_t redraws = 0;
};

struct DisorderReport {
    std::size_t failures = 0;
    double failureRate = 0.0;
    double meanFidelity = 0.0;  ///< mean F(t_nominal)
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::size_t redraws = 0;
    double tNominal = 0.0;
    double cleanFMax = 0.0;
    DisorderConfig config{};
    std::vector<DisorderSample> perSample;
};

/// Positions of sample k (after any redraws).
std::vector<double> perturbedPositions(const Geometry& g, const DisorderConfig& config, std::size_t k,
                                       std::size_t* redraws = nullptr);

DisorderReport runDisorder(const Geometry& geometry, const CouplingSpec& coupling, const DisorderConfig& config,
                           const PeakSearchConfig& peak = {}, Execution exec = Execution::Parallel);

void writeSamplesCsv(std::ostream& os, const DisorderReport& r);
nlohmann::json disorderToJson(const DisorderReport& r);

}  // namespace dipolink

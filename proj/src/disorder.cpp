// Copyright 2026 The dipolink Authors
// SPDX-License-Identifier: Apache-2.0

#include "dipolink/disorder.hpp"

#include "dipolink/error.hpp"
#include "dipolink/io.hpp"
#include "dipolink/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <string>

namespace dipolink {

std::string_view noiseModelName(NoiseModel m) {
    return m == NoiseModel::UniformPerSite ? "uniform" : "gaussian";
}

NoiseModel parseNoiseModel(std::string_view s) {
    if (s == "uniform") return NoiseModel::UniformPerSite;
    if (s == "gaussian") return NoiseModel::GaussianPerSite;
    throw DomainError("unknown noise model '" + std::string(s) + "' (expected uniform or gaussian)");
}

namespace {

double meanSpacing(const Geometry& g) { return g.length() / static_cast<double>(g.size() - 1); }

double minGap(const Geometry& g) {
    const auto& p = g.positions();
    double m = p[1] - p[0];
    for (std::size_t i = 2; i < p.size(); ++i) m = std::min(m, p[i] - p[i - 1]);
    return m;
}

std::mt19937_64 sampleEngine(std::uint64_t seed, std::uint64_t k) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(k >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

void DisorderConfig::validate(const Geometry& g) const {
    if (g.topology() != Topology::Chain) throw DomainError("disorder analysis is defined for chains");
    if (samples < 1) throw DomainError("disorder: samples must be >= 1");
    if (!(errorFraction >= 0.0)) throw DomainError("disorder: error fraction must be >= 0");
    if (!(errorFraction < 0.5 * minGap(g) / meanSpacing(g)))
        throw DomainError("disorder: error fraction must be below half the smallest gap");
}

std::vector<double> perturbedPositions(const Geometry& g, const DisorderConfig& config, std::size_t k,
                                       std::size_t* redraws) {
    const double scale = config.errorFraction * meanSpacing(g);
    const auto& base = g.positions();
    auto rng = sampleEngine(config.seed, k);
    std::uniform_real_distribution<double> uniform(-scale, scale);
    std::normal_distribution<double> normal(0.0, scale);

    std::vector<double> x(base.size());
    for (std::size_t attempt = 0; attempt <= config.maxRedraws; ++attempt) {
        for (std::size_t i = 0; i < x.size(); ++i) {
            double d = 0.0;
            if (scale > 0.0) d = config.noiseModel == NoiseModel::UniformPerSite ? uniform(rng) : normal(rng);
            x[i] = base[i] + d;
        }
        if (std::adjacent_find(x.begin(), x.end(), std::greater_equal<>()) == x.end()) {
            if (redraws) *redraws = attempt;
            return x;
        }
    }
    throw NumericError("disorder: sample " + std::to_string(k) + " kept producing non-increasing positions");
}

DisorderReport runDisorder(const Geometry& geometry, const CouplingSpec& coupling, const DisorderConfig& config,
                           const PeakSearchConfig& peak, Execution exec) {
    config.validate(geometry);
    coupling.validate();
    const std::size_t n = geometry.size();
    const auto input = SiteState::basis(n, 0);
    const auto output = SiteState::basis(n, n - 1);
    const auto clean = summarizeTransfer(buildChainHamiltonian(geometry, coupling), input, output, peak, exec);

    DisorderReport r;
    r.samples = config.samples;
    r.seed = config.seed;
    r.config = config;
    r.tNominal = clean.tPeak;
    r.cleanFMax = clean.fMax;
    r.perSample.resize(config.samples);

    parallelFor(
        config.samples, exec,
        [&](std::size_t k) {
            DisorderSample s;
            const auto g = Geometry::chain(perturbedPositions(geometry, config, k, &s.redraws));
            const auto spec = decompose(buildChainHamiltonian(g, coupling));
            s.fidelity = TransitionAmplitude(spec, input, output).fidelityAt(r.tNominal);
            s.failed = s.fidelity < kClassicalFidelity;
            r.perSample[k] = s;
        },
        64);

    // Summed in sample order so the aggregate is independent of scheduling.
    double sum = 0.0;
    for (const auto& s : r.perSample) {
        sum += s.fidelity;
        r.failures += s.failed ? 1 : 0;
        r.redraws += s.redraws;
    }
    r.failureRate = static_cast<double>(r.failures) / static_cast<double>(r.samples);
    r.meanFidelity = sum / static_cast<double>(r.samples);
    return r;
}

void writeSamplesCsv(std::ostream& os, const DisorderReport& r) {
    os << "sample,F_at_t_nominal,failed\n";
    for (std::size_t k = 0; k < r.perSample.size(); ++k)
        os << k << ',' << formatDouble(r.perSample[k].fidelity) << ',' << (r.perSample[k].failed ? 1 : 0) << '\n';
}

nlohmann::json disorderToJson(const DisorderReport& r) {
    return {{"failures", r.failures},
            {"failure_rate", r.failureRate},
            {"mean_f_at_t_nominal", r.meanFidelity},
            {"samples", r.samples},
            {"seed", r.seed},
            {"redraws", r.redraws},
            {"t_nominal", r.tNominal},
            {"clean_f_max", r.cleanFMax},
            {"config",
             {{"error_fraction", r.config.errorFraction},
              {"samples", r.config.samples},
              {"seed", r.config.seed},
              {"noise_model", std::string(noiseModelName(r.config.noiseModel))}}}};
}

}  // namespace dipolink

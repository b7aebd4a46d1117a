// Copyright 2026 The dipolink Authors
// SPDX-License-Identifier: Apache-2.0

#include "dipolink/boundstate.hpp"

#include "dipolink/error.hpp"
#include "dipolink/spectral.hpp"

#include <cmath>
#include <numbers>

namespace dipolink {

BoundStateModel fitBoundState(std::size_t q, std::size_t sourceN, const CouplingSpec& coupling) {
    if (q < 1 || 2 * q > sourceN) throw DomainError("bound state: need 1 <= q <= sourceN/2");
    if (coupling.model != CouplingModel::Dipole) throw DomainError("bound state model is defined for dipole chains");
    const auto h = buildChainHamiltonian(Geometry::uniformChain(sourceN), coupling);
    const auto qi = static_cast<Eigen::Index>(q);
    // Leading block keeps the on-site energies of the full chain.
    const Eigen::MatrixXd corner = h.matrix.topLeftCorner(qi, qi);
    const auto spec = decompose(corner);

    BoundStateModel model;
    model.q = q;
    model.sourceN = sourceN;
    model.coefficients.resize(q);
    const double sign = spec.eigenvectors(0, 0) < 0.0 ? -1.0 : 1.0;
    for (std::size_t n = 0; n < q; ++n)
        model.coefficients[n] = sign * spec.eigenvectors(static_cast<Eigen::Index>(n), 0);

    for (std::size_t n = 0; n < q; ++n) {
        for (std::size_t m = 0; m < q; ++m) {
            const double prod = model.coefficients[n] * model.coefficients[m];
            model.qSum += prod;
            model.rSum += 3.0 * prod * static_cast<double>(n + m);  // (n+1)+(m+1)-2
        }
    }
    return model;
}

double predictSplitting(const BoundStateModel& model, double lengthL, double spacing, const CouplingSpec& coupling) {
    if (!(lengthL > 0.0)) throw DomainError("predictSplitting: L must be > 0");
    coupling.validate();
    const double l3 = lengthL * lengthL * lengthL;
    const double gap = coupling.c * (model.qSum / l3 + spacing * model.rSum / (l3 * lengthL));
    if (!(gap > 0.0)) throw ExpansionInvalid("first-order splitting is not positive; chain too short for the expansion");
    return gap;
}

BoundStatePrediction predictTransfer(const BoundStateModel& model, double lengthL, double spacing,
                                     const CouplingSpec& coupling) {
    BoundStatePrediction p;
    p.deltaLambda = predictSplitting(model, lengthL, spacing, coupling);
    p.transferTime = std::numbers::pi / p.deltaLambda;
    p.tau = p.transferTime / (lengthL * lengthL * lengthL);
    return p;
}

ElementExpansion taylorVsExactElement(const BoundStateModel& model, std::size_t n, std::size_t m, std::size_t bigN,
                                      double spacing, const CouplingSpec& coupling) {
    if (n < 1 || m < 1 || n > model.q || m > model.q) throw DomainError("element indices must lie in 1..q");
    if (bigN + 1 <= n + m) throw DomainError("non-positive separation N+1-m-n");
    coupling.validate();
    const double sep = spacing * static_cast<double>(bigN + 1 - m - n);
    const double len = spacing * static_cast<double>(bigN - 1);
    const double delta = static_cast<double>(m + n - 2);
    ElementExpansion e;
    e.exact = coupling.c / (2.0 * sep * sep * sep);
    e.firstOrder = coupling.c / (2.0 * len * len * len) + 3.0 * coupling.c * spacing * delta / (2.0 * len * len * len * len);
    return e;
}

double directSplitting(const BoundStateModel& model, std::size_t bigN, double spacing, const CouplingSpec& coupling) {
    if (bigN < 2 * model.q) throw DomainError("directSplitting: chain shorter than 2q");
    const auto h = buildChainHamiltonian(Geometry::uniformChain(bigN, spacing), coupling);
    double sum = 0.0;
    for (std::size_t n = 0; n < model.q; ++n)
        for (std::size_t m = 0; m < model.q; ++m)
            sum += model.coefficients[n] * model.coefficients[m] *
                   h.matrix(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(bigN - 1 - m));
    return 2.0 * sum;
}

std::vector<double> beginState(const BoundStateModel& model, std::size_t bigN) {
    if (bigN < model.q) throw DomainError("chain shorter than q");
    std::vector<double> v(bigN, 0.0);
    for (std::size_t n = 0; n < model.q; ++n) v[n] = model.coefficients[n];
    return v;
}

std::vector<double> endState(const BoundStateModel& model, std::size_t bigN) {
    if (bigN < model.q) throw DomainError("chain shorter than q");
    std::vector<double> v(bigN, 0.0);
    for (std::size_t n = 0; n < model.q; ++n) v[bigN - 1 - n] = model.coefficients[n];
    return v;
}

nlohmann::json boundStateToJson(const BoundStateModel& model) {
    return {{"q", model.q}, {"source_n", model.sourceN}, {"a", model.coefficients}, {"Q", model.qSum}, {"R", model.rSum}};
}

}  // namespace dipolink

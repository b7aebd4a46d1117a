// Copyright 2026 The dipolink Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dipolink/boundstate.hpp"
#include "dipolink/error.hpp"
#include "dipolink/transfer.hpp"

#include <cmath>
#include <numeric>

using namespace dipolink;

TEST_CASE("four-spin fit from the 14-site chain") {
    const auto m = fitBoundState(4, 14);
    REQUIRE(m.coefficients.size() == 4);
    CHECK(m.qSum == doctest::Approx(0.325).epsilon(0.005 / 0.325));
    CHECK(m.rSum == doctest::Approx(-0.957).epsilon(0.005 / 0.957));
    CHECK(m.coefficients[0] > 0.0);
    const double norm = std::inner_product(m.coefficients.begin(), m.coefficients.end(), m.coefficients.begin(), 0.0);
    CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
    const double sum = std::accumulate(m.coefficients.begin(), m.coefficients.end(), 0.0);
    CHECK(m.qSum == doctest::Approx(sum * sum).epsilon(1e-12));
    CHECK(m.qSum > 0.0);
    CHECK(m.qSum < 1.0);
}

TEST_CASE("single-site truncation") {
    const auto m = fitBoundState(1, 14);
    CHECK(m.coefficients[0] == 1.0);
    CHECK(m.qSum == 1.0);
    CHECK(m.rSum == 0.0);
    // Two isolated end spins: the bare pair splitting C/L^3.
    CHECK(predictSplitting(m, 10.0) == doctest::Approx(2.0 / 1000.0).epsilon(1e-15));
}

TEST_CASE("fit depends weakly on the source chain") {
    const auto a = fitBoundState(4, 14);
    const auto b = fitBoundState(4, 20);
    CHECK(std::abs(a.qSum - b.qSum) / std::abs(a.qSum) < 0.01);
    CHECK(std::abs(a.rSum - b.rSum) / std::abs(a.rSum) < 0.01);
}

TEST_CASE("predicted tau converges on the exact value") {
    const auto m = fitBoundState(4, 14);
    double previous = 1e300;
    double first = 0.0;
    double last = 0.0;
    int increases = 0;
    for (std::size_t n = 14; n <= 23; ++n) {
        CAPTURE(n);
        const auto g = Geometry::uniformChain(n);
        const auto spec = decompose(buildChainHamiltonian(g, {}));
        const double exactTau = std::numbers::pi / (spec.eigenvalues(1) - spec.eigenvalues(0)) /
                                std::pow(static_cast<double>(n - 1), 3);
        const auto p = predictTransfer(m, static_cast<double>(n - 1));
        const double residual = std::abs(p.tau - exactTau) / exactTau;
        if (n == 14) first = residual;
        if (n == 23) last = residual;
        if (n > 14) CHECK(residual < first);
        if (n > 16 && residual > previous) ++increases;
        previous = residual;
        CHECK(p.transferTime == doctest::Approx(std::numbers::pi / p.deltaLambda));
    }
    CHECK(last < first);
    // One even/odd wobble at N = 16; monotone after it.
    CHECK(increases == 0);
    CHECK(last < 0.05);
}

TEST_CASE("two lowest eigenvectors are the bound-state pair") {
    const auto m = fitBoundState(4, 14);
    for (std::size_t n = 8; n <= 23; ++n) {
        CAPTURE(n);
        const auto spec = decompose(buildChainHamiltonian(Geometry::uniformChain(n), {}));
        const auto b = beginState(m, n);
        const auto e = endState(m, n);
        double plus = 0.0;
        double minus = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto ii = static_cast<Eigen::Index>(i);
            // Positive hopping puts the antisymmetric combination lowest.
            minus += (b[i] - e[i]) / std::sqrt(2.0) * spec.eigenvectors(ii, 0);
            plus += (b[i] + e[i]) / std::sqrt(2.0) * spec.eigenvectors(ii, 1);
        }
        CHECK(std::abs(plus) > 0.99);
        CHECK(std::abs(minus) > 0.99);
    }
}

TEST_CASE("first-order element expansion") {
    const auto m = fitBoundState(4, 14);
    for (std::size_t n : {5u, 11u, 40u}) {
        const auto e = taylorVsExactElement(m, 1, 1, n);
        CHECK(e.exact == e.firstOrder);
    }
    const auto e = taylorVsExactElement(m, 1, 2, 20);
    CHECK(e.exact == doctest::Approx(1.0 / (18.0 * 18.0 * 18.0)).epsilon(1e-14));
    CHECK(e.firstOrder == doctest::Approx(1.0 / std::pow(19.0, 3) + 3.0 / std::pow(19.0, 4)).epsilon(1e-14));
    CHECK(std::abs(e.relativeError()) < 0.02);
    // Second-order terms shrink as 1/L^2.
    const double r20 = std::abs(taylorVsExactElement(m, 2, 3, 20).relativeError());
    const double r40 = std::abs(taylorVsExactElement(m, 2, 3, 40).relativeError());
    CHECK(r40 < r20 / 3.0);
    CHECK_THROWS_AS(taylorVsExactElement(m, 0, 1, 20), DomainError);
    CHECK_THROWS_AS(taylorVsExactElement(m, 5, 1, 20), DomainError);
    CHECK_THROWS_AS(taylorVsExactElement(m, 4, 4, 7), DomainError);
}

TEST_CASE("direct splitting approaches the expansion") {
    const auto m = fitBoundState(4, 14);
    double prev = 1e300;
    for (std::size_t n : {14u, 20u, 30u, 60u}) {
        const double direct = directSplitting(m, n);
        const double model = predictSplitting(m, static_cast<double>(n - 1));
        const double rel = std::abs(model - direct) / direct;
        CHECK(rel < prev);
        prev = rel;
    }
    CHECK_THROWS_AS(directSplitting(m, 7), DomainError);
}

TEST_CASE("invalid expansions and inputs") {
    const auto m = fitBoundState(4, 14);
    // Q/L^3 + R/L^4 <= 0 for L <= -R/Q.
    CHECK_THROWS_AS(predictSplitting(m, 2.0), ExpansionInvalid);
    CHECK_THROWS_AS(predictSplitting(m, 0.0), DomainError);
    CHECK_THROWS_AS(fitBoundState(0, 14), DomainError);
    CHECK_THROWS_AS(fitBoundState(8, 14), DomainError);
    CHECK_NOTHROW(fitBoundState(7, 14));
    CHECK_THROWS_AS(fitBoundState(4, 14, {CouplingModel::NearestNeighbour}), DomainError);
    CHECK_THROWS_AS(beginState(m, 3), DomainError);
}

TEST_CASE("states and JSON") {
    const auto m = fitBoundState(4, 14);
    const auto b = beginState(m, 10);
    const auto e = endState(m, 10);
    CHECK(b[0] == m.coefficients[0]);
    CHECK(e[9] == m.coefficients[0]);
    CHECK(e[6] == m.coefficients[3]);
    CHECK(std::inner_product(b.begin(), b.end(), e.begin(), 0.0) == 0.0);
    const auto j = boundStateToJson(m);
    CHECK(j["q"] == 4);
    CHECK(j["source_n"] == 14);
    CHECK(j["a"].size() == 4);
    CHECK(j["Q"].get<double>() == m.qSum);
}

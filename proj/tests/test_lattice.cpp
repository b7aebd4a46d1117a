// Copyright 2026 The dipolink Authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dipolink/error.hpp"
#include "dipolink/lattice.hpp"
#include "dipolink/spectral.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace dipolink;

namespace {

Eigen::MatrixXd reversal(std::size_t n) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1 - i)) = 1.0;
    return p;
}

std::vector<double> sortedEigenvalues(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    std::vector<double> v(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    return v;
}

}  // namespace

TEST_CASE("geometry validation") {
    CHECK_THROWS_AS(Geometry::chain({0.0}), InvalidGeometry);
    CHECK_THROWS_AS(Geometry::chain({0.0, 1.0, 1.0}), InvalidGeometry);
    CHECK_THROWS_AS(Geometry::chain({0.0, 2.0, 1.0}), InvalidGeometry);
    CHECK_THROWS_AS(Geometry::chain({0.0, NAN}), InvalidGeometry);
    CHECK_THROWS_AS(Geometry::ring(2), InvalidGeometry);
    CHECK_THROWS_AS(Geometry::uniformChain(4, 0.0), InvalidGeometry);
    CHECK_THROWS_AS(buildChainHamiltonian(Geometry::ring(4), {}), InvalidGeometry);
    CHECK_THROWS_AS((CouplingSpec{CouplingModel::Dipole, -1.0}.validate()), DomainError);
    CHECK_THROWS_AS(parseCouplingModel("xy"), DomainError);
    CHECK(parseCouplingModel("nn") == CouplingModel::NearestNeighbour);
    CHECK(parseTopology("ring") == Topology::Ring);
}

TEST_CASE("ring distances use the minimal image") {
    const auto r = Geometry::ring(6);
    CHECK(r.distance(0, 5) == 1.0);
    CHECK(r.distance(0, 3) == 3.0);
    CHECK(r.distance(1, 5) == 2.0);
    CHECK(r.adjacent(0, 5));
    CHECK_FALSE(r.adjacent(0, 2));
    CHECK(r.length() == 6.0);
}

TEST_CASE("two-site dipole chain") {
    const auto h = buildChainHamiltonian(Geometry::uniformChain(2), {});
    CHECK(h.matrix(0, 0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(h.matrix(0, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(h.matrix(1, 1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(h.groundEnergy == doctest::Approx(-1.0).epsilon(1e-15));
}

TEST_CASE("three-site dipole chain") {
    const auto h = buildChainHamiltonian(Geometry::uniformChain(3), {});
    CHECK(h.matrix(0, 1) == doctest::Approx(1.0));
    CHECK(h.matrix(1, 2) == doctest::Approx(1.0));
    CHECK(h.matrix(0, 2) == doctest::Approx(0.125));
    CHECK(h.matrix(0, 0) == doctest::Approx(0.125));
    CHECK(h.matrix(1, 1) == doctest::Approx(1.875));
    CHECK(h.matrix(2, 2) == doctest::Approx(0.125));
    CHECK(h.groundEnergy == doctest::Approx(-2.125));
}

TEST_CASE("two-site nearest-neighbour chain transfers like the dipole chain") {
    // Heisenberg exchange flips the hopping sign; |f| is unchanged.
    const auto d = buildChainHamiltonian(Geometry::uniformChain(2), {CouplingModel::Dipole});
    const auto n = buildChainHamiltonian(Geometry::uniformChain(2), {CouplingModel::NearestNeighbour});
    const auto sd = decompose(d);
    const auto sn = decompose(n);
    const auto in = SiteState::basis(2, 0);
    const auto out = SiteState::basis(2, 1);
    const TransitionAmplitude fd(sd, in, out);
    const TransitionAmplitude fn(sn, in, out);
    for (double t = 0.0; t < 10.0; t += 0.37) CHECK(std::abs(fd(t)) == doctest::Approx(std::abs(fn(t))).epsilon(1e-12));
}

TEST_CASE("ring examples") {
    const auto h4 = buildRingHamiltonian(4, {});
    CHECK(h4.matrix(0, 1) == doctest::Approx(1.0));
    CHECK(h4.matrix(0, 3) == doctest::Approx(1.0));
    CHECK(h4.matrix(0, 2) == doctest::Approx(0.125));
    CHECK(h4.matrix(1, 3) == doctest::Approx(0.125));
    const auto h3 = buildRingHamiltonian(3, {});
    CHECK(h3.matrix(0, 1) == doctest::Approx(1.0));
    CHECK(h3.matrix(0, 2) == doctest::Approx(1.0));
    CHECK(h3.matrix(1, 2) == doctest::Approx(1.0));
}

TEST_CASE("ring translation invariance and Bloch energies") {
    for (std::size_t n : {3u, 4u, 5u, 6u, 7u, 10u}) {
        CAPTURE(n);
        for (auto model : {CouplingModel::Dipole, CouplingModel::NearestNeighbour}) {
            const auto h = buildRingHamiltonian(n, {model});
            const auto ni = static_cast<Eigen::Index>(n);
            for (Eigen::Index i = 0; i < ni; ++i)
                for (Eigen::Index j = 0; j < ni; ++j)
                    CHECK(h.matrix(i, j) == h.matrix((i + 1) % ni, (j + 1) % ni));
            auto bloch = ringBlochEnergies(n, {model});
            for (auto& e : bloch) e += h.matrix(0, 0);
            std::sort(bloch.begin(), bloch.end());
            const auto numeric = sortedEigenvalues(h.matrix);
            for (std::size_t m = 0; m < n; ++m) CHECK(numeric[m] == doctest::Approx(bloch[m]).epsilon(1e-10));
        }
    }
    const auto e3 = ringBlochEnergies(3, {});
    for (std::size_t m = 0; m < 3; ++m)
        CHECK(e3[m] == doctest::Approx(2.0 * std::cos(2.0 * M_PI * static_cast<double>(m) / 3.0)));
    const auto e8 = ringBlochEnergies(8, {});
    CHECK(*std::max_element(e8.begin(), e8.end()) == e8[0]);
}

TEST_CASE("matrices are exactly symmetric") {
    for (std::size_t n = 2; n <= 12; ++n) {
        for (auto model : {CouplingModel::Dipole, CouplingModel::NearestNeighbour}) {
            const auto h = buildChainHamiltonian(Geometry::uniformChain(n, 0.7), {model, 1.3});
            CHECK(h.matrix == h.matrix.transpose());
        }
    }
    const auto g = Geometry::chain({0.0, 0.3, 1.1, 1.15, 2.9});
    const auto h = buildChainHamiltonian(g, {});
    CHECK(h.matrix == h.matrix.transpose());
}

TEST_CASE("mirror-symmetric chains commute with site reversal") {
    const auto g = Geometry::chain({0.0, 0.25, 0.5, 0.75, 1.0});
    CHECK(g.isMirrorSymmetric());
    const auto h = buildChainHamiltonian(g, {});
    const auto p = reversal(5);
    CHECK((p * h.matrix * p - h.matrix).cwiseAbs().maxCoeff() == 0.0);
    CHECK_FALSE(Geometry::chain({0.0, 0.2, 1.0}).isMirrorSymmetric());
}

TEST_CASE("scaling law") {
    for (auto model : {CouplingModel::Dipole, CouplingModel::NearestNeighbour}) {
        const auto h1 = buildChainHamiltonian(Geometry::uniformChain(7), {model});
        const double s = 1.7;
        const auto hs = buildChainHamiltonian(Geometry::uniformChain(7, s), {model});
        const double k = 1.0 / (s * s * s);
        CHECK(hs.groundEnergy == doctest::Approx(k * h1.groundEnergy).epsilon(1e-13));
        CHECK((hs.matrix - k * h1.matrix).cwiseAbs().maxCoeff() < 1e-13);
        const auto e1 = sortedEigenvalues(h1.matrix);
        const auto es = sortedEigenvalues(hs.matrix);
        for (std::size_t m = 1; m < e1.size(); ++m)
            CHECK(es[m] - es[0] == doctest::Approx(k * (e1[m] - e1[0])).epsilon(1e-10));
    }
}

TEST_CASE("single-flip matrix equals the one-flip block of the full Hamiltonian") {
    for (std::size_t n = 2; n <= 8; ++n) {
        CAPTURE(n);
        std::vector<double> x(n);
        // Irregular spacings exercise the distance dependence.
        for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(i) + 0.13 * std::sin(1.7 * static_cast<double>(i));
        const auto g = Geometry::chain(x);
        for (auto model : {CouplingModel::Dipole, CouplingModel::NearestNeighbour}) {
            const bool dipole = model == CouplingModel::Dipole;
            const auto h = buildChainHamiltonian(g, {model, 1.6});
            const auto full = oracle::fullHamiltonian(x, dipole, false, 1.6);
            const auto block = oracle::oneFlipBlock(full, n);
            CHECK((block - h.matrix).cwiseAbs().maxCoeff() < 1e-12);
            CHECK(full(0, 0) == doctest::Approx(h.groundEnergy).epsilon(1e-12));

            // Total magnetization is conserved: no element links different
            // numbers of up spins.
            const auto dim = full.rows();
            double leak = 0.0;
            for (Eigen::Index a = 0; a < dim; ++a)
                for (Eigen::Index b = 0; b < dim; ++b)
                    if (__builtin_popcountll(static_cast<unsigned long long>(a)) !=
                        __builtin_popcountll(static_cast<unsigned long long>(b)))
                        leak = std::max(leak, std::abs(full(a, b)));
            CHECK(leak == 0.0);
        }
        if (n >= 3) {
            std::vector<double> ringX(n);
            std::iota(ringX.begin(), ringX.end(), 0.0);
            for (auto model : {CouplingModel::Dipole, CouplingModel::NearestNeighbour}) {
                const auto h = buildRingHamiltonian(n, {model});
                const auto block =
                    oracle::oneFlipBlock(oracle::fullHamiltonian(ringX, model == CouplingModel::Dipole, true), n);
                CHECK((block - h.matrix).cwiseAbs().maxCoeff() < 1e-12);
            }
        }
    }
}

TEST_CASE("on-site energies: ends lowest, centre flat") {
    const auto h = buildChainHamiltonian(Geometry::uniformChain(15), {});
    const Eigen::VectorXd d = h.matrix.diagonal();
    for (Eigen::Index i = 1; i < 14; ++i) {
        CHECK(d(0) < d(i));
        CHECK(d(14) < d(i));
    }
    CHECK(d(0) == d(14));
    // Centre sites differ by far less than the end drop.
    const double centreSpread = d.segment(5, 5).maxCoeff() - d.segment(5, 5).minCoeff();
    CHECK(centreSpread < 0.05 * (d(7) - d(0)));
}

// Copyright 2026 The dipolink Authors
// SPDX-License-Identifier: Apache-2.0

#include "dipolink/lattice.hpp"

#include "dipolink/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dipolink {

std::string topologyName(Topology t) { return t == Topology::Chain ? "chain" : "ring"; }

std::string modelName(CouplingModel m) { return m == CouplingModel::Dipole ? "dipole" : "nn"; }

Topology parseTopology(const std::string& s) {
    if (s == "chain") return Topology::Chain;
    if (s == "ring") return Topology::Ring;
    throw DomainError("unknown topology '" + s + "' (expected chain|ring)");
}

CouplingModel parseCouplingModel(const std::string& s) {
    if (s == "dipole") return CouplingModel::Dipole;
    if (s == "nn") return CouplingModel::NearestNeighbour;
    throw DomainError("unknown coupling model '" + s + "' (expected dipole|nn)");
}

// ---------------------------------------------------------------------------
// Geometry
// ---------------------------------------------------------------------------

Geometry Geometry::chain(std::vector<double> positions) {
    if (positions.size() < 2) throw InvalidGeometry("chain needs at least 2 spins");
    for (std::size_t i = 0; i < positions.size(); ++i) {
        if (!std::isfinite(positions[i])) throw InvalidGeometry("non-finite spin position");
        if (i > 0 && !(positions[i] > positions[i - 1])) {
            throw InvalidGeometry("chain positions must be strictly increasing (site " +
                                  std::to_string(i) + ")");
        }
    }
    return Geometry(Topology::Chain, std::move(positions));
}

Geometry Geometry::uniformChain(std::size_t n, double spacing) {
    if (!(spacing > 0.0) || !std::isfinite(spacing)) throw InvalidGeometry("spacing must be > 0");
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = spacing * static_cast<double>(i);
    return chain(std::move(p));
}

Geometry Geometry::ring(std::size_t n) {
    if (n < 3) throw InvalidGeometry("ring needs at least 3 spins");
    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = static_cast<double>(i);
    return Geometry(Topology::Ring, std::move(p));
}

double Geometry::length() const {
    if (topology_ == Topology::Ring) return static_cast<double>(size());
    return positions_.back() - positions_.front();
}

double Geometry::distance(std::size_t i, std::size_t j) const {
    if (topology_ == Topology::Ring) {
        const std::size_t n = size();
        const std::size_t d = i > j ? i - j : j - i;
        return static_cast<double>(std::min(d, n - d));
    }
    return std::abs(positions_[j] - positions_[i]);
}

bool Geometry::adjacent(std::size_t i, std::size_t j) const {
    const std::size_t d = i > j ? i - j : j - i;
    if (d == 1) return true;
    return topology_ == Topology::Ring && d == size() - 1;
}

bool Geometry::isMirrorSymmetric(double tol) const {
    const std::size_t n = size();
    const double lo = positions_.front();
    const double hi = positions_.back();
    for (std::size_t i = 0; i < n; ++i) {
        const double left = positions_[i] - lo;
        const double right = hi - positions_[n - 1 - i];
        if (std::abs(left - right) > tol) return false;
    }
    return true;
}

void CouplingSpec::validate() const {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("coupling constant C must be > 0");
}

// ---------------------------------------------------------------------------
// Hamiltonians
// ---------------------------------------------------------------------------

namespace {

ExcitationHamiltonian assemble(const Geometry& g, const CouplingSpec& coupling) {
    coupling.validate();
    const std::size_t n = g.size();
    const auto idx = [](std::size_t k) { return static_cast<Eigen::Index>(k); };
    const bool dipole = coupling.model == CouplingModel::Dipole;

    // Pair energies C/(2 d^3); zero for uncoupled pairs.
    Eigen::MatrixXd pair = Eigen::MatrixXd::Zero(idx(n), idx(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!dipole && !g.adjacent(i, j)) continue;
            const double d = g.distance(i, j);
            const double e = coupling.c / (2.0 * d * d * d);
            pair(idx(i), idx(j)) = e;
            pair(idx(j), idx(i)) = e;
        }
    }

    // All-down Ising energy: -pair per dipole pair (S^z S^z weight -2C/r^3),
    // -J/2 per exchange bond (-(J/2) sigma^z sigma^z).
    const double groundWeight = dipole ? 1.0 : 0.5;
    double ground = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) ground -= groundWeight * pair(idx(i), idx(j));

    // Flipping spin j turns each aligned pair (j, i) anti-aligned: the Ising
    // part gains 2*pair for the dipole and J for exchange. Hopping is +pair
    // (dipole) and -J (Heisenberg).
    const double flipWeight = dipole ? 2.0 : 1.0;
    const double hopSign = dipole ? 1.0 : -1.0;

    ExcitationHamiltonian h{Eigen::MatrixXd::Zero(idx(n), idx(n)), ground, g, coupling};
    std::vector<double> row;
    row.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        // Summed in ascending order so sites with the same neighbourhood
        // (mirror images, ring sites) get bitwise-equal energies.
        row.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (i != j) row.push_back(pair(idx(j), idx(i)));
        std::sort(row.begin(), row.end());
        double onsite = 0.0;
        for (double e : row) onsite += e;
        h.matrix(idx(j), idx(j)) = ground + flipWeight * onsite;
        for (std::size_t i = j + 1; i < n; ++i) {
            const double v = hopSign * pair(idx(j), idx(i));
            h.matrix(idx(j), idx(i)) = v;
            h.matrix(idx(i), idx(j)) = v;
        }
    }
    return h;
}

}  // namespace

ExcitationHamiltonian buildChainHamiltonian(const Geometry& geometry, const CouplingSpec& coupling) {
    if (geometry.topology() != Topology::Chain) throw InvalidGeometry("expected a chain geometry");
    // Re-validate: positions may come from deserialization.
    return assemble(Geometry::chain(geometry.positions()), coupling);
}

ExcitationHamiltonian buildRingHamiltonian(std::size_t n, const CouplingSpec& coupling) {
    return assemble(Geometry::ring(n), coupling);
}

ExcitationHamiltonian buildHamiltonian(const Geometry& geometry, const CouplingSpec& coupling) {
    if (geometry.topology() == Topology::Ring) return buildRingHamiltonian(geometry.size(), coupling);
    return buildChainHamiltonian(geometry, coupling);
}

std::vector<double> ringBlochEnergies(std::size_t n, const CouplingSpec& coupling) {
    if (n < 3) throw InvalidGeometry("ring needs at least 3 spins");
    coupling.validate();
    std::vector<double> energies(n);
    const double nd = static_cast<double>(n);
    for (std::size_t m = 0; m < n; ++m) {
        const double k = 2.0 * std::numbers::pi * static_cast<double>(m) / nd;
        double e = 0.0;
        if (coupling.model == CouplingModel::Dipole) {
            for (std::size_t j = 1; 2 * j <= n; ++j) {
                const double jd = static_cast<double>(j);
                const double w = (2 * j == n) ? 0.5 : 1.0;
                e += w * std::cos(k * jd) / (jd * jd * jd);
            }
            e *= coupling.c;
        } else {
            e = -coupling.c * std::cos(k);
        }
        energies[m] = e;
    }
    return energies;
}

}  // namespace dipolink

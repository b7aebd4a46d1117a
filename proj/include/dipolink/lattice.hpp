// Copyright 2026 The dipolink Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file lattice.hpp
 * @brief One-dimensional spin geometries and their single-excitation
 *        Hamiltonians.
 *
 * Positions are in units of the nearest-neighbour spacing a. The basis is
 * {|j>}, j = 0..N-1, the states with exactly one spin flipped relative to
 * the fully aligned ground state |00...0>.
 *
 * Two coupling models are provided:
 * - Dipole: <i|H|j> = C / (2 d_ij^3) for every pair, on-site energy
 *   E_ground + C * sum_{i != j} 1/d_ij^3.
 * - NearestNeighbour: isotropic Heisenberg exchange between adjacent spins
 *   only, with bond strength J = C / (2 d^3). Off-diagonal -J, on-site
 *   energy E_ground + sum of J over the bonds touching the site.
 *
 * In both models E_ground = -(C/2) * sum over coupled pairs of 1/d^3.
 */

#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace dipolink {

enum class Topology { Chain, Ring };
enum class CouplingModel { Dipole, NearestNeighbour };

std::string topologyName(Topology t);
std::string modelName(CouplingModel m);
Topology parseTopology(const std::string& s);
CouplingModel parseCouplingModel(const std::string& s);

/// Spatial description of a chain or ring. Immutable after construction.
class Geometry {
public:
    /// Chain with arbitrary strictly increasing positions (N >= 2).
    static Geometry chain(std::vector<double> positions);
    /// Uniform chain {0, s, 2s, ..., (n-1)s}.
    static Geometry uniformChain(std::size_t n, double spacing = 1.0);
    /// Uniform ring of n >= 3 sites at integer positions.
    static Geometry ring(std::size_t n);

    Topology topology() const noexcept { return topology_; }
    const std::vector<double>& positions() const noexcept { return positions_; }
    std::size_t size() const noexcept { return positions_.size(); }

    /// End-to-end length L (chains). Rings report their circumference N.
    double length() const;
    /// Distance between sites; minimal-image arc distance on rings.
    double distance(std::size_t i, std::size_t j) const;
    /// True when sites i and j share a nearest-neighbour bond.
    bool adjacent(std::size_t i, std::size_t j) const;
    /// Positions reflect onto themselves about the midpoint.
    bool isMirrorSymmetric(double tol = 0.0) const;

    bool operator==(const Geometry&) const = default;

private:
    Geometry(Topology t, std::vector<double> p) : topology_(t), positions_(std::move(p)) {}

    Topology topology_ = Topology::Chain;
    std::vector<double> positions_;
};

struct CouplingSpec {
    CouplingModel model = CouplingModel::Dipole;
    /// Coupling constant; C/(2a^3) is the nearest-neighbour energy, so the
    /// default makes it unity at a = 1.
    double c = 2.0;

    void validate() const;
};

/// Dense real symmetric N x N matrix in the single-flip basis.
struct ExcitationHamiltonian {
    Eigen::MatrixXd matrix;
    double groundEnergy = 0.0;
    Geometry geometry = Geometry::uniformChain(2);
    CouplingSpec coupling;

    std::size_t size() const noexcept { return static_cast<std::size_t>(matrix.rows()); }
};

ExcitationHamiltonian buildChainHamiltonian(const Geometry& geometry, const CouplingSpec& coupling);
ExcitationHamiltonian buildRingHamiltonian(std::size_t n, const CouplingSpec& coupling);
/// Dispatches on geometry.topology().
ExcitationHamiltonian buildHamiltonian(const Geometry& geometry, const CouplingSpec& coupling);

/// Analytic Bloch energies E_m, m = 0..n-1, of the uniform ring relative to
/// the common on-site constant. For even n the antipodal term is weighted by
/// one half so that it is counted once.
std::vector<double> ringBlochEnergies(std::size_t n, const CouplingSpec& coupling);

}  // namespace dipolink

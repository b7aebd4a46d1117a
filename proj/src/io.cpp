// Copyright 2026 The dipolink Authors
// SPDX-License-Identifier: Apache-2.0

#include "dipolink/io.hpp"

#include "dipolink/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

namespace dipolink {

std::string formatDouble(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

std::string formatOptional(const std::optional<double>& x) { return x ? formatDouble(*x) : std::string{}; }

nlohmann::json geometryToJson(const Geometry& g) {
    return {{"topology", topologyName(g.topology())}, {"positions", g.positions()}};
}

Geometry geometryFromJson(const nlohmann::json& j) {
    if (!j.is_object()) throw DomainError("geometry JSON must be an object");
    if (j.contains("geometry")) return geometryFromJson(j.at("geometry"));
    if (!j.contains("topology") || !j.contains("positions"))
        throw DomainError("geometry JSON needs \"topology\" and \"positions\"");
    std::vector<double> positions;
    try {
        positions = j.at("positions").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(std::string("geometry positions: ") + e.what());
    }
    const Topology topology = parseTopology(j.at("topology").get<std::string>());
    if (topology == Topology::Chain) return Geometry::chain(std::move(positions));

    Geometry ring = Geometry::ring(positions.size());
    if (positions != ring.positions()) throw InvalidGeometry("ring positions must be 0, 1, ..., N-1");
    return ring;
}

Geometry readGeometryFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open geometry file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw DomainError("malformed geometry file '" + path + "': " + e.what());
    }
    return geometryFromJson(j);
}

}  // namespace dipolink

// Copyright 2026 The dipolink Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "dipolink/lattice.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace dipolink {

/// Shortest locale-independent text with 17 significant digits.
std::string formatDouble(double x);
/// Empty string for an unset value, formatDouble otherwise.
std::string formatOptional(const std::optional<double>& x);

/// {"topology": "chain"|"ring", "positions": [...]}
nlohmann::json geometryToJson(const Geometry& g);
/// Accepts a bare geometry object or any object carrying a "geometry" key
/// (so reports written by the CLI can be fed back in).
Geometry geometryFromJson(const nlohmann::json& j);
Geometry readGeometryFile(const std::string& path);

}  // namespace dipolink

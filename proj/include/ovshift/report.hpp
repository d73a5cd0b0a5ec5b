#pragma once

#include <span>
#include <string>

#include <json.hpp>

#include "ovshift/bounds.hpp"

namespace ovshift {

using ordered_json = nlohmann::ordered_json;

/// Vertices and words use external (1-based) indices, mapped through `kept`
/// (analyzed index -> input index) when given. Field order is fixed.
ordered_json to_json(const BoundReport& r);
ordered_json to_json(const Bound& b, std::span<const Vertex> kept = {});
ordered_json to_json(const Certificate& c, std::span<const Vertex> kept = {});
ordered_json to_json(const SeparatedCount& s, std::span<const Vertex> kept = {});
ordered_json to_json(const AnalysisConfig& c);

/// Human-readable table with ln and log2 columns and CERTIFIED/ESTIMATE and
/// EXACT flags.
std::string render_text(const BoundReport& r);
std::string render_text(const SeparatedCount& s, std::span<const Vertex> kept = {});

}  // namespace ovshift

#pragma once

#include <string>

#include "eesd/explosr.hpp"
#include "eesd/layers.hpp"
#include "eesd/minotour.hpp"
#include "json.hpp"

namespace eesd {

// Sorted keys, no whitespace, shortest round-trip doubles.
std::string canonical_json(const nlohmann::json& doc);

// RFC 7946 FeatureCollection; coordinates are [lon, lat].
nlohmann::json export_geojson(const EESDSet& layer);

// {paths: [{strength, hops: [{article, heading_path, snippet}]}]}
nlohmann::json to_json(const Explanation& explanation);
// {path, steps: [{article, heading_path, snippet}]}
nlohmann::json to_json(const Narrative& narrative);

// Lossless form of a layer including witness paths, for the theme cache.
nlohmann::json layer_to_json(const EESDSet& layer);
EESDSet layer_from_json(const nlohmann::json& doc);

}  // namespace eesd

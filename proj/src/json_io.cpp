#include "eesd/json_io.hpp"

namespace eesd {

using nlohmann::json;

// Shortest round-trip doubles: re-parsing gives back the exact values.
std::string canonical_json(const json& doc) { return doc.dump(); }

json export_geojson(const EESDSet& layer) {
  json features = json::array();
  for (const auto& f : layer.features) {
    json properties = {
        {"title", f.title},
        {"value", f.value ? json(*f.value) : json(nullptr)},
        {"symbol_radius", f.symbol_radius},
        {"kind", std::string(to_string(layer.kind))},
        {"subject", layer.subject ? json(*layer.subject) : json(nullptr)},
    };
    features.push_back({
        {"type", "Feature"},
        {"geometry", {{"type", "Point"}, {"coordinates", {f.coordinate.lon, f.coordinate.lat}}}},
        {"properties", std::move(properties)},
    });
  }
  return {
      {"type", "FeatureCollection"},
      {"bbox", {layer.extent.west, layer.extent.south, layer.extent.east, layer.extent.north}},
      {"features", std::move(features)},
  };
}

json to_json(const Explanation& explanation) {
  json paths = json::array();
  for (const auto& p : explanation.paths) {
    json hops = json::array();
    for (const auto& h : p.hops) {
      hops.push_back({{"article", h.article}, {"heading_path", h.heading_path}, {"snippet", h.snippet}});
    }
    paths.push_back({{"strength", p.strength}, {"hops", std::move(hops)}});
  }
  return {{"paths", std::move(paths)}};
}

json to_json(const Narrative& narrative) {
  json steps = json::array();
  for (const auto& s : narrative.steps) {
    steps.push_back({{"article", s.article}, {"heading_path", s.heading_path}, {"snippet", s.snippet}});
  }
  return {{"path", narrative.path}, {"steps", std::move(steps)}};
}

json layer_to_json(const EESDSet& layer) {
  json features = json::array();
  for (const auto& f : layer.features) {
    features.push_back({{"title", f.title},
                        {"lat", f.coordinate.lat},
                        {"lon", f.coordinate.lon},
                        {"value", f.value ? json(*f.value) : json(nullptr)},
                        {"symbol_radius", f.symbol_radius}});
  }
  json scores = json::object();
  for (const auto& [title, s] : layer.scores) {
    json witnesses = json::array();
    for (const auto& w : s.witnesses) {
      json bridges = json::array();
      for (const auto& b : w.bridges) bridges.push_back({b.article_title, b.snippet_ordinal});
      witnesses.push_back({{"vertices", w.vertices}, {"strength", w.strength}, {"bridges", bridges}});
    }
    scores[title] = {{"a", s.a}, {"b", s.b}, {"value", s.value}, {"witnesses", witnesses}};
  }
  return {{"kind", std::string(to_string(layer.kind))},
          {"subject", layer.subject ? json(*layer.subject) : json(nullptr)},
          {"extent", {layer.extent.west, layer.extent.south, layer.extent.east, layer.extent.north}},
          {"features", std::move(features)},
          {"scores", std::move(scores)}};
}

EESDSet layer_from_json(const json& doc) {
  try {
    EESDSet layer;
    auto kind = doc.at("kind").get<std::string>();
    if (kind == "theme") {
      layer.kind = LayerKind::Theme;
    } else if (kind == "entity") {
      layer.kind = LayerKind::Entity;
    } else if (kind == "narrative") {
      layer.kind = LayerKind::Narrative;
    } else {
      throw Error(ErrorCode::data_error, "unknown layer kind '" + kind + "'");
    }
    if (!doc.at("subject").is_null()) layer.subject = doc.at("subject").get<std::string>();
    const auto& e = doc.at("extent");
    layer.extent = Extent{e.at(0).get<double>(), e.at(1).get<double>(), e.at(2).get<double>(),
                          e.at(3).get<double>()};
    for (const auto& f : doc.at("features")) {
      EESDFeature feature;
      feature.title = f.at("title").get<std::string>();
      feature.coordinate = {f.at("lat").get<double>(), f.at("lon").get<double>()};
      if (!f.at("value").is_null()) feature.value = f.at("value").get<double>();
      feature.symbol_radius = f.at("symbol_radius").get<double>();
      layer.features.push_back(std::move(feature));
    }
    for (const auto& [title, s] : doc.at("scores").items()) {
      RelatednessScore score;
      score.a = s.at("a").get<std::string>();
      score.b = s.at("b").get<std::string>();
      score.value = s.at("value").get<double>();
      for (const auto& w : s.at("witnesses")) {
        PathWitness witness;
        witness.vertices = w.at("vertices").get<std::vector<std::string>>();
        witness.strength = w.at("strength").get<double>();
        for (const auto& b : w.at("bridges")) {
          witness.bridges.push_back({b.at(0).get<std::string>(), b.at(1).get<std::uint32_t>()});
        }
        score.witnesses.push_back(std::move(witness));
      }
      layer.scores.emplace(title, std::move(score));
    }
    return layer;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::data_error, std::string("malformed layer document: ") + e.what());
  }
}

}  // namespace eesd

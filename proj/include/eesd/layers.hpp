#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eesd/corpus.hpp"
#include "eesd/explosr.hpp"
#include "eesd/minotour.hpp"
#include "eesd/wag.hpp"

namespace eesd {

// Longitude/latitude box. west > east means the box crosses the dateline.
struct Extent {
  double west = -180.0;
  double south = -90.0;
  double east = 180.0;
  double north = 90.0;

  static Extent global() { return {}; }
  // "w,s,e,n". Throws Error(bad_request).
  static Extent parse(std::string_view bbox);

  // Throws Error(bad_request).
  void validate() const;
  bool contains(const Coordinate& c) const;

  friend bool operator==(const Extent&, const Extent&) = default;
};

struct LayerConfig {
  ExploSRConfig relatedness;
  NarrativeConfig narrative;
  double r_min = 4.0;
  double r_max = 12.0;
  int narrative_snippets = 4;
};

enum class LayerKind { Theme, Entity, Narrative };

std::string_view to_string(LayerKind kind);

struct EESDFeature {
  std::string title;
  Coordinate coordinate;
  std::optional<double> value;  // unset on narrative layers
  double symbol_radius = 0.0;
};

struct EESDSet {
  LayerKind kind = LayerKind::Theme;
  std::optional<std::string> subject;
  Extent extent;
  std::vector<EESDFeature> features;                 // title order
  std::map<std::string, RelatednessScore> scores;    // theme/entity layers

  const EESDFeature* find(std::string_view title) const;
};

// Loaded corpus and graph; immutable once built.
struct Engine {
  CorpusIndex corpus;
  Wag wag;

  static Engine from_corpus(CorpusIndex corpus);
  static Engine load(const std::filesystem::path& dir);
};

std::vector<std::string> spatial_articles_in(const CorpusIndex& corpus, const Extent& extent);

// r_min + (r_max - r_min) * sqrt((v - v_min) / (v_max - v_min)); the
// midpoint radius when all values are equal.
std::vector<double> symbol_sizes(std::span<const double> values, double r_min, double r_max);

EESDSet theme_layer(const Engine& engine, std::string_view theme, const Extent& extent,
                    const LayerConfig& config);
EESDSet entity_layer(const Engine& engine, std::string_view entity, const Extent& extent,
                     const LayerConfig& config);
EESDSet narrative_layer(const CorpusIndex& corpus, const Extent& extent, const LayerConfig& config);

// Features of `layer` inside `extent`, radii re-scaled over the surviving
// values. Applied to a global layer it reproduces the direct computation.
EESDSet restrict_layer(const EESDSet& layer, const Extent& extent, const LayerConfig& config);

// Why a theme/entity feature has its value. Throws not_found for a title that
// is not a feature and no_explanation for a zero value.
Explanation why(const Engine& engine, const EESDSet& layer, std::string_view feature);
// Why two narrative-layer features belong together.
Narrative why(const Engine& engine, const EESDSet& layer, std::string_view from,
              std::string_view to, const LayerConfig& config);

}  // namespace eesd

#include "eesd/layers.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "eesd/index_io.hpp"

namespace eesd {
namespace {

bool parse_double(std::string_view s, double& out) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return !s.empty() && ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

EESDSet valued_layer(const Engine& engine, LayerKind kind, std::string_view subject,
                     const Extent& extent, const LayerConfig& config) {
  extent.validate();
  engine.wag.require(subject);
  auto titles = spatial_articles_in(engine.corpus, extent);
  auto scores = relate_to_set(engine.wag, subject, titles, config.relatedness);

  EESDSet global;
  global.kind = kind;
  global.subject = std::string(subject);
  global.extent = extent;
  for (auto& [title, score] : scores) {
    EESDFeature f;
    f.title = title;
    f.coordinate = *engine.corpus.at(title).coordinate;
    f.value = score.value;
    global.features.push_back(std::move(f));
  }
  global.scores = std::move(scores);
  return restrict_layer(global, extent, config);
}

}  // namespace

std::string_view to_string(LayerKind kind) {
  switch (kind) {
    case LayerKind::Theme:
      return "theme";
    case LayerKind::Entity:
      return "entity";
    case LayerKind::Narrative:
      return "narrative";
  }
  return "unknown";
}

Extent Extent::parse(std::string_view bbox) {
  double v[4];
  std::size_t start = 0;
  for (int i = 0; i < 4; ++i) {
    auto comma = bbox.find(',', start);
    if ((i < 3) == (comma == std::string_view::npos)) {
      throw Error(ErrorCode::bad_request, "bbox must be four numbers w,s,e,n");
    }
    auto part = bbox.substr(start, i < 3 ? comma - start : std::string_view::npos);
    if (!parse_double(part, v[i])) {
      throw Error(ErrorCode::bad_request, "bbox component '" + std::string(part) + "' is not a number");
    }
    start = comma + 1;
  }
  Extent e{v[0], v[1], v[2], v[3]};
  e.validate();
  return e;
}

void Extent::validate() const {
  auto lon_ok = [](double x) { return x >= -180.0 && x <= 180.0; };
  auto lat_ok = [](double x) { return x >= -90.0 && x <= 90.0; };
  if (!lon_ok(west) || !lon_ok(east) || !lat_ok(south) || !lat_ok(north)) {
    throw Error(ErrorCode::bad_request, "bbox outside [-180,180] x [-90,90]");
  }
  if (south > north) throw Error(ErrorCode::bad_request, "bbox south exceeds north");
}

bool Extent::contains(const Coordinate& c) const {
  if (c.lat < south || c.lat > north) return false;
  if (west <= east) return c.lon >= west && c.lon <= east;
  return c.lon >= west || c.lon <= east;
}

const EESDFeature* EESDSet::find(std::string_view title) const {
  auto it = std::lower_bound(features.begin(), features.end(), title,
                             [](const EESDFeature& f, std::string_view t) { return f.title < t; });
  return it != features.end() && it->title == title ? &*it : nullptr;
}

Engine Engine::from_corpus(CorpusIndex corpus) {
  Engine engine;
  engine.wag = build_wag(corpus);
  engine.corpus = std::move(corpus);
  return engine;
}

Engine Engine::load(const std::filesystem::path& dir) {
  Engine engine;
  engine.corpus = load_corpus(dir);
  engine.wag = load_wag(dir);
  return engine;
}

std::vector<std::string> spatial_articles_in(const CorpusIndex& corpus, const Extent& extent) {
  extent.validate();
  std::vector<std::string> out;
  for (const auto& [title, article] : corpus.articles) {
    if (article.kind == ArticleKind::Spatial && extent.contains(*article.coordinate)) {
      out.push_back(title);
    }
  }
  return out;
}

std::vector<double> symbol_sizes(std::span<const double> values, double r_min, double r_max) {
  if (!(r_min < r_max)) throw Error(ErrorCode::bad_request, "symbol radii need r_min < r_max");
  std::vector<double> radii;
  if (values.empty()) return radii;
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  double v_min = *lo;
  double v_max = *hi;
  radii.reserve(values.size());
  for (double v : values) {
    if (v_max == v_min) {
      radii.push_back((r_min + r_max) / 2.0);
    } else {
      radii.push_back(r_min + (r_max - r_min) * std::sqrt((v - v_min) / (v_max - v_min)));
    }
  }
  return radii;
}

EESDSet theme_layer(const Engine& engine, std::string_view theme, const Extent& extent,
                    const LayerConfig& config) {
  return valued_layer(engine, LayerKind::Theme, theme, extent, config);
}

EESDSet entity_layer(const Engine& engine, std::string_view entity, const Extent& extent,
                     const LayerConfig& config) {
  if (engine.corpus.at(entity).kind != ArticleKind::Spatial) {
    throw Error(ErrorCode::invalid_query, "'" + std::string(entity) + "' is not a spatial article");
  }
  return valued_layer(engine, LayerKind::Entity, entity, extent, config);
}

EESDSet narrative_layer(const CorpusIndex& corpus, const Extent& extent, const LayerConfig& config) {
  EESDSet layer;
  layer.kind = LayerKind::Narrative;
  layer.extent = extent;
  for (const auto& title : spatial_articles_in(corpus, extent)) {
    EESDFeature f;
    f.title = title;
    f.coordinate = *corpus.at(title).coordinate;
    f.symbol_radius = (config.r_min + config.r_max) / 2.0;
    layer.features.push_back(std::move(f));
  }
  return layer;
}

EESDSet restrict_layer(const EESDSet& layer, const Extent& extent, const LayerConfig& config) {
  extent.validate();
  EESDSet out;
  out.kind = layer.kind;
  out.subject = layer.subject;
  out.extent = extent;
  for (const auto& f : layer.features) {
    if (!extent.contains(f.coordinate)) continue;
    out.features.push_back(f);
    if (auto it = layer.scores.find(f.title); it != layer.scores.end()) out.scores.insert(*it);
  }
  if (out.kind == LayerKind::Narrative) {
    for (auto& f : out.features) f.symbol_radius = (config.r_min + config.r_max) / 2.0;
    return out;
  }
  std::vector<double> values;
  values.reserve(out.features.size());
  for (const auto& f : out.features) values.push_back(f.value.value_or(0.0));
  auto radii = symbol_sizes(values, config.r_min, config.r_max);
  for (std::size_t i = 0; i < radii.size(); ++i) out.features[i].symbol_radius = radii[i];
  return out;
}

Explanation why(const Engine& engine, const EESDSet& layer, std::string_view feature) {
  if (layer.kind == LayerKind::Narrative) {
    throw Error(ErrorCode::bad_request, "narrative layers explain feature pairs");
  }
  auto it = layer.scores.find(std::string(feature));
  if (!layer.find(feature) || it == layer.scores.end()) {
    throw Error(ErrorCode::not_found, "'" + std::string(feature) + "' is not a feature of this layer");
  }
  return explain(engine.corpus, it->second);
}

Narrative why(const Engine& engine, const EESDSet& layer, std::string_view from,
              std::string_view to, const LayerConfig& config) {
  if (layer.kind != LayerKind::Narrative) {
    throw Error(ErrorCode::bad_request, "feature pairs are explained on narrative layers");
  }
  for (auto title : {from, to}) {
    if (!layer.find(title)) {
      throw Error(ErrorCode::not_found, "'" + std::string(title) + "' is not a feature of this layer");
    }
  }
  NarrativeRequest request{std::string(from), std::string(to), config.narrative_snippets};
  return generate_narrative(engine.wag, engine.corpus, request, config.narrative);
}

}  // namespace eesd

#include <gtest/gtest.h>

#include <cmath>

#include "eesd/json_io.hpp"
#include "support/fixture.hpp"
#include "support/oracle.hpp"

namespace {

const eesd::LayerConfig kConfig{};

eesd::ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const eesd::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return eesd::ErrorCode::data_error;
}

}  // namespace

TEST(SymbolSizes, HandEvaluated) {
  std::vector<double> v{1.0, 4.0, 2.5};
  auto r = eesd::symbol_sizes(v, 4.0, 12.0);
  EXPECT_DOUBLE_EQ(r[0], 4.0);
  EXPECT_DOUBLE_EQ(r[1], 12.0);
  EXPECT_NEAR(r[2], 4.0 + 8.0 * std::sqrt(0.5), 1e-12);
  EXPECT_NEAR(r[2], 9.657, 1e-3);
}

TEST(SymbolSizes, AllEqualGivesMidpoint) {
  std::vector<double> v{3.0, 3.0, 3.0};
  for (double r : eesd::symbol_sizes(v, 4.0, 12.0)) EXPECT_DOUBLE_EQ(r, 8.0);
  EXPECT_TRUE(eesd::symbol_sizes({}, 4.0, 12.0).empty());
}

TEST(SymbolSizes, BadRangeRejected) {
  std::vector<double> v{1.0};
  EXPECT_EQ(code_of([&] { eesd::symbol_sizes(v, 12.0, 4.0); }), eesd::ErrorCode::bad_request);
}

TEST(Extent, ParseAndValidate) {
  EXPECT_EQ(eesd::Extent::parse("-180,-90,180,90"), eesd::Extent::global());
  EXPECT_EQ(eesd::Extent::parse("170,-30,-170,10"), (eesd::Extent{170, -30, -170, 10}));
  for (auto bad : {"", "1,2,3", "a,b,c,d", "0,10,5,0", "0,-95,5,0", "0,0,200,5", "1,2,3,4,5"}) {
    EXPECT_EQ(code_of([&] { eesd::Extent::parse(bad); }), eesd::ErrorCode::bad_request) << bad;
  }
}

TEST(Extent, DatelineBox) {
  eesd::Extent box{170, -30, -170, 30};
  EXPECT_TRUE(box.contains({0, 175}));
  EXPECT_TRUE(box.contains({0, -175}));
  EXPECT_FALSE(box.contains({0, 0}));
  EXPECT_FALSE(box.contains({40, 175}));
}

TEST(SpatialArticlesIn, GlobalAndEmpty) {
  const auto& corpus = fixture::engine().corpus;
  EXPECT_EQ(eesd::spatial_articles_in(corpus, eesd::Extent::global()), fixture::kSpatial);
  EXPECT_TRUE(eesd::spatial_articles_in(corpus, {0, 0, 0.001, 0.001}).empty());
  // Pacific box across the dateline: Suva and Honolulu.
  EXPECT_EQ(eesd::spatial_articles_in(corpus, {170, -90, -150, 90}),
            (std::vector<std::string>{"Honolulu", "Suva"}));
}

TEST(ThemeLayer, ValuesEqualOracle) {
  const auto& e = fixture::engine();
  auto adj = oracle::adjacency_of(e.wag);
  auto layer = eesd::theme_layer(e, "Surfing", eesd::Extent::global(), kConfig);
  EXPECT_EQ(layer.kind, eesd::LayerKind::Theme);
  ASSERT_EQ(layer.features.size(), 8u);
  for (const auto& f : layer.features) {
    ASSERT_TRUE(f.value);
    EXPECT_NEAR(*f.value, oracle::relate(adj, "Surfing", f.title), 1e-9) << f.title;
    EXPECT_EQ(f.coordinate, *e.corpus.at(f.title).coordinate);
  }
}

TEST(ThemeLayer, RadiiMonotoneWithEndpoints) {
  const auto& e = fixture::engine();
  auto layer = eesd::theme_layer(e, "Tourism", eesd::Extent::global(), kConfig);
  double lo = 1e300, hi = -1e300;
  for (const auto& f : layer.features) {
    lo = std::min(lo, *f.value);
    hi = std::max(hi, *f.value);
  }
  ASSERT_LT(lo, hi);
  for (const auto& f : layer.features) {
    for (const auto& g : layer.features) {
      if (*f.value < *g.value) EXPECT_LT(f.symbol_radius, g.symbol_radius);
    }
    if (*f.value == lo) EXPECT_DOUBLE_EQ(f.symbol_radius, kConfig.r_min);
    if (*f.value == hi) EXPECT_DOUBLE_EQ(f.symbol_radius, kConfig.r_max);
  }
}

TEST(ThemeLayer, UnknownThemeNotFound) {
  EXPECT_EQ(code_of([&] {
              eesd::theme_layer(fixture::engine(), "Atlantis", eesd::Extent::global(), kConfig);
            }),
            eesd::ErrorCode::not_found);
}

TEST(ThemeLayer, IsolatedThemeIsAllZero) {
  eesd::Diagnostics diag;
  std::vector<eesd::RawPage> pages{{"Lonely", 1, "No links.", {}},
                                   {"Place", 2, "{{coord|1|2}}\nA place.", {}}};
  auto engine = eesd::Engine::from_corpus(eesd::build_corpus(pages, diag));
  auto layer = eesd::theme_layer(engine, "Lonely", eesd::Extent::global(), kConfig);
  ASSERT_EQ(layer.features.size(), 1u);
  EXPECT_EQ(*layer.features[0].value, 0.0);
  EXPECT_EQ(code_of([&] { eesd::why(engine, layer, "Place"); }), eesd::ErrorCode::no_explanation);
}

TEST(EntityLayer, SubjectExcludedAndOracleEqual) {
  const auto& e = fixture::engine();
  auto adj = oracle::adjacency_of(e.wag);
  auto layer = eesd::entity_layer(e, "Santa Barbara", eesd::Extent::global(), kConfig);
  EXPECT_EQ(layer.features.size(), 7u);
  EXPECT_EQ(layer.find("Santa Barbara"), nullptr);
  for (const auto& f : layer.features) {
    EXPECT_NEAR(*f.value, oracle::relate(adj, "Santa Barbara", f.title), 1e-9);
  }
  EXPECT_EQ(code_of([&] { eesd::entity_layer(e, "Surfing", eesd::Extent::global(), kConfig); }),
            eesd::ErrorCode::invalid_query);
}

TEST(RestrictLayer, MatchesDirectComputation) {
  const auto& e = fixture::engine();
  auto global = eesd::theme_layer(e, "Surfing", eesd::Extent::global(), kConfig);
  for (auto box : {eesd::Extent{-180, 0, 0, 90}, eesd::Extent{170, -90, -150, 90},
                   eesd::Extent{-10, 30, 20, 60}}) {
    auto direct = eesd::theme_layer(e, "Surfing", box, kConfig);
    auto cut = eesd::restrict_layer(global, box, kConfig);
    ASSERT_EQ(direct.features.size(), cut.features.size());
    for (std::size_t i = 0; i < cut.features.size(); ++i) {
      EXPECT_EQ(direct.features[i].title, cut.features[i].title);
      EXPECT_EQ(direct.features[i].value, cut.features[i].value);
      EXPECT_EQ(direct.features[i].symbol_radius, cut.features[i].symbol_radius);
      // shrinking never changes a surviving value
      EXPECT_EQ(cut.features[i].value, global.find(cut.features[i].title)->value);
    }
  }
}

TEST(NarrativeLayer, FeaturesAndPairs) {
  const auto& e = fixture::engine();
  auto layer = eesd::narrative_layer(e.corpus, eesd::Extent::global(), kConfig);
  EXPECT_EQ(layer.features.size(), 8u);
  for (const auto& f : layer.features) EXPECT_FALSE(f.value);
  auto story = eesd::why(e, layer, "Santa Barbara", "Münster", kConfig);
  EXPECT_EQ(story.steps.size(), 4u);
  EXPECT_EQ(code_of([&] { eesd::why(e, layer, "Malibu", "Münster", kConfig); }),
            eesd::ErrorCode::no_narrative);

  auto single = eesd::narrative_layer(e.corpus, {5, 50, 10, 55}, kConfig);
  ASSERT_EQ(single.features.size(), 1u);
  EXPECT_EQ(code_of([&] { eesd::why(e, single, "Münster", "Berlin", kConfig); }),
            eesd::ErrorCode::not_found);
}

TEST(Why, SnippetsCarryAnchors) {
  const auto& e = fixture::engine();
  auto layer = eesd::theme_layer(e, "Surfing", eesd::Extent::global(), kConfig);
  for (const auto& f : layer.features) {
    if (*f.value == 0.0) continue;
    auto ex = eesd::why(e, layer, f.title);
    ASSERT_FALSE(ex.paths.empty());
    for (const auto& p : ex.paths) {
      for (const auto& hop : p.hops) {
        bool anchored = false;
        for (const auto& l : e.corpus.at(hop.article).links) {
          if (e.corpus.resolve(l.target_title) == hop.next) {
            anchored = anchored || hop.snippet.find(l.anchor_text) != std::string::npos;
          }
        }
        EXPECT_TRUE(anchored);
      }
    }
  }
  EXPECT_EQ(code_of([&] { eesd::why(e, layer, "Tourism"); }), eesd::ErrorCode::not_found);
}

TEST(GeoJson, RoundTripAndAxisOrder) {
  const auto& e = fixture::engine();
  auto layer = eesd::theme_layer(e, "Surfing", eesd::Extent::global(), kConfig);
  auto doc = nlohmann::json::parse(eesd::canonical_json(eesd::export_geojson(layer)));
  EXPECT_EQ(doc["type"], "FeatureCollection");
  ASSERT_EQ(doc["features"].size(), layer.features.size());
  for (std::size_t i = 0; i < layer.features.size(); ++i) {
    const auto& f = doc["features"][i];
    const auto& src = layer.features[i];
    EXPECT_EQ(f["properties"]["title"], src.title);
    EXPECT_EQ(f["properties"]["value"].get<double>(), *src.value);
    EXPECT_EQ(f["geometry"]["coordinates"][0].get<double>(), src.coordinate.lon);
    EXPECT_EQ(f["geometry"]["coordinates"][1].get<double>(), src.coordinate.lat);
  }
  auto empty = eesd::export_geojson(eesd::EESDSet{});
  EXPECT_TRUE(empty["features"].is_array());
  EXPECT_TRUE(empty["features"].empty());
}

TEST(GeoJson, LosslessLayerForm) {
  const auto& e = fixture::engine();
  auto layer = eesd::theme_layer(e, "Surfing", eesd::Extent::global(), kConfig);
  auto back = eesd::layer_from_json(nlohmann::json::parse(eesd::layer_to_json(layer).dump()));
  ASSERT_EQ(back.features.size(), layer.features.size());
  for (std::size_t i = 0; i < layer.features.size(); ++i) {
    EXPECT_EQ(back.features[i].value, layer.features[i].value);
    EXPECT_EQ(back.features[i].symbol_radius, layer.features[i].symbol_radius);
    EXPECT_EQ(back.features[i].coordinate, layer.features[i].coordinate);
  }
  EXPECT_EQ(back.scores, layer.scores);
}

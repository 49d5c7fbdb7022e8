#include <gtest/gtest.h>

#include <random>

#include "eesd/explosr.hpp"
#include "support/fixture.hpp"
#include "support/oracle.hpp"

namespace {

eesd::Wag triangle() {
  std::vector<eesd::WagEdge> edges{
      {"A", "B", 0.5, 0.0, 0}, {"B", "C", 0.5, 0.0, 0}, {"A", "C", 0.25, 0.0, 0}};
  return eesd::Wag::from_edges({"A", "B", "C"}, edges);
}

const eesd::ExploSRConfig kDefault{};

}  // namespace

TEST(EnumeratePaths, TriangleExample) {
  auto wag = triangle();
  auto adj = oracle::adjacency_of(wag);
  auto expect = oracle::paths(adj, "A", "C", 3, 0.5);
  auto got = eesd::enumerate_paths(wag, "A", "C", kDefault);
  ASSERT_EQ(got.size(), expect.size());
  ASSERT_EQ(got.size(), 2u);
  // lexicographic vertex order: [A,B,C] before [A,C]
  EXPECT_EQ(got[0].vertices, (std::vector<std::string>{"A", "B", "C"}));
  EXPECT_DOUBLE_EQ(got[0].strength, 0.125);
  EXPECT_EQ(got[1].vertices, (std::vector<std::string>{"A", "C"}));
  EXPECT_DOUBLE_EQ(got[1].strength, 0.25);
  for (std::size_t i = 0; i < got.size(); ++i) {
    EXPECT_EQ(got[i].vertices, expect[i].vertices);
    EXPECT_DOUBLE_EQ(got[i].strength, expect[i].strength);
  }
}

TEST(EnumeratePaths, NoReversePathsAndKOne) {
  auto wag = triangle();
  EXPECT_TRUE(eesd::enumerate_paths(wag, "C", "A", kDefault).empty());
  eesd::ExploSRConfig k1;
  k1.max_path_len = 1;
  auto got = eesd::enumerate_paths(wag, "A", "C", k1);
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(got[0].length(), 1u);
  EXPECT_THROW(eesd::enumerate_paths(wag, "A", "Z", kDefault), eesd::Error);
}

TEST(Relate, TriangleValue) {
  auto wag = triangle();
  auto score = eesd::relate(wag, "A", "C", kDefault);
  EXPECT_DOUBLE_EQ(score.value, oracle::relate(oracle::adjacency_of(wag), "A", "C"));
  EXPECT_DOUBLE_EQ(score.value, 0.375);
  ASSERT_EQ(score.witnesses.size(), 2u);
  EXPECT_DOUBLE_EQ(score.witnesses[0].strength, 0.25);
}

TEST(Relate, SelfIsInvalidQuery) {
  auto wag = triangle();
  try {
    eesd::relate(wag, "A", "A", kDefault);
    FAIL();
  } catch (const eesd::Error& e) {
    EXPECT_EQ(e.code(), eesd::ErrorCode::invalid_query);
  }
}

TEST(Relate, DisconnectedIsZero) {
  std::vector<eesd::WagEdge> edges{{"A", "B", 0.5, 0.0, 0}};
  auto wag = eesd::Wag::from_edges({"A", "B", "C"}, edges);
  auto score = eesd::relate(wag, "A", "C", kDefault);
  EXPECT_EQ(score.value, 0.0);
  EXPECT_TRUE(score.witnesses.empty());
}

TEST(Relate, BadConfigRejected) {
  auto wag = triangle();
  eesd::ExploSRConfig c;
  c.length_decay = 0.0;
  EXPECT_THROW(eesd::relate(wag, "A", "C", c), eesd::Error);
  c = {};
  c.max_path_len = 0;
  EXPECT_THROW(eesd::relate(wag, "A", "C", c), eesd::Error);
}

TEST(Relate, FixtureMatchesOracleAndIsSymmetric) {
  const auto& wag = fixture::engine().wag;
  auto adj = oracle::adjacency_of(wag);
  for (const auto& a : wag.vertices()) {
    for (const auto& b : wag.vertices()) {
      if (a == b) continue;
      auto ab = eesd::relate(wag, a, b, kDefault);
      EXPECT_NEAR(ab.value, oracle::relate(adj, a, b), 1e-9) << a << " / " << b;
      EXPECT_EQ(ab.value, eesd::relate(wag, b, a, kDefault).value);
    }
  }
}

TEST(Relate, WitnessesAreTopKStrongest) {
  const auto& wag = fixture::engine().wag;
  auto adj = oracle::adjacency_of(wag);
  auto score = eesd::relate(wag, "Surfing", "Malibu", kDefault);
  auto all = oracle::paths(adj, "Surfing", "Malibu", 3, 0.5);
  auto back = oracle::paths(adj, "Malibu", "Surfing", 3, 0.5);
  all.insert(all.end(), back.begin(), back.end());
  std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) {
    return x.strength != y.strength ? x.strength > y.strength : x.vertices < y.vertices;
  });
  ASSERT_EQ(score.witnesses.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(score.witnesses[i].vertices, all[i].vertices);
    EXPECT_NEAR(score.witnesses[i].strength, all[i].strength, 1e-15);
  }
}

TEST(Relate, RandomGraphsMatchOracle) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 50; ++trial) {
    auto [names, edges] = oracle::random_graph(rng);
    auto wag = eesd::Wag::from_edges(names, edges);
    auto adj = oracle::adjacency_of(wag);
    for (const auto& a : names) {
      for (const auto& b : names) {
        if (a == b) continue;
        EXPECT_NEAR(eesd::relate(wag, a, b, kDefault).value, oracle::relate(adj, a, b), 1e-9);
      }
    }
  }
}

TEST(Relate, AddingAnEdgeNeverLowersAnotherPairsValue) {
  // Adding an edge with fixed weights only adds paths.
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    auto [names, edges] = oracle::random_graph(rng, 8);
    auto before = eesd::Wag::from_edges(names, edges);
    std::set<std::pair<std::string, std::string>> present;
    for (const auto& e : edges) present.insert({e.source, e.target});
    std::optional<eesd::WagEdge> extra;
    for (const auto& s : names) {
      for (const auto& t : names) {
        if (!extra && s != t && !present.contains({s, t})) extra = eesd::WagEdge{s, t, 0.3, 0.0, 0};
      }
    }
    if (!extra) continue;
    auto more = edges;
    more.push_back(*extra);
    auto after = eesd::Wag::from_edges(names, more);
    for (const auto& a : names) {
      for (const auto& b : names) {
        if (a == b) continue;
        EXPECT_GE(eesd::relate(after, a, b, kDefault).value,
                  eesd::relate(before, a, b, kDefault).value);
      }
    }
  }
}

TEST(RelateToSet, EqualsPerPairOnFixture) {
  const auto& e = fixture::engine();
  auto targets = e.corpus.titles_of_kind(eesd::ArticleKind::Spatial);
  for (const auto& theme : e.wag.vertices()) {
    auto set = eesd::relate_to_set(e.wag, theme, targets, kDefault);
    for (const auto& b : targets) {
      if (b == theme) {
        EXPECT_FALSE(set.contains(b));
        continue;
      }
      EXPECT_EQ(set.at(b), eesd::relate(e.wag, theme, b, kDefault)) << theme << " / " << b;
    }
  }
}

TEST(RelateToSet, SingletonAndEmpty) {
  auto wag = triangle();
  std::vector<std::string> one{"C"};
  auto set = eesd::relate_to_set(wag, "A", one, kDefault);
  ASSERT_EQ(set.size(), 1u);
  EXPECT_DOUBLE_EQ(set.at("C").value, 0.375);
  EXPECT_TRUE(eesd::relate_to_set(wag, "A", {}, kDefault).empty());
}

TEST(Explain, HopsInPathOrderWithAnchors) {
  const auto& e = fixture::engine();
  auto score = eesd::relate(e.wag, "Surfing", "Santa Barbara", kDefault);
  auto ex = eesd::explain(e.corpus, score);
  ASSERT_EQ(ex.paths.size(), score.witnesses.size());
  for (std::size_t p = 0; p < ex.paths.size(); ++p) {
    const auto& w = score.witnesses[p];
    ASSERT_EQ(ex.paths[p].hops.size(), w.length());
    for (std::size_t i = 0; i < w.length(); ++i) {
      const auto& hop = ex.paths[p].hops[i];
      EXPECT_EQ(hop.article, w.vertices[i]);
      EXPECT_EQ(hop.next, w.vertices[i + 1]);
      // the snippet carries the anchor of some link to the next vertex
      bool anchored = false;
      for (const auto& l : e.corpus.at(hop.article).links) {
        if (e.corpus.resolve(l.target_title) == hop.next) {
          anchored = anchored || hop.snippet.find(l.anchor_text) != std::string::npos;
        }
      }
      EXPECT_TRUE(anchored) << hop.article << " -> " << hop.next;
    }
  }
}

TEST(Explain, ZeroScoreHasNoExplanation) {
  const auto& e = fixture::engine();
  eesd::RelatednessScore zero{"Surfing", "Berlin", 0.0, {}};
  try {
    eesd::explain(e.corpus, zero);
    FAIL();
  } catch (const eesd::Error& err) {
    EXPECT_EQ(err.code(), eesd::ErrorCode::no_explanation);
  }
}

TEST(PathStrength, ForwardProduct) {
  std::vector<double> w{0.5, 0.25};
  EXPECT_DOUBLE_EQ(eesd::path_strength(w, 0.5), 0.0625);
}

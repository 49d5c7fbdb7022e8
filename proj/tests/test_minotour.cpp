#include <gtest/gtest.h>

#include <set>

#include "eesd/minotour.hpp"
#include "support/fixture.hpp"
#include "support/oracle.hpp"

namespace {

struct Mini {
  eesd::CorpusIndex corpus;
  eesd::Wag wag;
};

// Spatial pages get a coord template; every page gets `paragraphs`
// paragraphs and its links go into paragraph `link_at`.
Mini build(const std::vector<std::string>& spatial,
           const std::vector<std::pair<std::string, std::vector<std::string>>>& pages,
           int paragraphs = 3, int link_at = 1) {
  std::vector<eesd::RawPage> raw;
  std::int64_t id = 1;
  for (const auto& [title, links] : pages) {
    std::string text;
    if (std::find(spatial.begin(), spatial.end(), title) != spatial.end()) {
      text += "{{coord|10|" + std::to_string(id) + "}}\n";
    }
    for (int p = 0; p < paragraphs; ++p) {
      text += title + " paragraph " + std::to_string(p) + ".";
      if (p == link_at) {
        for (const auto& l : links) text += " See [[" + l + "]].";
      }
      text += "\n\n";
    }
    raw.push_back({title, id++, text, {}});
  }
  eesd::Diagnostics diag;
  Mini m{eesd::build_corpus(raw, diag), {}};
  m.wag = eesd::build_wag(m.corpus);
  return m;
}

eesd::ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const eesd::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return eesd::ErrorCode::data_error;
}

// Exhaustive strongest path with non-spatial interiors, ties to the smaller
// vertex sequence.
std::optional<oracle::Path> best_story(const eesd::Wag& wag, const eesd::CorpusIndex& corpus,
                                       const std::string& a, const std::string& b,
                                       int max_hops = 6, double lambda = 0.5) {
  auto adj = oracle::adjacency_of(wag);
  for (auto& [src, row] : adj) {
    for (auto it = row.begin(); it != row.end();) {
      bool ok = it->first == b || corpus.at(it->first).kind == eesd::ArticleKind::NonSpatial;
      it = ok ? std::next(it) : row.erase(it);
    }
  }
  std::optional<oracle::Path> best;
  for (auto& p : oracle::paths(adj, a, b, max_hops, lambda)) {
    if (p.vertices.size() < 3) continue;
    if (!best || p.strength > best->strength ||
        (p.strength == best->strength && p.vertices < best->vertices)) {
      best = p;
    }
  }
  return best;
}

}  // namespace

TEST(OptimalPath, UniqueRoute) {
  auto m = build({"A", "B"}, {{"A", {"X"}}, {"X", {"B"}}, {"B", {}}});
  auto path = eesd::optimal_path(m.wag, m.corpus, "A", "B");
  EXPECT_EQ(path.vertices, (std::vector<std::string>{"A", "X", "B"}));
}

TEST(OptimalPath, StrongerRouteChosen) {
  // A reaches B through X (one link from X) or through Y (Y also links Z,
  // which lowers the Y->B weight).
  auto m = build({"A", "B"},
                 {{"A", {"X", "Y"}}, {"X", {"B"}}, {"Y", {"Z", "B"}}, {"Z", {}}, {"B", {}}});
  auto expect = best_story(m.wag, m.corpus, "A", "B");
  ASSERT_TRUE(expect);
  auto path = eesd::optimal_path(m.wag, m.corpus, "A", "B");
  EXPECT_EQ(path.vertices, expect->vertices);
  EXPECT_EQ(path.vertices[1], "X");
  EXPECT_NEAR(path.strength, expect->strength, 1e-15);
}

TEST(OptimalPath, SpatialInteriorOnlyIsNoNarrative) {
  auto m = build({"A", "B", "C"}, {{"A", {"C"}}, {"C", {"B"}}, {"B", {}}});
  EXPECT_EQ(code_of([&] { eesd::optimal_path(m.wag, m.corpus, "A", "B"); }),
            eesd::ErrorCode::no_narrative);
}

TEST(OptimalPath, DirectEdgeAloneIsNotAStory) {
  auto m = build({"A", "B"}, {{"A", {"B"}}, {"B", {}}});
  EXPECT_EQ(code_of([&] { eesd::optimal_path(m.wag, m.corpus, "A", "B"); }),
            eesd::ErrorCode::no_narrative);
}

TEST(OptimalPath, EndpointChecks) {
  auto m = build({"A", "B"}, {{"A", {"X"}}, {"X", {"B"}}, {"B", {}}});
  EXPECT_EQ(code_of([&] { eesd::optimal_path(m.wag, m.corpus, "A", "X"); }),
            eesd::ErrorCode::invalid_query);
  EXPECT_EQ(code_of([&] { eesd::optimal_path(m.wag, m.corpus, "A", "A"); }),
            eesd::ErrorCode::invalid_query);
  EXPECT_EQ(code_of([&] { eesd::optimal_path(m.wag, m.corpus, "A", "Nope"); }),
            eesd::ErrorCode::not_found);
}

TEST(OptimalPath, FixtureMatchesExhaustiveSearch) {
  const auto& e = fixture::engine();
  for (const auto& a : fixture::kSpatial) {
    for (const auto& b : fixture::kSpatial) {
      if (a == b) continue;
      auto expect = best_story(e.wag, e.corpus, a, b);
      if (!expect) {
        EXPECT_EQ(code_of([&] { eesd::optimal_path(e.wag, e.corpus, a, b); }),
                  eesd::ErrorCode::no_narrative)
            << a << " -> " << b;
        continue;
      }
      auto path = eesd::optimal_path(e.wag, e.corpus, a, b);
      EXPECT_EQ(path.vertices, expect->vertices) << a << " -> " << b;
      EXPECT_NEAR(path.strength, expect->strength, 1e-12);
    }
  }
}

class ChainNarrative : public ::testing::Test {
 protected:
  // A -> I1 -> I2 -> I3 -> I4 -> B; each interior links from paragraph 1.
  Mini m = build({"A", "B"}, {{"A", {"I1"}},
                              {"I1", {"I2"}},
                              {"I2", {"I3"}},
                              {"I3", {"I4"}},
                              {"I4", {"B"}},
                              {"B", {}}});

  std::vector<std::pair<std::string, std::uint32_t>> steps(int s) {
    auto n = eesd::generate_narrative(m.wag, m.corpus, {"A", "B", s});
    std::vector<std::pair<std::string, std::uint32_t>> out;
    for (const auto& step : n.steps) out.emplace_back(step.article, step.ordinal);
    return out;
  }
};

TEST_F(ChainNarrative, FewerSnippetsThanInteriorsKeepsEnds) {
  using V = std::vector<std::pair<std::string, std::uint32_t>>;
  EXPECT_EQ(steps(2), (V{{"I1", 1}, {"I4", 1}}));
  EXPECT_EQ(steps(1), (V{{"I1", 1}}));
  EXPECT_EQ(steps(4), (V{{"I1", 1}, {"I2", 1}, {"I3", 1}, {"I4", 1}}));
}

TEST_F(ChainNarrative, ExtraSnippetsRoundRobin) {
  using V = std::vector<std::pair<std::string, std::uint32_t>>;
  EXPECT_EQ(steps(6), (V{{"I1", 0}, {"I1", 1}, {"I2", 0}, {"I2", 1}, {"I3", 1}, {"I4", 1}}));
  // 4 interiors x 3 paragraphs caps the story at 12 steps
  EXPECT_EQ(steps(40).size(), 12u);
}

TEST_F(ChainNarrative, BridgeFlags) {
  auto n = eesd::generate_narrative(m.wag, m.corpus, {"A", "B", 6});
  for (const auto& step : n.steps) EXPECT_EQ(step.bridge, step.ordinal == 1);
  EXPECT_EQ(code_of([&] { eesd::generate_narrative(m.wag, m.corpus, {"A", "B", 0}); }),
            eesd::ErrorCode::bad_request);
}

TEST_F(ChainNarrative, OneWayLinksHaveNoReverse) {
  EXPECT_EQ(code_of([&] { eesd::reverse_narrative(m.wag, m.corpus, {"A", "B", 2}); }),
            eesd::ErrorCode::no_narrative);
}

TEST(FixtureNarrative, TwoInteriors) {
  const auto& e = fixture::engine();
  auto two = eesd::generate_narrative(e.wag, e.corpus, {"Münster", "Honolulu", 2});
  EXPECT_EQ(two.path, (std::vector<std::string>{"Münster", "Bicycle", "Tourism", "Honolulu"}));
  ASSERT_EQ(two.steps.size(), 2u);
  EXPECT_EQ(two.steps[0].article, "Bicycle");
  EXPECT_EQ(two.steps[1].article, "Tourism");
  EXPECT_TRUE(two.steps[0].bridge && two.steps[1].bridge);

  auto four = eesd::generate_narrative(e.wag, e.corpus, {"Münster", "Honolulu", 4});
  ASSERT_EQ(four.steps.size(), 4u);
  std::set<std::pair<std::string, std::uint32_t>> distinct;
  int bridges = 0;
  for (const auto& s : four.steps) {
    distinct.insert({s.article, s.ordinal});
    bridges += s.bridge;
  }
  EXPECT_EQ(distinct.size(), 4u);
  EXPECT_EQ(bridges, 2);
}

TEST(FixtureNarrative, ReverseTakesItsOwnRoute) {
  const auto& e = fixture::engine();
  eesd::NarrativeRequest request{"Santa Barbara", "Sydney", 3};
  auto forward = eesd::generate_narrative(e.wag, e.corpus, request);
  auto backward = eesd::reverse_narrative(e.wag, e.corpus, request);
  EXPECT_EQ(forward.path.front(), "Santa Barbara");
  EXPECT_EQ(backward.path.front(), "Sydney");
  std::vector<std::string> reversed(backward.path.rbegin(), backward.path.rend());
  EXPECT_NE(forward.path, reversed);
  std::vector<std::string> fa, ba;
  for (const auto& s : forward.steps) fa.push_back(s.article);
  for (const auto& s : backward.steps) ba.push_back(s.article);
  EXPECT_NE(fa, ba);
}

TEST(FixtureNarrative, DirectionalRoute) {
  const auto& e = fixture::engine();
  EXPECT_NO_THROW(eesd::generate_narrative(e.wag, e.corpus, {"Münster", "Honolulu", 2}));
  EXPECT_EQ(code_of([&] {
              eesd::reverse_narrative(e.wag, e.corpus, {"Münster", "Honolulu", 2});
            }),
            eesd::ErrorCode::no_narrative);
}

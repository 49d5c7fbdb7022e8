#include "eesd/minotour.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace eesd {
namespace {

struct Endpoints {
  VertexId start;
  VertexId end;
};

Endpoints check_request(const Wag& wag, const CorpusIndex& corpus, std::string_view start,
                        std::string_view end, const NarrativeConfig& config) {
  if (config.max_hops < 2) throw Error(ErrorCode::bad_request, "max_hops must be >= 2");
  if (!(config.length_decay > 0.0 && config.length_decay <= 1.0))
    throw Error(ErrorCode::bad_request, "length decay must be in (0, 1]");
  for (auto title : {start, end}) {
    const auto& article = corpus.at(title);
    if (article.kind != ArticleKind::Spatial) {
      throw Error(ErrorCode::invalid_query,
                  "narrative endpoint '" + std::string(title) + "' is not a spatial article");
    }
  }
  auto s = wag.require(start);
  auto e = wag.require(end);
  if (s == e) throw Error(ErrorCode::invalid_query, "narrative start and end coincide");
  return {s, e};
}

// Upper bound on the product of (lambda * w) over any walk v -> end whose
// intermediate vertices are allowed interiors.
std::vector<double> completion_bounds(const Wag& wag, const std::vector<char>& interior,
                                      VertexId start, VertexId end, double lambda) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(wag.vertex_count(), kInf);
  using Entry = std::pair<double, VertexId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  dist[end] = 0.0;
  queue.push({0.0, end});
  while (!queue.empty()) {
    auto [d, v] = queue.top();
    queue.pop();
    if (d > dist[v]) continue;
    if (v != end && !interior[v]) continue;  // start is reached but not expanded
    for (const auto& arc : wag.in_arcs(v)) {
      auto u = arc.vertex;
      if (!interior[u] && u != start) continue;
      double nd = d - std::log(lambda * arc.weight);
      if (nd < dist[u]) {
        dist[u] = nd;
        queue.push({nd, u});
      }
    }
  }
  std::vector<double> bound(wag.vertex_count(), 0.0);
  for (std::size_t v = 0; v < bound.size(); ++v) {
    if (dist[v] != kInf) bound[v] = std::exp(-dist[v]);
  }
  return bound;
}

// `count` of `interiors` positions, evenly spread and keeping both ends.
std::vector<std::size_t> spaced_indices(std::size_t count, std::size_t interiors) {
  std::vector<std::size_t> out;
  if (count == 1) return {0};
  for (std::size_t i = 0; i < count; ++i) {
    // round(i * (m - 1) / (count - 1))
    auto num = 2 * i * (interiors - 1) + (count - 1);
    out.push_back(num / (2 * (count - 1)));
  }
  return out;
}

}  // namespace

StoryPath optimal_path(const Wag& wag, const CorpusIndex& corpus, std::string_view start,
                       std::string_view end, const NarrativeConfig& config) {
  auto [s, e] = check_request(wag, corpus, start, end, config);
  const double lambda = config.length_decay;

  std::vector<char> interior(wag.vertex_count(), 0);
  for (VertexId v = 0; v < wag.vertex_count(); ++v) {
    const auto* article = corpus.find(wag.title(v));
    interior[v] = article && article->kind == ArticleKind::NonSpatial;
  }
  auto bound = completion_bounds(wag, interior, s, e, lambda);
  std::vector<double> decay;
  for (int m = 1; m <= config.max_hops; ++m) decay.push_back(std::pow(lambda, m - 1));

  constexpr double kSlack = 1.0 + 1e-9;
  double best = 0.0;
  std::vector<VertexId> best_path;
  std::vector<VertexId> path{s};
  std::vector<char> on_path(wag.vertex_count(), 0);
  on_path[s] = 1;

  // product: arc weights multiplied in path order from 1.0
  auto search = [&](auto& self, VertexId v, double product) -> void {
    auto edges = path.size() - 1;
    double ceiling = edges == 0 ? bound[v] / lambda : decay[edges - 1] * product * bound[v];
    if (ceiling * kSlack < best || bound[v] == 0.0) return;
    for (const auto& arc : wag.out_arcs(v)) {
      auto w = arc.vertex;
      if (on_path[w]) continue;
      double p = product * arc.weight;
      if (w == e) {
        if (edges + 1 >= 2) {
          double strength = decay[edges] * p;
          if (strength > best) {
            best = strength;
            best_path = path;
            best_path.push_back(e);
          }
        }
        continue;
      }
      if (!interior[w] || static_cast<int>(edges + 2) > config.max_hops) continue;
      path.push_back(w);
      on_path[w] = 1;
      self(self, w, p);
      on_path[w] = 0;
      path.pop_back();
    }
  };
  search(search, s, 1.0);

  if (best_path.empty()) {
    throw Error(ErrorCode::no_narrative, "no narrative path from '" + std::string(start) +
                                             "' to '" + std::string(end) + "' within " +
                                             std::to_string(config.max_hops) + " hops");
  }
  StoryPath out;
  out.strength = best;
  for (auto v : best_path) out.vertices.push_back(wag.title(v));
  return out;
}

Narrative generate_narrative(const Wag& wag, const CorpusIndex& corpus,
                             const NarrativeRequest& request, const NarrativeConfig& config) {
  if (request.snippet_count < 1) throw Error(ErrorCode::bad_request, "snippet count must be >= 1");
  auto story = optimal_path(wag, corpus, request.start, request.end, config);

  Narrative narrative;
  narrative.request = request;
  narrative.path = story.vertices;
  narrative.path_strength = story.strength;

  const auto interiors = story.vertices.size() - 2;
  std::vector<const Article*> articles;
  std::vector<std::uint32_t> bridges;
  for (std::size_t i = 1; i + 1 < story.vertices.size(); ++i) {
    const auto& article = corpus.at(story.vertices[i]);
    const auto* arc = wag.find_arc(wag.require(story.vertices[i]), wag.require(story.vertices[i + 1]));
    articles.push_back(&article);
    bridges.push_back(arc->snippet_ordinal);
  }

  // (interior index, snippet ordinal)
  std::vector<std::pair<std::size_t, std::uint32_t>> chosen;
  const auto wanted = static_cast<std::size_t>(request.snippet_count);
  if (wanted <= interiors) {
    for (auto i : spaced_indices(wanted, interiors)) chosen.emplace_back(i, bridges[i]);
  } else {
    for (std::size_t i = 0; i < interiors; ++i) chosen.emplace_back(i, bridges[i]);
    std::vector<std::size_t> cursor(interiors, 0);
    bool progress = true;
    while (chosen.size() < wanted && progress) {
      progress = false;
      for (std::size_t i = 0; i < interiors && chosen.size() < wanted; ++i) {
        const auto& snippets = articles[i]->snippets;
        while (cursor[i] < snippets.size() && snippets[cursor[i]].ordinal == bridges[i]) ++cursor[i];
        if (cursor[i] < snippets.size()) {
          chosen.emplace_back(i, snippets[cursor[i]].ordinal);
          ++cursor[i];
          progress = true;
        }
      }
    }
  }
  std::sort(chosen.begin(), chosen.end());

  for (auto [i, ordinal] : chosen) {
    const auto& snippet = articles[i]->snippets.at(ordinal);
    narrative.steps.push_back(
        {articles[i]->title, snippet.heading_path, snippet.text, ordinal, ordinal == bridges[i]});
  }
  return narrative;
}

Narrative reverse_narrative(const Wag& wag, const CorpusIndex& corpus,
                            const NarrativeRequest& request, const NarrativeConfig& config) {
  NarrativeRequest swapped = request;
  std::swap(swapped.start, swapped.end);
  return generate_narrative(wag, corpus, swapped, config);
}

}  // namespace eesd

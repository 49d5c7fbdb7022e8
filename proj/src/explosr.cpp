#include "eesd/explosr.hpp"

#include <algorithm>
#include <cmath>

namespace eesd {
namespace {

// A path held by vertex id while traversing.
struct IdPath {
  std::vector<VertexId> vertices;
  std::vector<std::uint32_t> ordinals;  // bridge snippet per hop
  double strength = 0.0;
};

bool stronger(const IdPath& x, const IdPath& y) {
  if (x.strength != y.strength) return x.strength > y.strength;
  return x.vertices < y.vertices;  // ids follow title order
}

PathWitness to_witness(const Wag& wag, const IdPath& p) {
  PathWitness w;
  w.strength = p.strength;
  w.vertices.reserve(p.vertices.size());
  for (auto v : p.vertices) w.vertices.push_back(wag.title(v));
  for (std::size_t i = 0; i < p.ordinals.size(); ++i) {
    w.bridges.push_back({wag.title(p.vertices[i]), p.ordinals[i]});
  }
  return w;
}

// Keeps the strongest `k` candidates without holding every path.
class TopK {
 public:
  explicit TopK(std::size_t k) : k_(k) {}

  void offer(IdPath p) {
    items_.push_back(std::move(p));
    if (items_.size() >= 8 * k_ + 8) trim();
  }

  std::vector<IdPath> take() {
    trim();
    return std::move(items_);
  }

 private:
  void trim() {
    if (items_.size() > k_) {
      std::nth_element(items_.begin(), items_.begin() + static_cast<std::ptrdiff_t>(k_),
                       items_.end(), stronger);
      items_.resize(k_);
    }
    std::sort(items_.begin(), items_.end(), stronger);
  }

  std::size_t k_;
  std::vector<IdPath> items_;
};

// Depth-first enumeration of simple paths leaving `start` along out-arcs (or
// entering it along in-arcs) with at most `max_len` edges. Children are taken
// in id order. `visit(vertices, arcs, product)` fires for every path of one or
// more edges and returns whether to extend it; `product` multiplies the arc
// weights in traversal order starting from 1.0.
template <typename Visit>
void walk(const Wag& wag, VertexId start, int max_len, Direction dir, Visit&& visit) {
  std::vector<char> on_path(wag.vertex_count(), 0);
  std::vector<VertexId> vertices{start};
  std::vector<const Wag::Arc*> arcs;
  on_path[start] = 1;

  auto recurse = [&](auto& self, VertexId v, double product) -> void {
    if (static_cast<int>(arcs.size()) >= max_len) return;
    auto next = dir == Direction::Out ? wag.out_arcs(v) : wag.in_arcs(v);
    for (const auto& arc : next) {
      if (on_path[arc.vertex]) continue;
      double p = product * arc.weight;
      vertices.push_back(arc.vertex);
      arcs.push_back(&arc);
      on_path[arc.vertex] = 1;
      if (visit(vertices, arcs, p)) self(self, arc.vertex, p);
      on_path[arc.vertex] = 0;
      arcs.pop_back();
      vertices.pop_back();
    }
  };
  recurse(recurse, start, 1.0);
}

class Decay {
 public:
  Decay(double lambda, int max_len) {
    for (int m = 1; m <= max_len; ++m) table_.push_back(std::pow(lambda, m - 1));
  }
  double operator()(std::size_t edges) const { return table_[edges - 1]; }

 private:
  std::vector<double> table_;
};

std::vector<IdPath> enumerate_ids(const Wag& wag, VertexId a, VertexId b,
                                  const ExploSRConfig& config) {
  Decay decay(config.length_decay, config.max_path_len);
  std::vector<IdPath> out;
  walk(wag, a, config.max_path_len, Direction::Out,
       [&](const std::vector<VertexId>& vertices, const std::vector<const Wag::Arc*>& arcs,
           double product) {
         if (vertices.back() != b) return true;
         IdPath p;
         p.vertices = vertices;
         for (const auto* arc : arcs) p.ordinals.push_back(arc->snippet_ordinal);
         p.strength = decay(arcs.size()) * product;
         out.push_back(std::move(p));
         return false;
       });
  return out;
}

std::pair<VertexId, VertexId> require_pair(const Wag& wag, std::string_view a, std::string_view b) {
  auto va = wag.require(a);
  auto vb = wag.require(b);
  if (va == vb) {
    throw Error(ErrorCode::invalid_query,
                "relatedness of '" + std::string(a) + "' to itself is undefined");
  }
  return {va, vb};
}

}  // namespace

void ExploSRConfig::validate() const {
  if (max_path_len < 1 || max_path_len > 8)
    throw Error(ErrorCode::bad_request, "max path length must be in [1, 8]");
  if (!(length_decay > 0.0 && length_decay <= 1.0))
    throw Error(ErrorCode::bad_request, "length decay must be in (0, 1]");
  if (explain_top_k < 1) throw Error(ErrorCode::bad_request, "explain_top_k must be >= 1");
}

double path_strength(std::span<const double> weights, double length_decay) {
  double product = 1.0;
  for (double w : weights) product *= w;
  return std::pow(length_decay, static_cast<double>(weights.size()) - 1.0) * product;
}

std::vector<PathWitness> enumerate_paths(const Wag& wag, std::string_view a, std::string_view b,
                                         const ExploSRConfig& config) {
  config.validate();
  auto [va, vb] = require_pair(wag, a, b);
  std::vector<PathWitness> out;
  for (const auto& p : enumerate_ids(wag, va, vb, config)) out.push_back(to_witness(wag, p));
  return out;
}

RelatednessScore relate(const Wag& wag, std::string_view a, std::string_view b,
                        const ExploSRConfig& config) {
  config.validate();
  auto [va, vb] = require_pair(wag, a, b);
  auto forward = enumerate_ids(wag, va, vb, config);
  auto backward = enumerate_ids(wag, vb, va, config);

  double forward_sum = 0.0;
  for (const auto& p : forward) forward_sum += p.strength;
  double backward_sum = 0.0;
  for (const auto& p : backward) backward_sum += p.strength;

  RelatednessScore score;
  score.a = std::string(a);
  score.b = std::string(b);
  score.value = forward_sum + backward_sum;

  TopK top(static_cast<std::size_t>(config.explain_top_k));
  for (auto& p : forward) top.offer(std::move(p));
  for (auto& p : backward) top.offer(std::move(p));
  for (const auto& p : top.take()) score.witnesses.push_back(to_witness(wag, p));
  return score;
}

std::map<std::string, RelatednessScore> relate_to_set(const Wag& wag, std::string_view a,
                                                      std::span<const std::string> targets,
                                                      const ExploSRConfig& config) {
  config.validate();
  auto va = wag.require(a);
  const auto k = static_cast<std::size_t>(config.explain_top_k);

  // slot[v] indexes the per-target accumulators, -1 for non-targets.
  std::vector<int> slot(wag.vertex_count(), -1);
  std::vector<VertexId> target_ids;
  for (const auto& t : targets) {
    auto v = wag.require(t);
    if (v == va || slot[v] >= 0) continue;
    slot[v] = static_cast<int>(target_ids.size());
    target_ids.push_back(v);
  }
  std::map<std::string, RelatednessScore> result;
  if (target_ids.empty()) return result;

  Decay decay(config.length_decay, config.max_path_len);
  std::vector<double> forward_sum(target_ids.size(), 0.0);
  std::vector<TopK> top(target_ids.size(), TopK(k));

  // a -> ... -> b. The DFS meets the paths to each b in the same
  // lexicographic order as enumerate_paths(a, b), so the sums match bit for bit.
  walk(wag, va, config.max_path_len, Direction::Out,
       [&](const std::vector<VertexId>& vertices, const std::vector<const Wag::Arc*>& arcs,
           double product) {
         int s = slot[vertices.back()];
         if (s >= 0) {
           IdPath p;
           p.vertices = vertices;
           for (const auto* arc : arcs) p.ordinals.push_back(arc->snippet_ordinal);
           p.strength = decay(arcs.size()) * product;
           forward_sum[s] += p.strength;
           top[s].offer(std::move(p));
         }
         return true;
       });

  // b -> ... -> a, found backwards from a. Weights are collected in forward
  // order and the paths re-sorted per target before summing.
  struct Pending {
    std::vector<VertexId> vertices;
    std::vector<double> weights;
    std::vector<std::uint32_t> ordinals;
  };
  std::vector<std::vector<Pending>> backward(target_ids.size());
  walk(wag, va, config.max_path_len, Direction::In,
       [&](const std::vector<VertexId>& vertices, const std::vector<const Wag::Arc*>& arcs,
           double) {
         int s = slot[vertices.back()];
         if (s >= 0) {
           Pending p;
           p.vertices.assign(vertices.rbegin(), vertices.rend());
           for (auto it = arcs.rbegin(); it != arcs.rend(); ++it) {
             p.weights.push_back((*it)->weight);
             p.ordinals.push_back((*it)->snippet_ordinal);
           }
           backward[s].push_back(std::move(p));
         }
         return true;
       });

  for (std::size_t s = 0; s < target_ids.size(); ++s) {
    auto& paths = backward[s];
    std::sort(paths.begin(), paths.end(),
              [](const Pending& x, const Pending& y) { return x.vertices < y.vertices; });
    double backward_sum = 0.0;
    for (auto& p : paths) {
      IdPath id_path;
      double product = 1.0;
      for (double w : p.weights) product *= w;
      id_path.strength = decay(p.weights.size()) * product;
      backward_sum += id_path.strength;
      id_path.vertices = std::move(p.vertices);
      id_path.ordinals = std::move(p.ordinals);
      top[s].offer(std::move(id_path));
    }

    RelatednessScore score;
    score.a = std::string(a);
    score.b = wag.title(target_ids[s]);
    score.value = forward_sum[s] + backward_sum;
    for (const auto& p : top[s].take()) score.witnesses.push_back(to_witness(wag, p));
    auto key = score.b;
    result.emplace(std::move(key), std::move(score));
  }
  return result;
}

Explanation explain(const CorpusIndex& corpus, const RelatednessScore& score) {
  if (score.value <= 0.0 || score.witnesses.empty()) {
    throw Error(ErrorCode::no_explanation,
                "'" + score.a + "' and '" + score.b + "' are not related");
  }
  Explanation out;
  out.a = score.a;
  out.b = score.b;
  out.value = score.value;
  for (const auto& w : score.witnesses) {
    ExplainedPath path;
    path.strength = w.strength;
    for (std::size_t i = 0; i < w.bridges.size(); ++i) {
      const auto& bridge = w.bridges[i];
      const auto& article = corpus.at(bridge.article_title);
      if (bridge.snippet_ordinal >= article.snippets.size()) {
        throw Error(ErrorCode::data_error, "graph and corpus disagree on snippets of '" +
                                               bridge.article_title + "'");
      }
      const auto& snippet = article.snippets[bridge.snippet_ordinal];
      path.hops.push_back({article.title, snippet.heading_path, snippet.text, w.vertices[i + 1]});
    }
    out.paths.push_back(std::move(path));
  }
  return out;
}

}  // namespace eesd

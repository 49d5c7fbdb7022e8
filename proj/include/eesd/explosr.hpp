#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eesd/corpus.hpp"
#include "eesd/wag.hpp"

namespace eesd {

struct ExploSRConfig {
  int max_path_len = 3;      // K, edges per path
  double length_decay = 0.5;  // lambda in (0, 1]
  int explain_top_k = 3;

  // Throws Error(bad_request) when a field is out of range.
  void validate() const;
};

// Snippet of `article_title` holding the link to the next path vertex.
struct BridgeRef {
  std::string article_title;
  std::uint32_t snippet_ordinal = 0;

  friend bool operator==(const BridgeRef&, const BridgeRef&) = default;
};

// A simple path with strength lambda^(m-1) * product of its m edge weights.
struct PathWitness {
  std::vector<std::string> vertices;
  double strength = 0.0;
  std::vector<BridgeRef> bridges;

  std::size_t length() const { return bridges.size(); }
  friend bool operator==(const PathWitness&, const PathWitness&) = default;
};

struct RelatednessScore {
  std::string a;
  std::string b;
  double value = 0.0;
  std::vector<PathWitness> witnesses;  // strongest first, ties by vertex sequence

  friend bool operator==(const RelatednessScore&, const RelatednessScore&) = default;
};

// Strength of a path from its edge weights in path order.
double path_strength(std::span<const double> weights, double length_decay);

// All simple paths a -> ... -> b with at most K edges, in lexicographic order
// of their vertex sequences.
std::vector<PathWitness> enumerate_paths(const Wag& wag, std::string_view a, std::string_view b,
                                         const ExploSRConfig& config);

// Sum of path strengths a->b plus b->a. Throws Error(invalid_query) for a == b.
RelatednessScore relate(const Wag& wag, std::string_view a, std::string_view b,
                        const ExploSRConfig& config);

// relate(a, b) for every b in `targets` except `a`, from one bounded traversal
// in each direction. Values are bit-identical to the per-pair route.
std::map<std::string, RelatednessScore> relate_to_set(const Wag& wag, std::string_view a,
                                                      std::span<const std::string> targets,
                                                      const ExploSRConfig& config);

struct ExplanationHop {
  std::string article;
  std::vector<std::string> heading_path;
  std::string snippet;
  std::string next;  // the article this hop's link points to
};

struct ExplainedPath {
  double strength = 0.0;
  std::vector<ExplanationHop> hops;
};

struct Explanation {
  std::string a;
  std::string b;
  double value = 0.0;
  std::vector<ExplainedPath> paths;
};

// Renders the witnesses as snippet chains. Throws Error(no_explanation) when
// the score is zero.
Explanation explain(const CorpusIndex& corpus, const RelatednessScore& score);

}  // namespace eesd

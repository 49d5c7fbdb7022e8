#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "eesd/corpus.hpp"
#include "eesd/wag.hpp"

namespace eesd {

struct NarrativeConfig {
  int max_hops = 6;
  double length_decay = 0.5;
};

struct NarrativeRequest {
  std::string start;  // spatial
  std::string end;    // spatial
  int snippet_count = 4;
};

struct NarrativeStep {
  std::string article;
  std::vector<std::string> heading_path;
  std::string snippet;
  std::uint32_t ordinal = 0;
  bool bridge = false;  // holds the link to the next path vertex
};

struct Narrative {
  NarrativeRequest request;
  std::vector<std::string> path;  // start, interiors..., end
  std::vector<NarrativeStep> steps;
  double path_strength = 0.0;
};

struct StoryPath {
  std::vector<std::string> vertices;
  double strength = 0.0;
};

// Strongest simple path start -> end (same strength as relatedness paths)
// whose one or more interior vertices are all non-spatial, within
// config.max_hops edges. Equal strengths go to the lexicographically smaller
// vertex sequence. Throws Error(no_narrative) when there is none.
StoryPath optimal_path(const Wag& wag, const CorpusIndex& corpus, std::string_view start,
                       std::string_view end, const NarrativeConfig& config = {});

Narrative generate_narrative(const Wag& wag, const CorpusIndex& corpus,
                             const NarrativeRequest& request, const NarrativeConfig& config = {});

// The story from end back to start, over its own path.
Narrative reverse_narrative(const Wag& wag, const CorpusIndex& corpus,
                            const NarrativeRequest& request, const NarrativeConfig& config = {});

}  // namespace eesd

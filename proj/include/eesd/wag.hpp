#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eesd/corpus.hpp"

namespace eesd {

using VertexId = std::uint32_t;

struct WagEdge {
  std::string source;
  std::string target;
  double weight = 0.0;
  double position_fraction = 0.0;
  std::uint32_t snippet_ordinal = 0;  // snippet of `source` holding the link
};

enum class Direction { Out, In };

// Directed article graph in CSR form. Vertex ids follow title order, so id
// order and lexicographic title order agree.
class Wag {
 public:
  struct Arc {
    VertexId vertex;  // target for out-arcs, source for in-arcs
    double weight;
    double position_fraction;
    std::uint32_t snippet_ordinal;
  };

  Wag() = default;

  // Throws std::invalid_argument on self-loops, duplicate pairs, unknown
  // endpoints or weights outside (0, 1].
  static Wag from_edges(std::vector<std::string> vertices, std::span<const WagEdge> edges);

  std::size_t vertex_count() const { return titles_.size(); }
  std::size_t edge_count() const { return out_arcs_.size(); }
  const std::vector<std::string>& vertices() const { return titles_; }

  std::optional<VertexId> id_of(std::string_view title) const;
  // Throws Error(not_found).
  VertexId require(std::string_view title) const;
  bool contains(std::string_view title) const { return id_of(title).has_value(); }
  const std::string& title(VertexId v) const { return titles_[v]; }

  std::span<const Arc> out_arcs(VertexId v) const {
    return {out_arcs_.data() + out_offsets_[v], out_arcs_.data() + out_offsets_[v + 1]};
  }
  std::span<const Arc> in_arcs(VertexId v) const {
    return {in_arcs_.data() + in_offsets_[v], in_arcs_.data() + in_offsets_[v + 1]};
  }
  std::size_t outdeg(VertexId v) const { return out_offsets_[v + 1] - out_offsets_[v]; }
  // Out-arc v -> w, if present.
  const Arc* find_arc(VertexId v, VertexId w) const;

 private:
  friend Wag load_wag(const std::filesystem::path& dir);
  void build_reverse();

  std::vector<std::string> titles_;
  std::vector<std::uint64_t> out_offsets_{0};
  std::vector<Arc> out_arcs_;
  std::vector<std::uint64_t> in_offsets_{0};
  std::vector<Arc> in_arcs_;
};

// (1 - position_fraction / 2) / log2(2 + source_outdeg)
double edge_weight(double position_fraction, std::size_t source_outdeg);

// Vertices are the spatial and non-spatial articles. Each distinct resolved
// target yields one edge from its earliest occurrence. Temporal and dangling
// targets are dropped before outdegree is counted.
Wag build_wag(const CorpusIndex& corpus);

// Out- or in-edges of `title`, ordered by the neighbouring title.
std::vector<WagEdge> neighbors(const Wag& wag, std::string_view title, Direction direction);

void save_wag(const Wag& wag, const std::filesystem::path& dir);
Wag load_wag(const std::filesystem::path& dir);

}  // namespace eesd

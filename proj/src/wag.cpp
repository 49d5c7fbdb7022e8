#include "eesd/wag.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "binary_io.hpp"

namespace eesd {
namespace {

constexpr std::string_view kWagMagic("EESDWAG\0", 8);
constexpr std::uint32_t kWagVersion = 1;

}  // namespace

double edge_weight(double position_fraction, std::size_t source_outdeg) {
  if (source_outdeg == 0) throw std::invalid_argument("edge_weight: outdegree must be >= 1");
  if (!(position_fraction >= 0.0 && position_fraction < 1.0))
    throw std::invalid_argument("edge_weight: position fraction outside [0,1)");
  return (1.0 - position_fraction / 2.0) / std::log2(2.0 + static_cast<double>(source_outdeg));
}

std::optional<VertexId> Wag::id_of(std::string_view title) const {
  auto it = std::lower_bound(titles_.begin(), titles_.end(), title);
  if (it == titles_.end() || *it != title) return std::nullopt;
  return static_cast<VertexId>(it - titles_.begin());
}

VertexId Wag::require(std::string_view title) const {
  auto id = id_of(title);
  if (!id) throw Error(ErrorCode::not_found, "'" + std::string(title) + "' is not a graph vertex");
  return *id;
}

const Wag::Arc* Wag::find_arc(VertexId v, VertexId w) const {
  auto arcs = out_arcs(v);
  auto it = std::lower_bound(arcs.begin(), arcs.end(), w,
                             [](const Arc& a, VertexId id) { return a.vertex < id; });
  return it != arcs.end() && it->vertex == w ? &*it : nullptr;
}

Wag Wag::from_edges(std::vector<std::string> vertices, std::span<const WagEdge> edges) {
  Wag g;
  std::sort(vertices.begin(), vertices.end());
  if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
    throw std::invalid_argument("duplicate vertex title");
  g.titles_ = std::move(vertices);

  struct Flat {
    VertexId source;
    Arc arc;
  };
  std::vector<Flat> flat;
  flat.reserve(edges.size());
  for (const auto& e : edges) {
    auto s = g.id_of(e.source);
    auto t = g.id_of(e.target);
    if (!s || !t) throw std::invalid_argument("edge endpoint is not a vertex: " + e.source + " -> " + e.target);
    if (*s == *t) throw std::invalid_argument("self-loop on " + e.source);
    if (!(e.weight > 0.0 && e.weight <= 1.0)) throw std::invalid_argument("edge weight outside (0,1]");
    flat.push_back({*s, Arc{*t, e.weight, e.position_fraction, e.snippet_ordinal}});
  }
  std::sort(flat.begin(), flat.end(), [](const Flat& a, const Flat& b) {
    return a.source != b.source ? a.source < b.source : a.arc.vertex < b.arc.vertex;
  });
  for (std::size_t i = 1; i < flat.size(); ++i) {
    if (flat[i].source == flat[i - 1].source && flat[i].arc.vertex == flat[i - 1].arc.vertex)
      throw std::invalid_argument("duplicate edge " + g.titles_[flat[i].source] + " -> " +
                                  g.titles_[flat[i].arc.vertex]);
  }
  g.out_offsets_.assign(g.titles_.size() + 1, 0);
  g.out_arcs_.reserve(flat.size());
  for (const auto& f : flat) {
    ++g.out_offsets_[f.source + 1];
    g.out_arcs_.push_back(f.arc);
  }
  for (std::size_t v = 0; v < g.titles_.size(); ++v) g.out_offsets_[v + 1] += g.out_offsets_[v];
  g.build_reverse();
  return g;
}

void Wag::build_reverse() {
  auto n = titles_.size();
  in_offsets_.assign(n + 1, 0);
  for (const auto& a : out_arcs_) ++in_offsets_[a.vertex + 1];
  for (std::size_t v = 0; v < n; ++v) in_offsets_[v + 1] += in_offsets_[v];
  in_arcs_.assign(out_arcs_.size(), Arc{});
  auto cursor = in_offsets_;
  // Sources visited in id order, so each in-list comes out sorted.
  for (VertexId s = 0; s < n; ++s) {
    for (const auto& a : out_arcs(s)) {
      in_arcs_[cursor[a.vertex]++] = Arc{s, a.weight, a.position_fraction, a.snippet_ordinal};
    }
  }
}

Wag build_wag(const CorpusIndex& corpus) {
  std::vector<std::string> vertices;
  for (const auto& [title, a] : corpus.articles) {
    if (a.kind != ArticleKind::Temporal) vertices.push_back(title);
  }
  std::vector<WagEdge> edges;
  std::unordered_set<std::string_view> seen;
  for (const auto& [title, a] : corpus.articles) {
    if (a.kind == ArticleKind::Temporal) continue;
    seen.clear();
    auto first = edges.size();
    for (const auto& link : a.links) {
      if (link.dangling || link.target_title == title) continue;
      const auto* target = corpus.find(link.target_title);
      if (!target || target->kind == ArticleKind::Temporal) continue;
      if (!seen.insert(link.target_title).second) continue;  // earliest occurrence only
      const auto* snippet = a.snippet_at(link.char_offset);
      if (!snippet) continue;
      WagEdge e;
      e.source = title;
      e.target = link.target_title;
      e.position_fraction = link.position_fraction;
      e.snippet_ordinal = snippet->ordinal;
      edges.push_back(std::move(e));
    }
    auto outdeg = edges.size() - first;
    for (auto i = first; i < edges.size(); ++i) {
      edges[i].weight = edge_weight(edges[i].position_fraction, outdeg);
    }
  }
  return Wag::from_edges(std::move(vertices), edges);
}

std::vector<WagEdge> neighbors(const Wag& wag, std::string_view title, Direction direction) {
  auto v = wag.require(title);
  std::vector<WagEdge> out;
  auto arcs = direction == Direction::Out ? wag.out_arcs(v) : wag.in_arcs(v);
  out.reserve(arcs.size());
  for (const auto& a : arcs) {
    WagEdge e;
    e.source = direction == Direction::Out ? wag.title(v) : wag.title(a.vertex);
    e.target = direction == Direction::Out ? wag.title(a.vertex) : wag.title(v);
    e.weight = a.weight;
    e.position_fraction = a.position_fraction;
    e.snippet_ordinal = a.snippet_ordinal;
    out.push_back(std::move(e));
  }
  return out;
}

void save_wag(const Wag& wag, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  detail::BinaryWriter w;
  w.bytes(kWagMagic);
  w.u32(kWagVersion);
  w.u32(static_cast<std::uint32_t>(wag.vertex_count()));
  w.u64(wag.edge_count());
  for (const auto& t : wag.vertices()) w.str(t);
  std::uint64_t offset = 0;
  w.u64(offset);
  for (VertexId v = 0; v < wag.vertex_count(); ++v) {
    offset += wag.outdeg(v);
    w.u64(offset);
  }
  for (VertexId v = 0; v < wag.vertex_count(); ++v) {
    for (const auto& a : wag.out_arcs(v)) {
      w.u32(a.vertex);
      w.f64(a.weight);
      w.f64(a.position_fraction);
      w.u32(a.snippet_ordinal);
    }
  }
  detail::write_file_atomic((dir / "wag.idx").string(), w.data());
}

Wag load_wag(const std::filesystem::path& dir) {
  auto data = detail::read_file((dir / "wag.idx").string());
  detail::BinaryReader r(data, "wag.idx");
  if (r.take(8) != kWagMagic) r.fail("bad magic");
  if (r.u32() != kWagVersion) r.fail("unsupported version");
  Wag g;
  auto n = r.u32();
  auto m = r.u64();
  g.titles_.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i) g.titles_.push_back(r.str());
  if (!std::is_sorted(g.titles_.begin(), g.titles_.end())) r.fail("vertex table not sorted");
  g.out_offsets_.resize(n + 1);
  for (auto& o : g.out_offsets_) o = r.u64();
  if (g.out_offsets_.front() != 0 || g.out_offsets_.back() != m) r.fail("bad offsets");
  g.out_arcs_.resize(m);
  for (auto& a : g.out_arcs_) {
    a.vertex = r.u32();
    a.weight = r.f64();
    a.position_fraction = r.f64();
    a.snippet_ordinal = r.u32();
    if (a.vertex >= n) r.fail("arc target out of range");
  }
  if (!r.at_end()) r.fail("trailing bytes");
  g.build_reverse();
  return g;
}

}  // namespace eesd

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eesd/error.hpp"

namespace eesd {

enum class ArticleKind : std::uint8_t {
  Spatial = 0,
  NonSpatial = 1,
  Temporal = 2,
};

std::string_view to_string(ArticleKind kind);

// One namespace-0 page as read from the export.
struct RawPage {
  std::string title;
  std::int64_t page_id = 0;
  std::string wikitext;
  std::optional<std::string> redirect_target;
};

// A prose wikilink. Offsets are UTF-8 byte offsets into the article's
// clean text.
struct LinkOccurrence {
  std::string target_title;
  std::string anchor_text;
  std::uint32_t char_offset = 0;
  double position_fraction = 0.0;
  // Set after redirect resolution when the target names no article.
  bool dangling = false;
};

struct HeadingMarker {
  int depth = 1;  // "== X ==" is depth 1
  std::string title;
  std::size_t offset = 0;  // position in clean text where the section starts
};

struct Snippet {
  std::string article_title;
  std::uint32_t ordinal = 0;
  std::vector<std::string> heading_path;
  std::string text;
  std::uint32_t begin = 0;  // [begin, end) in clean text
  std::uint32_t end = 0;

  bool contains(std::uint32_t offset) const {
    return offset >= begin && offset < end;
  }
};

struct Coordinate {
  double lat = 0.0;
  double lon = 0.0;

  friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

struct Article {
  std::string title;
  ArticleKind kind = ArticleKind::NonSpatial;
  std::optional<Coordinate> coordinate;
  std::uint32_t clean_length = 0;
  std::vector<Snippet> snippets;
  std::vector<LinkOccurrence> links;

  // Snippet whose span holds `offset`, or nullptr.
  const Snippet* snippet_at(std::uint32_t offset) const;
};

struct KindCounts {
  std::size_t spatial = 0;
  std::size_t nonspatial = 0;
  std::size_t temporal = 0;

  std::size_t total() const { return spatial + nonspatial + temporal; }
  friend bool operator==(const KindCounts&, const KindCounts&) = default;
};

struct CorpusIndex {
  std::map<std::string, Article, std::less<>> articles;
  std::map<std::string, std::string, std::less<>> redirects;
  KindCounts counts;
  std::string language = "en";

  const Article* find(std::string_view title) const;
  // Throws Error(not_found).
  const Article& at(std::string_view title) const;
  // Canonicalizes and follows the redirect table; the result may not exist.
  std::string resolve(std::string_view title) const;
  std::vector<std::string> titles_of_kind(ArticleKind kind) const;
};

// Follows redirect chains to a fixpoint. Chains longer than five hops and
// cycles are dropped with one warning per dropped alias.
std::map<std::string, std::string, std::less<>> resolve_redirects(
    std::span<const RawPage> pages, Diagnostics& diag);

// Turns one non-redirect page into an Article (markup stripped, snippets
// segmented, geotag read, temporal class decided). Links are unresolved.
Article process_page(const RawPage& page, Diagnostics& diag);

// Incremental corpus assembly so an export can be ingested page by page.
class CorpusBuilder {
 public:
  explicit CorpusBuilder(Diagnostics& diag) : diag_(diag) {}

  void add(RawPage page);
  void set_language(std::string language) { language_ = std::move(language); }
  CorpusIndex finish() &&;

 private:
  Diagnostics& diag_;
  std::string language_ = "en";
  std::map<std::string, Article, std::less<>> articles_;
  std::map<std::string, RawPage, std::less<>> redirect_pages_;
};

CorpusIndex build_corpus(std::span<const RawPage> pages, Diagnostics& diag);

}  // namespace eesd

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eesd/corpus.hpp"
#include "eesd/error.hpp"

namespace eesd {

// MediaWiki "first-letter" title normalization: underscores become spaces,
// runs of spaces collapse, a #fragment is cut, and a leading ASCII letter is
// upper-cased. Non-ASCII first letters are left as written.
std::string canonical_title(std::string_view title);

struct StrippedText {
  std::string clean_text;
  std::vector<LinkOccurrence> links;
  std::vector<HeadingMarker> headings;
  std::size_t warnings = 0;
};

// Removes templates, tables, file/category links, comments, refs and inline
// formatting. Prose wikilinks are replaced by their anchor text and recorded
// with offsets. Headings become markers and a line break in the clean text.
StrippedText strip_markup(std::string_view wikitext);

// One snippet per blank-line separated paragraph, tagged with the enclosing
// heading path.
std::vector<Snippet> segment_snippets(std::string_view article_title,
                                      std::string_view clean_text,
                                      std::span<const HeadingMarker> headings);

// Reads the first {{coord}} template. Decimal and DMS argument forms.
std::optional<Coordinate> extract_geotag(std::string_view wikitext,
                                         Diagnostics* diag = nullptr);

// Title patterns for purely temporal articles. Month names are the
// locale-dependent part.
struct TemporalProfile {
  std::vector<std::string> month_names;
  std::vector<std::string> era_suffixes;
  std::string century_word;

  static const TemporalProfile& english();
};

bool classify_temporal(std::string_view title,
                       const TemporalProfile& profile = TemporalProfile::english());

}  // namespace eesd

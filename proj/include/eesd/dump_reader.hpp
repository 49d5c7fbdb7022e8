#pragma once

#include <functional>
#include <istream>
#include <string>
#include <vector>

#include "eesd/corpus.hpp"

namespace eesd {

struct DumpInfo {
  std::string language;  // xml:lang of the root element, if any
  std::size_t pages_seen = 0;
  std::size_t pages_kept = 0;
};

// Streams a MediaWiki XML export and hands each namespace-0 page to `sink`
// as soon as its </page> is read. Only one page is held in memory.
// Throws ParseError on malformed XML.
DumpInfo parse_export(std::istream& in, const std::function<void(RawPage&&)>& sink);

std::vector<RawPage> parse_export(std::istream& in);

}  // namespace eesd

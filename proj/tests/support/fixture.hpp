#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "eesd/dump_reader.hpp"
#include "eesd/layers.hpp"

namespace fixture {

inline std::filesystem::path dir() { return EESD_FIXTURE_DIR; }
inline std::filesystem::path miniwiki() { return dir() / "miniwiki.xml"; }

inline std::vector<eesd::RawPage> raw_pages() {
  std::ifstream in(miniwiki(), std::ios::binary);
  return eesd::parse_export(in);
}

inline eesd::CorpusIndex corpus(eesd::Diagnostics* diag = nullptr) {
  eesd::Diagnostics local;
  auto pages = raw_pages();
  return eesd::build_corpus(pages, diag ? *diag : local);
}

// Built once per test binary.
inline const eesd::Engine& engine() {
  static const eesd::Engine e = eesd::Engine::from_corpus(corpus());
  return e;
}

// Distinct prose link targets of every graph vertex, counted by hand from the
// fixture source: redirects followed, templates, tables and refs skipped,
// temporal articles and self-links dropped.
inline const std::map<std::string, std::vector<std::string>>& hand_adjacency() {
  static const std::map<std::string, std::vector<std::string>> adj = {
      {"Beach", {"Lifeguard", "Malibu", "Ocean wave", "Sydney", "Tourism"}},
      {"Berlin", {"Bicycle", "Germany", "Peace of Westphalia", "Tourism"}},
      {"Biarritz", {"Beach", "Rugby union", "Surfboard", "Surfing"}},
      {"Bicycle", {"Berlin", "Münster", "Santa Barbara", "Tourism"}},
      {"Coral reef", {"Honolulu", "Ocean wave", "Polynesia", "Suva"}},
      {"Duke Kahanamoku", {"Honolulu", "Polynesia", "Surfing", "Sydney"}},
      {"George W. Bush", {"Berlin", "Santa Barbara", "Sydney"}},
      {"Germany", {"Berlin", "Bicycle", "Peace of Westphalia"}},
      {"Honolulu",
       {"Coral reef", "Duke Kahanamoku", "Pacific Ocean", "Polynesia", "Surfing", "Tourism"}},
      {"Lifeguard", {"Beach", "Surfboard", "Sydney"}},
      {"Malibu", {"Beach", "Lifeguard", "Pacific Ocean", "Surfboard", "Surfing", "Tourism"}},
      {"Multi-touch", {"Tourism", "University"}},
      {"Münster", {"Bicycle", "Germany", "Peace of Westphalia", "University"}},
      {"Ocean wave", {"Beach", "Coral reef", "Pacific Ocean", "Surfing"}},
      {"Oil platform", {"Santa Barbara"}},
      {"Pacific Ocean", {"Coral reef", "Honolulu", "Polynesia", "Suva"}},
      {"Peace of Westphalia", {"Germany", "Münster"}},
      {"Polynesia", {"Honolulu", "Pacific Ocean", "Surfing"}},
      {"Rugby union", {"Biarritz", "Suva", "Sydney"}},
      {"Santa Barbara",
       {"Beach", "Ocean wave", "Oil platform", "Pacific Ocean", "Surfboard", "Surfing", "Tourism",
        "University"}},
      {"Surfboard", {"Malibu", "Ocean wave", "Santa Barbara", "Surfing"}},
      {"Surfing",
       {"Beach", "Biarritz", "Duke Kahanamoku", "Honolulu", "Lifeguard", "Malibu", "Ocean wave",
        "Polynesia", "Santa Barbara", "Surfboard", "Sydney"}},
      {"Suva", {"Coral reef", "Pacific Ocean", "Polynesia", "Rugby union", "Tourism"}},
      {"Sydney",
       {"Duke Kahanamoku", "Lifeguard", "Pacific Ocean", "Rugby union", "Surfing", "Tourism"}},
      {"Tourism", {"Berlin", "Biarritz", "Honolulu", "Santa Barbara"}},
      {"University", {"Germany", "Münster", "Santa Barbara"}},
  };
  return adj;
}

inline const std::vector<std::string> kSpatial = {"Berlin", "Biarritz", "Honolulu", "Malibu",
                                                  "Münster", "Santa Barbara", "Suva", "Sydney"};
inline const std::vector<std::string> kTemporal = {"1983", "October 1"};

// Writes a synthetic export with `articles` pages and about `links_per`
// prose links each. Every tenth page carries a coord template.
inline void write_synthetic_dump(std::ostream& out, int articles, int links_per,
                                 std::uint64_t seed = 7) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, articles - 1);
  auto name = [](int i) { return "Topic " + std::to_string(i); };
  out << "<mediawiki xmlns=\"http://www.mediawiki.org/xml/export-0.10/\" xml:lang=\"en\">\n";
  for (int i = 0; i < articles; ++i) {
    out << "<page><title>" << name(i) << "</title><ns>0</ns><id>" << i + 1
        << "</id><revision><text xml:space=\"preserve\">";
    if (i % 10 == 0) {
      out << "{{coord|" << (i % 170) - 85 << "." << i % 7 << "|" << (i % 350) - 175 << ".5}}\n";
    }
    out << "'''" << name(i) << "''' is a synthetic article.\n\n";
    for (int k = 0; k < links_per; ++k) {
      out << "It mentions [[" << name(pick(rng)) << "]] in passing";
      out << (k % 3 == 2 ? ".\n\n== Part " + std::to_string(k) + " ==\n" : ". ");
    }
    out << "</text></revision></page>\n";
  }
  out << "</mediawiki>\n";
}

}  // namespace fixture

#pragma once

#include <filesystem>

#include "eesd/corpus.hpp"

namespace eesd {

inline constexpr std::uint32_t kIndexFormatVersion = 1;

// Writes manifest.json and articles.idx into `dir` (created if missing).
// Output depends only on the index contents. Layout: docs/index-format.md.
void save_corpus(const CorpusIndex& index, const std::filesystem::path& dir);

// Throws Error(data_error) on a missing, truncated or foreign file.
CorpusIndex load_corpus(const std::filesystem::path& dir);

}  // namespace eesd

#include "eesd/index_io.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "binary_io.hpp"
#include "json.hpp"

namespace eesd {

namespace detail {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::data_error, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file_atomic(const std::string& path, std::string_view contents) {
  auto tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::data_error, "cannot write " + tmp);
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(ErrorCode::data_error, "short write to " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace detail

namespace {

constexpr std::string_view kArticlesMagic = "EESDART\0";
constexpr std::string_view kArticlesFile = "articles.idx";
constexpr std::string_view kManifestFile = "manifest.json";

}  // namespace

void save_corpus(const CorpusIndex& index, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);

  detail::BinaryWriter w;
  w.bytes(std::string_view(kArticlesMagic.data(), 8));
  w.u32(kIndexFormatVersion);
  w.u32(static_cast<std::uint32_t>(index.articles.size()));
  for (const auto& [title, a] : index.articles) {
    w.str(title);
    w.u8(static_cast<std::uint8_t>(a.kind));
    w.f64(a.coordinate ? a.coordinate->lat : 0.0);
    w.f64(a.coordinate ? a.coordinate->lon : 0.0);
    w.u32(a.clean_length);
    w.u32(static_cast<std::uint32_t>(a.snippets.size()));
    for (const auto& s : a.snippets) {
      w.u32(s.begin);
      w.u32(s.end);
      w.u8(static_cast<std::uint8_t>(s.heading_path.size()));
      for (const auto& h : s.heading_path) w.str(h);
      w.str(s.text);
    }
    w.u32(static_cast<std::uint32_t>(a.links.size()));
    for (const auto& l : a.links) {
      w.str(l.target_title);
      w.str(l.anchor_text);
      w.u32(l.char_offset);
      w.f64(l.position_fraction);
      w.u8(l.dangling ? 1 : 0);
    }
  }
  w.u32(static_cast<std::uint32_t>(index.redirects.size()));
  for (const auto& [alias, target] : index.redirects) {
    w.str(alias);
    w.str(target);
  }
  detail::write_file_atomic((dir / kArticlesFile).string(), w.data());

  nlohmann::json manifest;
  manifest["format_version"] = kIndexFormatVersion;
  manifest["language"] = index.language;
  manifest["counts"] = {{"spatial", index.counts.spatial},
                        {"nonspatial", index.counts.nonspatial},
                        {"temporal", index.counts.temporal},
                        {"total", index.counts.total()},
                        {"redirects", index.redirects.size()}};
  manifest["files"] = {std::string(kArticlesFile)};
  detail::write_file_atomic((dir / kManifestFile).string(), manifest.dump(2) + "\n");
}

CorpusIndex load_corpus(const std::filesystem::path& dir) {
  CorpusIndex index;
  auto manifest_text = detail::read_file((dir / kManifestFile).string());
  nlohmann::json manifest;
  try {
    manifest = nlohmann::json::parse(manifest_text);
    if (manifest.at("format_version").get<std::uint32_t>() != kIndexFormatVersion) {
      throw Error(ErrorCode::data_error, "unsupported index format version");
    }
    index.language = manifest.value("language", "en");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::data_error, std::string("bad manifest: ") + e.what());
  }

  auto data = detail::read_file((dir / kArticlesFile).string());
  detail::BinaryReader r(data, std::string(kArticlesFile));
  if (r.take(8) != std::string_view(kArticlesMagic.data(), 8)) r.fail("bad magic");
  if (r.u32() != kIndexFormatVersion) r.fail("unsupported version");
  auto count = r.u32();
  for (std::uint32_t i = 0; i < count; ++i) {
    Article a;
    a.title = r.str();
    auto kind = r.u8();
    if (kind > 2) r.fail("bad article kind");
    a.kind = static_cast<ArticleKind>(kind);
    Coordinate c;
    c.lat = r.f64();
    c.lon = r.f64();
    if (a.kind == ArticleKind::Spatial) a.coordinate = c;
    a.clean_length = r.u32();
    auto snippets = r.u32();
    a.snippets.reserve(snippets);
    for (std::uint32_t k = 0; k < snippets; ++k) {
      Snippet s;
      s.article_title = a.title;
      s.ordinal = k;
      s.begin = r.u32();
      s.end = r.u32();
      auto depth = r.u8();
      for (std::uint8_t d = 0; d < depth; ++d) s.heading_path.push_back(r.str());
      s.text = r.str();
      a.snippets.push_back(std::move(s));
    }
    auto links = r.u32();
    a.links.reserve(links);
    for (std::uint32_t k = 0; k < links; ++k) {
      LinkOccurrence l;
      l.target_title = r.str();
      l.anchor_text = r.str();
      l.char_offset = r.u32();
      l.position_fraction = r.f64();
      l.dangling = r.u8() != 0;
      a.links.push_back(std::move(l));
    }
    switch (a.kind) {
      case ArticleKind::Spatial:
        ++index.counts.spatial;
        break;
      case ArticleKind::NonSpatial:
        ++index.counts.nonspatial;
        break;
      case ArticleKind::Temporal:
        ++index.counts.temporal;
        break;
    }
    auto title = a.title;
    index.articles.emplace(std::move(title), std::move(a));
  }
  auto redirects = r.u32();
  for (std::uint32_t k = 0; k < redirects; ++k) {
    auto alias = r.str();
    index.redirects.emplace(std::move(alias), r.str());
  }
  if (!r.at_end()) r.fail("trailing bytes");
  return index;
}

}  // namespace eesd

#include "eesd/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "eesd/wikitext.hpp"

namespace eesd {
namespace {

constexpr int kMaxRedirectHops = 5;

using RedirectMap = std::map<std::string, std::string, std::less<>>;

RedirectMap resolve_map(const RedirectMap& raw, Diagnostics& diag) {
  RedirectMap resolved;
  for (const auto& [alias, first] : raw) {
    std::set<std::string_view> visited{alias};
    std::string_view current = first;
    int hops = 1;
    bool dropped = false;
    while (true) {
      auto next = raw.find(current);
      if (next == raw.end()) break;
      if (visited.count(current)) {
        diag.warn("redirect cycle through '" + alias + "'; alias dropped");
        dropped = true;
        break;
      }
      if (hops == kMaxRedirectHops) {
        diag.warn("redirect chain from '" + alias + "' exceeds " +
                  std::to_string(kMaxRedirectHops) + " hops; alias dropped");
        dropped = true;
        break;
      }
      visited.insert(current);
      current = next->second;
      ++hops;
    }
    if (!dropped) resolved.emplace(alias, std::string(current));
  }
  return resolved;
}

// Old dumps carry no <redirect/> element; the wikitext still says so.
std::optional<std::string> redirect_from_wikitext(std::string_view text) {
  auto pos = text.find_first_not_of(" \t\r\n");
  if (pos == std::string_view::npos) return std::nullopt;
  text.remove_prefix(pos);
  static constexpr std::string_view kMagic = "#redirect";
  if (text.size() < kMagic.size()) return std::nullopt;
  for (std::size_t i = 0; i < kMagic.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(text[i])) != kMagic[i]) return std::nullopt;
  }
  auto open = text.find("[[");
  auto close = text.find("]]", open == std::string_view::npos ? 0 : open);
  if (open == std::string_view::npos || close == std::string_view::npos) return std::nullopt;
  auto target = text.substr(open + 2, close - open - 2);
  auto pipe = target.find('|');
  if (pipe != std::string_view::npos) target = target.substr(0, pipe);
  auto title = canonical_title(target);
  if (title.empty()) return std::nullopt;
  return title;
}

}  // namespace

std::string_view to_string(ArticleKind kind) {
  switch (kind) {
    case ArticleKind::Spatial:
      return "spatial";
    case ArticleKind::NonSpatial:
      return "nonspatial";
    case ArticleKind::Temporal:
      return "temporal";
  }
  return "unknown";
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::bad_request:
      return "bad_request";
    case ErrorCode::not_found:
      return "not_found";
    case ErrorCode::no_explanation:
      return "no_explanation";
    case ErrorCode::no_narrative:
      return "no_narrative";
    case ErrorCode::invalid_query:
      return "invalid_query";
    case ErrorCode::parse_error:
      return "parse_error";
    case ErrorCode::data_error:
      return "data_error";
  }
  return "unknown";
}

const Snippet* Article::snippet_at(std::uint32_t offset) const {
  auto it = std::upper_bound(snippets.begin(), snippets.end(), offset,
                             [](std::uint32_t off, const Snippet& s) { return off < s.begin; });
  if (it == snippets.begin()) return nullptr;
  --it;
  return it->contains(offset) ? &*it : nullptr;
}

const Article* CorpusIndex::find(std::string_view title) const {
  auto it = articles.find(title);
  return it == articles.end() ? nullptr : &it->second;
}

const Article& CorpusIndex::at(std::string_view title) const {
  const auto* a = find(title);
  if (!a) throw Error(ErrorCode::not_found, "unknown article '" + std::string(title) + "'");
  return *a;
}

std::string CorpusIndex::resolve(std::string_view title) const {
  auto canonical = canonical_title(title);
  auto it = redirects.find(canonical);
  return it == redirects.end() ? canonical : it->second;
}

std::vector<std::string> CorpusIndex::titles_of_kind(ArticleKind kind) const {
  std::vector<std::string> out;
  for (const auto& [title, article] : articles) {
    if (article.kind == kind) out.push_back(title);
  }
  return out;
}

std::map<std::string, std::string, std::less<>> resolve_redirects(
    std::span<const RawPage> pages, Diagnostics& diag) {
  RedirectMap raw;
  for (const auto& page : pages) {
    if (page.redirect_target) raw[page.title] = *page.redirect_target;
  }
  return resolve_map(raw, diag);
}

Article process_page(const RawPage& page, Diagnostics& diag) {
  Article article;
  article.title = page.title;
  auto stripped = strip_markup(page.wikitext);
  if (stripped.warnings > 0) {
    diag.warn("'" + page.title + "': " + std::to_string(stripped.warnings) +
              " unbalanced markup constructs dropped");
  }
  article.clean_length = static_cast<std::uint32_t>(stripped.clean_text.size());
  article.snippets = segment_snippets(page.title, stripped.clean_text, stripped.headings);
  article.links = std::move(stripped.links);

  bool temporal = classify_temporal(page.title);
  auto coordinate = extract_geotag(page.wikitext, &diag);
  if (temporal) {
    article.kind = ArticleKind::Temporal;
  } else if (coordinate) {
    article.kind = ArticleKind::Spatial;
    article.coordinate = coordinate;
  } else {
    article.kind = ArticleKind::NonSpatial;
  }
  return article;
}

void CorpusBuilder::add(RawPage page) {
  if (!page.redirect_target) page.redirect_target = redirect_from_wikitext(page.wikitext);
  if (page.redirect_target) {
    if (articles_.erase(page.title) > 0) {
      diag_.warn("duplicate title '" + page.title + "'; later redirect wins");
    }
    if (redirect_pages_.count(page.title)) {
      diag_.warn("duplicate title '" + page.title + "'; last wins");
    }
    page.wikitext.clear();
    auto title = page.title;
    redirect_pages_.insert_or_assign(std::move(title), std::move(page));
    return;
  }
  if (redirect_pages_.erase(page.title) > 0 || articles_.count(page.title) > 0) {
    diag_.warn("duplicate title '" + page.title + "'; last wins");
  }
  auto article = process_page(page, diag_);
  articles_.insert_or_assign(page.title, std::move(article));
}

CorpusIndex CorpusBuilder::finish() && {
  CorpusIndex index;
  index.language = language_;
  RedirectMap raw;
  for (const auto& [alias, page] : redirect_pages_) raw[alias] = *page.redirect_target;
  index.redirects = resolve_map(raw, diag_);
  index.articles = std::move(articles_);

  for (auto& [title, article] : index.articles) {
    for (auto& link : article.links) {
      auto it = index.redirects.find(link.target_title);
      if (it != index.redirects.end()) link.target_title = it->second;
      link.dangling = index.articles.find(link.target_title) == index.articles.end();
    }
    switch (article.kind) {
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
  }
  return index;
}

CorpusIndex build_corpus(std::span<const RawPage> pages, Diagnostics& diag) {
  CorpusBuilder builder(diag);
  for (const auto& page : pages) builder.add(page);
  return std::move(builder).finish();
}

}  // namespace eesd

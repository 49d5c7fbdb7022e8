#include "eesd/service.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "binary_io.hpp"
#include "eesd/index_io.hpp"
#include "eesd/json_io.hpp"
#include "httplib.h"

namespace eesd {

using nlohmann::json;

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string utc_timestamp() {
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::not_found:
    case ErrorCode::no_explanation:
    case ErrorCode::no_narrative:
      return 404;
    case ErrorCode::bad_request:
    case ErrorCode::invalid_query:
      return 400;
    case ErrorCode::parse_error:
    case ErrorCode::data_error:
      return 500;
  }
  return 500;
}

// Only the four service codes leave the process.
ErrorCode public_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::not_found:
    case ErrorCode::no_explanation:
    case ErrorCode::no_narrative:
    case ErrorCode::bad_request:
      return code;
    default:
      return ErrorCode::bad_request;
  }
}

const std::string& required(const QueryParams& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end() || it->second.empty()) {
    throw Error(ErrorCode::bad_request, "missing query parameter '" + key + "'");
  }
  return it->second;
}

Extent extent_param(const QueryParams& params) {
  auto it = params.find("bbox");
  if (it == params.end()) return Extent::global();
  return Extent::parse(it->second);
}

int snippet_param(const QueryParams& params, int fallback) {
  auto it = params.find("s");
  if (it == params.end()) return fallback;
  int s = 0;
  const auto& text = it->second;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), s);
  if (ec != std::errc() || ptr != text.data() + text.size() || s < 1 || s > 1000) {
    throw Error(ErrorCode::bad_request, "s must be a positive integer");
  }
  return s;
}

Response json_response(const json& body, const char* content_type = "application/json") {
  Response r;
  r.body = canonical_json(body);
  r.content_type = content_type;
  return r;
}

}  // namespace

Response error_response(ErrorCode code, const std::string& message) {
  Response r;
  r.status = status_for(code);
  json body = {{"error", {{"code", std::string(to_string(public_code(code)))}, {"message", message}}}};
  r.body = canonical_json(body);
  return r;
}

ThemeCatalog ThemeCatalog::parse(std::istream& in) {
  ThemeCatalog catalog;
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    auto end = line.find_last_not_of(" \t\r");
    catalog.themes.push_back(line.substr(begin, end - begin + 1));
  }
  return catalog;
}

ThemeCatalog ThemeCatalog::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::not_found, "cannot open theme list " + file.string());
  return parse(in);
}

std::string config_hash(const LayerConfig& config) {
  json doc = {{"format_version", kIndexFormatVersion},
              {"max_path_len", config.relatedness.max_path_len},
              {"length_decay", config.relatedness.length_decay},
              {"explain_top_k", config.relatedness.explain_top_k},
              {"r_min", config.r_min},
              {"r_max", config.r_max}};
  return hex64(fnv1a(canonical_json(doc)));
}

const CachedTheme* ThemeCache::find(std::string_view theme, std::string_view hash) const {
  auto it = entries_.find(theme);
  if (it == entries_.end() || it->second.config_hash != hash) return nullptr;
  return &it->second;
}

void ThemeCache::put(std::string theme, CachedTheme entry) {
  entries_.insert_or_assign(std::move(theme), std::move(entry));
}

void ThemeCache::save(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  for (const auto& [theme, entry] : entries_) {
    json doc = {{"theme", theme},
                {"config_hash", entry.config_hash},
                {"built_at", entry.built_at},
                {"layer", layer_to_json(entry.layer)}};
    auto file = dir / ("theme-" + hex64(fnv1a(theme)) + ".json");
    detail::write_file_atomic(file.string(), canonical_json(doc) + "\n");
  }
}

ThemeCache ThemeCache::load(const std::filesystem::path& dir) {
  ThemeCache cache;
  if (!std::filesystem::is_directory(dir)) return cache;
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    auto name = entry.path().filename().string();
    if (name.rfind("theme-", 0) == 0 && entry.path().extension() == ".json") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    json doc;
    try {
      doc = json::parse(detail::read_file(file.string()));
      CachedTheme entry;
      entry.config_hash = doc.at("config_hash").get<std::string>();
      entry.built_at = doc.at("built_at").get<std::string>();
      entry.layer = layer_from_json(doc.at("layer"));
      cache.put(doc.at("theme").get<std::string>(), std::move(entry));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::data_error, file.string() + ": " + e.what());
    }
  }
  return cache;
}

PrecomputeReport precompute_themes(const Engine& engine, const ThemeCatalog& catalog,
                                   const LayerConfig& config, ThemeCache& cache,
                                   Diagnostics& diag) {
  PrecomputeReport report;
  auto hash = config_hash(config);
  for (const auto& raw : catalog.themes) {
    auto theme = engine.corpus.resolve(raw);
    if (!engine.wag.contains(theme)) {
      diag.warn("theme '" + raw + "' is not a graph vertex; skipped");
      report.skipped.push_back(raw);
      continue;
    }
    CachedTheme entry;
    entry.layer = theme_layer(engine, theme, Extent::global(), config);
    entry.config_hash = hash;
    entry.built_at = utc_timestamp();
    cache.put(theme, std::move(entry));
    report.cached.push_back(theme);
  }
  return report;
}

struct Service::Server {
  httplib::Server http;
};

Service::Service(const Engine& engine, LayerConfig config, ThemeCatalog catalog)
    : engine_(engine),
      config_(std::move(config)),
      config_hash_(config_hash(config_)),
      catalog_(std::move(catalog)),
      cache_(std::make_shared<ThemeCache>()),
      server_(std::make_shared<Server>()) {
  config_.relatedness.validate();
}

void Service::install_cache(ThemeCache cache) {
  auto fresh = std::make_shared<const ThemeCache>(std::move(cache));
  std::lock_guard lock(cache_mutex_);
  cache_ = std::move(fresh);
}

std::shared_ptr<const ThemeCache> Service::cache() const {
  std::lock_guard lock(cache_mutex_);
  return cache_;
}

EESDSet Service::layer_for(LayerKind kind, const std::string& subject, const Extent& extent) const {
  if (kind == LayerKind::Theme) {
    auto snapshot = cache();
    if (const auto* hit = snapshot->find(subject, config_hash_)) {
      return restrict_layer(hit->layer, extent, config_);
    }
    return theme_layer(engine_, subject, extent, config_);
  }
  return entity_layer(engine_, subject, extent, config_);
}

Response Service::handle(std::string_view path, const QueryParams& params) const {
  try {
    return dispatch(path, params);
  } catch (const Error& e) {
    return error_response(e.code(), e.what());
  } catch (const std::exception& e) {
    auto r = error_response(ErrorCode::bad_request, e.what());
    r.status = 500;
    return r;
  }
}

Response Service::dispatch(std::string_view path, const QueryParams& params) const {
  constexpr std::string_view kTheme = "/layer/theme/";
  constexpr std::string_view kEntity = "/layer/entity/";

  if (path == "/themes") {
    auto snapshot = cache();
    json themes = json::array();
    for (const auto& t : catalog_.themes) {
      auto title = engine_.corpus.resolve(t);
      themes.push_back({{"title", title}, {"cached", snapshot->find(title, config_hash_) != nullptr}});
    }
    return json_response({{"themes", themes}});
  }
  if (path.rfind(kTheme, 0) == 0 || path.rfind(kEntity, 0) == 0) {
    bool theme = path.rfind(kTheme, 0) == 0;
    auto raw = path.substr(theme ? kTheme.size() : kEntity.size());
    if (raw.empty()) throw Error(ErrorCode::bad_request, "missing layer subject");
    auto extent = extent_param(params);
    auto subject = engine_.corpus.resolve(raw);
    engine_.corpus.at(subject);
    auto layer = layer_for(theme ? LayerKind::Theme : LayerKind::Entity, subject, extent);
    return json_response(export_geojson(layer), "application/geo+json");
  }
  if (path == "/articles") {
    return json_response(export_geojson(narrative_layer(engine_.corpus, extent_param(params), config_)),
                         "application/geo+json");
  }
  if (path == "/why") {
    const auto& layer = required(params, "layer");
    if (layer == "narrative") {
      auto from = engine_.corpus.resolve(required(params, "feature"));
      auto to = engine_.corpus.resolve(required(params, "feature2"));
      auto config = config_;
      config.narrative_snippets = snippet_param(params, config_.narrative_snippets);
      auto articles = narrative_layer(engine_.corpus, Extent::global(), config);
      return json_response(to_json(why(engine_, articles, from, to, config)));
    }
    if (layer != "theme" && layer != "entity") {
      throw Error(ErrorCode::bad_request, "layer must be theme, entity or narrative");
    }
    auto subject = engine_.corpus.resolve(required(params, "subject"));
    auto feature = engine_.corpus.resolve(required(params, "feature"));
    engine_.corpus.at(subject);
    const auto& target = engine_.corpus.at(feature);
    if (target.kind != ArticleKind::Spatial || feature == subject) {
      throw Error(ErrorCode::not_found, "'" + feature + "' is not a feature of this layer");
    }
    auto kind = layer == "theme" ? LayerKind::Theme : LayerKind::Entity;
    if (kind == LayerKind::Entity && engine_.corpus.at(subject).kind != ArticleKind::Spatial) {
      throw Error(ErrorCode::bad_request, "'" + subject + "' is not a spatial article");
    }
    if (kind == LayerKind::Theme) {
      auto snapshot = cache();
      if (const auto* hit = snapshot->find(subject, config_hash_)) {
        return json_response(to_json(why(engine_, hit->layer, feature)));
      }
    }
    auto score = relate(engine_.wag, subject, feature, config_.relatedness);
    return json_response(to_json(explain(engine_.corpus, score)));
  }
  if (path == "/narrative") {
    NarrativeRequest request;
    request.start = engine_.corpus.resolve(required(params, "from"));
    request.end = engine_.corpus.resolve(required(params, "to"));
    request.snippet_count = snippet_param(params, config_.narrative_snippets);
    return json_response(to_json(generate_narrative(engine_.wag, engine_.corpus, request, config_.narrative)));
  }
  throw Error(ErrorCode::not_found, "unknown route " + std::string(path));
}

int Service::bind(const std::string& host, int port) {
  auto& http = server_->http;
  http.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                            {"Access-Control-Allow-Methods", "GET, OPTIONS"},
                            {"Access-Control-Allow-Headers", "Content-Type"}});
  http.Get(".*", [this](const httplib::Request& req, httplib::Response& res) {
    QueryParams params;
    for (const auto& [key, value] : req.params) params.emplace(key, value);
    auto r = handle(req.path, params);
    res.status = r.status;
    res.set_content(r.body, r.content_type.c_str());
  });
  http.Options(".*", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });
  int bound = port == 0 ? http.bind_to_any_port(host) : (http.bind_to_port(host, port) ? port : -1);
  if (bound <= 0) {
    throw Error(ErrorCode::data_error, "cannot listen on " + host + ":" + std::to_string(port));
  }
  return bound;
}

void Service::listen() { server_->http.listen_after_bind(); }

void Service::serve(const std::string& host, int port) {
  bind(host, port);
  listen();
}

void Service::stop() { server_->http.stop(); }

void Service::wait_until_ready() const { server_->http.wait_until_ready(); }

}  // namespace eesd

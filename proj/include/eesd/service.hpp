#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "eesd/error.hpp"
#include "eesd/layers.hpp"

namespace eesd {

// Plain-text theme list: one title per line, '#' starts a comment.
struct ThemeCatalog {
  std::vector<std::string> themes;

  static ThemeCatalog parse(std::istream& in);
  static ThemeCatalog load(const std::filesystem::path& file);
};

struct CachedTheme {
  EESDSet layer;  // global extent
  std::string config_hash;
  std::string built_at;
};

// Hash of every setting that changes layer contents.
std::string config_hash(const LayerConfig& config);

class ThemeCache {
 public:
  const CachedTheme* find(std::string_view theme, std::string_view hash) const;
  void put(std::string theme, CachedTheme entry);
  std::size_t size() const { return entries_.size(); }
  const std::map<std::string, CachedTheme, std::less<>>& entries() const { return entries_; }

  // One file per theme under `dir`, each written atomically.
  void save(const std::filesystem::path& dir) const;
  static ThemeCache load(const std::filesystem::path& dir);

 private:
  std::map<std::string, CachedTheme, std::less<>> entries_;
};

struct PrecomputeReport {
  std::vector<std::string> cached;
  std::vector<std::string> skipped;
};

// One global theme layer per catalog entry. Unknown titles are skipped with a
// warning.
PrecomputeReport precompute_themes(const Engine& engine, const ThemeCatalog& catalog,
                                   const LayerConfig& config, ThemeCache& cache,
                                   Diagnostics& diag);

struct Response {
  int status = 200;
  std::string body;
  std::string content_type = "application/json";
};

using QueryParams = std::map<std::string, std::string, std::less<>>;

// Request dispatch over an immutable engine. The cache can be swapped while
// requests are in flight.
class Service {
 public:
  Service(const Engine& engine, LayerConfig config, ThemeCatalog catalog = {});

  void install_cache(ThemeCache cache);
  // `path` is URL-decoded.
  Response handle(std::string_view path, const QueryParams& params) const;

  // Blocks serving HTTP on host:port until stop() is called.
  void serve(const std::string& host, int port);
  // serve() in two steps. Port 0 picks a free port; the bound port is returned.
  int bind(const std::string& host, int port);
  void listen();
  void stop();
  void wait_until_ready() const;

  const LayerConfig& config() const { return config_; }

 private:
  Response dispatch(std::string_view path, const QueryParams& params) const;
  EESDSet layer_for(LayerKind kind, const std::string& subject, const Extent& extent) const;
  std::shared_ptr<const ThemeCache> cache() const;

  const Engine& engine_;
  LayerConfig config_;
  std::string config_hash_;
  ThemeCatalog catalog_;
  mutable std::mutex cache_mutex_;
  std::shared_ptr<const ThemeCache> cache_;
  struct Server;
  std::shared_ptr<Server> server_;
};

Response error_response(ErrorCode code, const std::string& message);

}  // namespace eesd

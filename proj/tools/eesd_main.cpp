// Command-line front end: ingest a dump, inspect the index, compute layers
// and narratives, precompute themes and serve the HTTP API.

#include <csignal>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "eesd/dump_reader.hpp"
#include "eesd/index_io.hpp"
#include "eesd/json_io.hpp"
#include "eesd/layers.hpp"
#include "eesd/service.hpp"
#include "eesd/wag.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNotFound = 3;
constexpr int kExitDataError = 4;

int exit_code_for(eesd::ErrorCode code) {
  switch (code) {
    case eesd::ErrorCode::bad_request:
    case eesd::ErrorCode::invalid_query:
      return kExitUsage;
    case eesd::ErrorCode::not_found:
    case eesd::ErrorCode::no_explanation:
    case eesd::ErrorCode::no_narrative:
      return kExitNotFound;
    case eesd::ErrorCode::parse_error:
    case eesd::ErrorCode::data_error:
      return kExitDataError;
  }
  return kExitDataError;
}

void write_output(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream file(out, std::ios::binary | std::ios::trunc);
  if (!file) throw eesd::Error(eesd::ErrorCode::data_error, "cannot write " + out);
  file << text << "\n";
}

eesd::Service* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Explanatory spatial layers from a MediaWiki export"};
  app.require_subcommand(1);

  eesd::LayerConfig config;
  auto add_relatedness_options = [&](CLI::App* cmd) {
    cmd->add_option("--k", config.relatedness.max_path_len, "maximum path length in edges");
    cmd->add_option("--lambda", config.relatedness.length_decay, "per-hop length decay");
    cmd->add_option("--top", config.relatedness.explain_top_k, "explanation paths to keep");
  };

  std::string dump;
  std::string dir;
  std::string out;
  auto* ingest = app.add_subcommand("ingest", "parse an XML export into an index directory");
  ingest->add_option("dump", dump, "MediaWiki XML export")->required();
  ingest->add_option("--out", out, "index directory")->required();

  auto* stats = app.add_subcommand("stats", "print index counts");
  stats->add_option("dir", dir)->required();

  std::string a;
  std::string b;
  auto* relate = app.add_subcommand("relate", "relatedness of two articles with explanation");
  relate->add_option("dir", dir)->required();
  relate->add_option("a", a)->required();
  relate->add_option("b", b)->required();
  add_relatedness_options(relate);

  std::string layer_kind;
  std::string title;
  std::string bbox = "-180,-90,180,90";
  auto* layer = app.add_subcommand("layer", "compute a theme or entity layer as GeoJSON");
  layer->add_option("kind", layer_kind)->required()->check(CLI::IsMember({"theme", "entity"}));
  layer->add_option("dir", dir)->required();
  layer->add_option("title", title)->required();
  layer->add_option("--bbox", bbox, "w,s,e,n");
  layer->add_option("--out", out, "output file (stdout if omitted)");
  layer->add_option("--r-min", config.r_min);
  layer->add_option("--r-max", config.r_max);
  add_relatedness_options(layer);

  int snippets = 4;
  bool reverse = false;
  auto* narrate = app.add_subcommand("narrate", "snippet narrative between two spatial articles");
  narrate->add_option("dir", dir)->required();
  narrate->add_option("a", a)->required();
  narrate->add_option("b", b)->required();
  narrate->add_option("--snippets", snippets)->check(CLI::PositiveNumber);
  narrate->add_flag("--reverse", reverse, "tell the story from b to a");

  std::string themes_file;
  auto* precompute = app.add_subcommand("precompute", "cache global theme layers");
  precompute->add_option("dir", dir)->required();
  precompute->add_option("--themes", themes_file, "theme list, one title per line")->required();
  add_relatedness_options(precompute);

  int port = 8080;
  std::string host = "0.0.0.0";
  auto* serve = app.add_subcommand("serve", "serve the HTTP API");
  serve->add_option("dir", dir)->required();
  serve->add_option("--port", port);
  serve->add_option("--host", host);
  serve->add_option("--themes", themes_file, "theme list for /themes");
  add_relatedness_options(serve);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*ingest) {
      std::ifstream in(dump, std::ios::binary);
      if (!in) throw eesd::Error(eesd::ErrorCode::not_found, "cannot open " + dump);
      eesd::Diagnostics diag;
      eesd::CorpusBuilder builder(diag);
      auto info = eesd::parse_export(in, [&](eesd::RawPage&& page) { builder.add(std::move(page)); });
      if (!info.language.empty()) builder.set_language(info.language);
      auto corpus = std::move(builder).finish();
      auto wag = eesd::build_wag(corpus);
      eesd::save_corpus(corpus, out);
      eesd::save_wag(wag, out);
      for (const auto& w : diag.warnings) std::cerr << "warning: " << w << "\n";
      std::cout << "pages " << info.pages_kept << " (of " << info.pages_seen << ")\n"
                << "articles " << corpus.counts.total() << " spatial " << corpus.counts.spatial
                << " nonspatial " << corpus.counts.nonspatial << " temporal "
                << corpus.counts.temporal << " redirects " << corpus.redirects.size() << "\n"
                << "graph vertices " << wag.vertex_count() << " edges " << wag.edge_count()
                << "\nwarnings " << diag.count() << "\n";
    } else if (*stats) {
      auto engine = eesd::Engine::load(dir);
      const auto& c = engine.corpus.counts;
      nlohmann::json doc = {{"spatial", c.spatial},
                            {"nonspatial", c.nonspatial},
                            {"temporal", c.temporal},
                            {"total", c.total()},
                            {"redirects", engine.corpus.redirects.size()},
                            {"vertices", engine.wag.vertex_count()},
                            {"edges", engine.wag.edge_count()},
                            {"language", engine.corpus.language}};
      std::cout << doc.dump(2) << "\n";
    } else if (*relate) {
      auto engine = eesd::Engine::load(dir);
      auto score = eesd::relate(engine.wag, engine.corpus.resolve(a), engine.corpus.resolve(b),
                                config.relatedness);
      nlohmann::json doc = {{"a", score.a}, {"b", score.b}, {"value", score.value}};
      if (score.value > 0.0) doc["explanation"] = eesd::to_json(eesd::explain(engine.corpus, score));
      std::cout << doc.dump(2) << "\n";
    } else if (*layer) {
      auto engine = eesd::Engine::load(dir);
      auto extent = eesd::Extent::parse(bbox);
      auto subject = engine.corpus.resolve(title);
      auto set = layer_kind == "theme" ? eesd::theme_layer(engine, subject, extent, config)
                                       : eesd::entity_layer(engine, subject, extent, config);
      write_output(out, eesd::canonical_json(eesd::export_geojson(set)));
    } else if (*narrate) {
      auto engine = eesd::Engine::load(dir);
      eesd::NarrativeRequest request{engine.corpus.resolve(a), engine.corpus.resolve(b), snippets};
      auto story = reverse ? eesd::reverse_narrative(engine.wag, engine.corpus, request)
                           : eesd::generate_narrative(engine.wag, engine.corpus, request);
      std::cout << eesd::to_json(story).dump(2) << "\n";
    } else if (*precompute) {
      auto engine = eesd::Engine::load(dir);
      auto catalog = eesd::ThemeCatalog::load(themes_file);
      auto cache = eesd::ThemeCache::load(std::filesystem::path(dir) / "themes");
      eesd::Diagnostics diag;
      auto report = eesd::precompute_themes(engine, catalog, config, cache, diag);
      cache.save(std::filesystem::path(dir) / "themes");
      for (const auto& w : diag.warnings) std::cerr << "warning: " << w << "\n";
      std::cout << "cached " << report.cached.size() << " skipped " << report.skipped.size() << "\n";
    } else if (*serve) {
      auto engine = eesd::Engine::load(dir);
      auto cache = eesd::ThemeCache::load(std::filesystem::path(dir) / "themes");
      eesd::ThemeCatalog catalog;
      if (!themes_file.empty()) {
        catalog = eesd::ThemeCatalog::load(themes_file);
      } else {
        for (const auto& [theme, entry] : cache.entries()) catalog.themes.push_back(theme);
      }
      eesd::Service service(engine, config, catalog);
      service.install_cache(std::move(cache));
      g_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cerr << "listening on " << host << ":" << port << "\n";
      service.serve(host, port);
    }
  } catch (const eesd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return 0;
}

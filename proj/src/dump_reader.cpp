#include "eesd/dump_reader.hpp"

#include <expat.h>

#include <array>
#include <charconv>
#include <cstring>
#include <exception>
#include <memory>

#include "eesd/error.hpp"
#include "eesd/wikitext.hpp"

namespace eesd {
namespace {

enum class Field { none, title, ns, page_id, text };

struct ParserState {
  const std::function<void(RawPage&&)>* sink = nullptr;
  DumpInfo info;
  int depth = 0;
  int page_depth = -1;      // depth of the open <page>, -1 outside a page
  bool in_revision = false;
  Field field = Field::none;
  std::string buffer;
  RawPage page;
  std::string ns;
  XML_Parser parser = nullptr;
  std::exception_ptr sink_error;  // exceptions must not unwind through expat
};

void on_start(void* user, const XML_Char* name, const XML_Char** attrs) {
  auto& st = *static_cast<ParserState*>(user);
  ++st.depth;
  if (st.depth == 1) {
    for (auto a = attrs; a && *a; a += 2) {
      if (std::strcmp(a[0], "xml:lang") == 0) st.info.language = a[1];
    }
    return;
  }
  if (std::strcmp(name, "page") == 0 && st.page_depth < 0) {
    st.page_depth = st.depth;
    st.page = RawPage{};
    st.ns.clear();
    return;
  }
  if (st.page_depth < 0) return;
  int rel = st.depth - st.page_depth;
  st.field = Field::none;
  if (rel == 1) {
    if (std::strcmp(name, "title") == 0) {
      st.field = Field::title;
    } else if (std::strcmp(name, "ns") == 0) {
      st.field = Field::ns;
    } else if (std::strcmp(name, "id") == 0) {
      st.field = Field::page_id;
    } else if (std::strcmp(name, "revision") == 0) {
      st.in_revision = true;
    } else if (std::strcmp(name, "redirect") == 0) {
      for (auto a = attrs; a && *a; a += 2) {
        if (std::strcmp(a[0], "title") == 0) st.page.redirect_target = canonical_title(a[1]);
      }
    }
  } else if (rel == 2 && st.in_revision && std::strcmp(name, "text") == 0) {
    st.field = Field::text;
  }
  st.buffer.clear();
}

void on_end(void* user, const XML_Char* name) {
  auto& st = *static_cast<ParserState*>(user);
  if (st.page_depth >= 0) {
    int rel = st.depth - st.page_depth;
    if (rel == 0) {
      ++st.info.pages_seen;
      bool main_namespace = st.ns.empty() || st.ns == "0";
      if (!st.page.title.empty() && main_namespace) {
        if (st.page.redirect_target && st.page.redirect_target->empty())
          st.page.redirect_target.reset();
        ++st.info.pages_kept;
        try {
          (*st.sink)(std::move(st.page));
        } catch (...) {
          st.sink_error = std::current_exception();
          XML_StopParser(st.parser, XML_FALSE);
        }
      }
      st.page_depth = -1;
      st.page = RawPage{};
    } else {
      switch (st.field) {
        case Field::title:
          st.page.title = canonical_title(st.buffer);
          break;
        case Field::ns:
          st.ns = st.buffer;
          break;
        case Field::page_id: {
          std::int64_t id = 0;
          std::from_chars(st.buffer.data(), st.buffer.data() + st.buffer.size(), id);
          st.page.page_id = id;
          break;
        }
        case Field::text:
          st.page.wikitext = std::move(st.buffer);
          break;
        case Field::none:
          break;
      }
      st.field = Field::none;
      st.buffer.clear();
      if (rel == 1 && std::strcmp(name, "revision") == 0) st.in_revision = false;
    }
  }
  --st.depth;
}

void on_text(void* user, const XML_Char* text, int len) {
  auto& st = *static_cast<ParserState*>(user);
  if (st.field != Field::none) st.buffer.append(text, static_cast<std::size_t>(len));
}

struct ParserDeleter {
  void operator()(XML_Parser p) const { XML_ParserFree(p); }
};

}  // namespace

DumpInfo parse_export(std::istream& in, const std::function<void(RawPage&&)>& sink) {
  std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreate("UTF-8"));
  ParserState st;
  st.sink = &sink;
  st.parser = parser.get();
  XML_SetUserData(parser.get(), &st);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_text);

  std::array<char, 1 << 16> chunk{};
  bool any = false;
  while (true) {
    in.read(chunk.data(), chunk.size());
    auto got = in.gcount();
    bool last = got < static_cast<std::streamsize>(chunk.size());
    if (got > 0) any = true;
    if (!any && last) return st.info;  // empty stream
    if (XML_Parse(parser.get(), chunk.data(), static_cast<int>(got), last) ==
        XML_STATUS_ERROR) {
      if (st.sink_error) std::rethrow_exception(st.sink_error);
      throw ParseError(XML_ErrorString(XML_GetErrorCode(parser.get())),
                       XML_GetCurrentByteIndex(parser.get()));
    }
    if (last) break;
  }
  return st.info;
}

std::vector<RawPage> parse_export(std::istream& in) {
  std::vector<RawPage> pages;
  parse_export(in, [&](RawPage&& page) { pages.push_back(std::move(page)); });
  return pages;
}

}  // namespace eesd

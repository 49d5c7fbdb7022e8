#include "eesd/wikitext.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

namespace eesd {
namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(s[i])) !=
        std::tolower(static_cast<unsigned char>(prefix[i])))
      return false;
  }
  return true;
}

bool equals_ci(std::string_view a, std::string_view b) {
  return a.size() == b.size() && starts_with_ci(a, b);
}

std::size_t end_of_line(std::string_view s, std::size_t i) {
  auto nl = s.find('\n', i);
  return nl == std::string_view::npos ? s.size() : nl;
}

// Position just past the "}}" closing the template opened at `open`, or npos.
std::size_t match_template(std::string_view s, std::size_t open) {
  int depth = 0;
  std::size_t i = open;
  while (i + 1 < s.size()) {
    if (s[i] == '{' && s[i + 1] == '{') {
      ++depth;
      i += 2;
    } else if (s[i] == '}' && s[i + 1] == '}') {
      --depth;
      i += 2;
      if (depth == 0) return i;
    } else {
      ++i;
    }
  }
  return std::string_view::npos;
}

// Position just past the "]]" closing the link opened at `open`, or npos.
std::size_t match_link(std::string_view s, std::size_t open) {
  int depth = 0;
  std::size_t i = open;
  while (i + 1 < s.size()) {
    if (s[i] == '[' && s[i + 1] == '[') {
      ++depth;
      i += 2;
    } else if (s[i] == ']' && s[i + 1] == ']') {
      --depth;
      i += 2;
      if (depth == 0) return i;
    } else if (s[i] == '\n' && depth == 1) {
      return std::string_view::npos;  // links never span lines at top level
    } else {
      ++i;
    }
  }
  return std::string_view::npos;
}

// Position just past the "|}" closing the table opened at `open`, or npos.
std::size_t match_table(std::string_view s, std::size_t open) {
  int depth = 0;
  std::size_t i = open;
  while (i + 1 < s.size()) {
    if (s[i] == '{' && s[i + 1] == '{') {
      auto close = match_template(s, i);
      if (close == std::string_view::npos) return close;
      i = close;
    } else if (s[i] == '{' && s[i + 1] == '|') {
      ++depth;
      i += 2;
    } else if (s[i] == '|' && s[i + 1] == '}') {
      --depth;
      i += 2;
      if (depth == 0) return i;
    } else {
      ++i;
    }
  }
  return std::string_view::npos;
}

// First top-level '|' inside a link body.
std::size_t find_pipe(std::string_view body) {
  int depth = 0;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (i + 1 < body.size() && ((body[i] == '[' && body[i + 1] == '[') ||
                                (body[i] == '{' && body[i + 1] == '{'))) {
      ++depth;
      ++i;
    } else if (i + 1 < body.size() &&
               ((body[i] == ']' && body[i + 1] == ']') ||
                (body[i] == '}' && body[i + 1] == '}'))) {
      --depth;
      ++i;
    } else if (body[i] == '|' && depth == 0) {
      return i;
    }
  }
  return std::string_view::npos;
}

constexpr std::array<std::string_view, 4> kDroppedNamespaces = {
    "file", "image", "category", "media"};

bool is_dropped_link(std::string_view target) {
  auto colon = target.find(':');
  if (colon == std::string_view::npos) return false;
  auto prefix = trim(target.substr(0, colon));
  for (auto ns : kDroppedNamespaces) {
    if (equals_ci(prefix, ns)) return true;
  }
  // Interlanguage links: [[de:Münster]]
  if (prefix.size() >= 2 && prefix.size() <= 3 &&
      std::all_of(prefix.begin(), prefix.end(),
                  [](char c) { return c >= 'a' && c <= 'z'; }))
    return true;
  return false;
}

// Tags whose content never reaches prose.
constexpr std::array<std::string_view, 6> kDroppedElements = {
    "ref", "references", "gallery", "math", "timeline", "score"};

struct Entity {
  std::string_view name;
  std::string_view text;
};
constexpr std::array<Entity, 8> kEntities = {{
    {"&nbsp;", " "},
    {"&amp;", "&"},
    {"&lt;", "<"},
    {"&gt;", ">"},
    {"&quot;", "\""},
    {"&ndash;", "\xE2\x80\x93"},
    {"&mdash;", "\xE2\x80\x94"},
    {"&minus;", "\xE2\x88\x92"},
}};

// Drops comments and the elements above; strips remaining HTML-like tags
// but keeps their content.
std::string remove_comments_and_tags(std::string_view s, std::size_t& warnings) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c != '<') {
      out.push_back(c);
      ++i;
      continue;
    }
    if (s.compare(i, 4, "<!--") == 0) {
      auto close = s.find("-->", i + 4);
      if (close == std::string_view::npos) {
        ++warnings;
        break;
      }
      i = close + 3;
      continue;
    }
    // Tag name
    std::size_t j = i + 1;
    bool closing = j < s.size() && s[j] == '/';
    if (closing) ++j;
    std::size_t name_begin = j;
    while (j < s.size() && std::isalpha(static_cast<unsigned char>(s[j]))) ++j;
    if (j == name_begin) {
      out.push_back(c);  // a literal '<'
      ++i;
      continue;
    }
    auto name = s.substr(name_begin, j - name_begin);
    auto gt = s.find('>', j);
    if (gt == std::string_view::npos) {
      out.push_back(c);
      ++i;
      continue;
    }
    bool self_closing = gt > 0 && s[gt - 1] == '/';
    bool dropped = std::any_of(kDroppedElements.begin(), kDroppedElements.end(),
                               [&](std::string_view e) { return equals_ci(name, e); });
    i = gt + 1;
    if (dropped && !closing && !self_closing) {
      // Skip to the matching close tag.
      std::string close_tag = "</" + std::string(name);
      std::size_t k = i;
      std::size_t found = std::string_view::npos;
      while (k < s.size()) {
        auto lt = s.find("</", k);
        if (lt == std::string_view::npos) break;
        if (starts_with_ci(s.substr(lt), close_tag)) {
          found = lt;
          break;
        }
        k = lt + 2;
      }
      if (found == std::string_view::npos) {
        ++warnings;
        i = end_of_line(s, i);
      } else {
        auto end = s.find('>', found);
        i = end == std::string_view::npos ? s.size() : end + 1;
      }
    }
  }
  return out;
}

class Stripper {
 public:
  explicit Stripper(bool record_links) : record_links_(record_links) {}

  StrippedText run(std::string_view wikitext) {
    std::string pre = remove_comments_and_tags(wikitext, result_.warnings);
    process(pre);
    result_.clean_text = std::move(out_);
    auto length = result_.clean_text.size();
    for (auto& link : result_.links) {
      link.position_fraction =
          length == 0 ? 0.0 : static_cast<double>(link.char_offset) / length;
    }
    return std::move(result_);
  }

 private:
  // "[[", "]]", "{{" and "}}" can never form in the output.
  void emit(char c) {
    if ((c == '[' || c == ']' || c == '{' || c == '}') && !out_.empty() &&
        out_.back() == c)
      return;
    out_.push_back(c);
  }

  void emit(std::string_view s) {
    for (char c : s) emit(c);
  }

  static std::string inline_clean(std::string_view s) {
    Stripper inner(false);
    auto text = inner.run(s).clean_text;
    std::string flat;
    flat.reserve(text.size());
    for (char c : text) flat.push_back(c == '\n' ? ' ' : c);
    return std::string(trim(flat));
  }

  void process(std::string_view s) {
    std::size_t i = 0;
    bool line_start = true;
    while (i < s.size()) {
      if (line_start) {
        line_start = false;
        i = handle_line_start(s, i, line_start);
        continue;
      }
      char c = s[i];
      if (c == '\n') {
        emit(c);
        ++i;
        line_start = true;
      } else if (c == '{' && i + 1 < s.size() && s[i + 1] == '{') {
        auto close = match_template(s, i);
        if (close == std::string_view::npos) {
          ++result_.warnings;
          i = end_of_line(s, i);
        } else {
          i = close;
        }
      } else if (c == '}' && i + 1 < s.size() && s[i + 1] == '}') {
        ++result_.warnings;
        i += 2;
      } else if (c == '[' && i + 1 < s.size() && s[i + 1] == '[') {
        i = handle_link(s, i);
      } else if (c == ']' && i + 1 < s.size() && s[i + 1] == ']') {
        ++result_.warnings;
        i += 2;
      } else if (c == '[' && is_external_link(s.substr(i + 1))) {
        i = handle_external_link(s, i);
      } else if (c == '\'' && i + 1 < s.size() && s[i + 1] == '\'') {
        while (i < s.size() && s[i] == '\'') ++i;
      } else if (c == '_' && s.compare(i, 2, "__") == 0) {
        i = handle_magic_word(s, i);
      } else if (c == '&') {
        i = handle_entity(s, i);
      } else {
        emit(c);
        ++i;
      }
    }
  }

  std::size_t handle_line_start(std::string_view s, std::size_t i,
                                bool& line_start) {
    if (s.compare(i, 2, "{|") == 0) {
      auto close = match_table(s, i);
      if (close == std::string_view::npos) {
        ++result_.warnings;
        return end_of_line(s, i);
      }
      return close;
    }
    auto eol = end_of_line(s, i);
    auto line = s.substr(i, eol - i);
    auto trimmed_line = trim(line);
    if (!line.empty() && line.front() == '=' && trimmed_line.size() >= 3 &&
        trimmed_line.back() == '=') {
      std::size_t lead = 0;
      while (lead < trimmed_line.size() && trimmed_line[lead] == '=') ++lead;
      std::size_t trail = 0;
      while (trail < trimmed_line.size() &&
             trimmed_line[trimmed_line.size() - 1 - trail] == '=')
        ++trail;
      std::size_t level = std::min(lead, trail);
      if (level * 2 < trimmed_line.size()) {
        auto inner = trimmed_line.substr(level, trimmed_line.size() - 2 * level);
        if (!out_.empty() && out_.back() != '\n') out_.push_back('\n');
        HeadingMarker marker;
        marker.depth = static_cast<int>(std::max<std::size_t>(1, level - 1));
        marker.title = inline_clean(inner);
        marker.offset = out_.size();
        result_.headings.push_back(std::move(marker));
        // The heading line itself becomes an empty line.
        if (eol < s.size()) {
          out_.push_back('\n');
          line_start = true;
          return eol + 1;
        }
        return eol;
      }
    }
    if (line.compare(0, 4, "----") == 0) {
      std::size_t j = i;
      while (j < s.size() && s[j] == '-') ++j;
      return j;
    }
    std::size_t j = i;
    while (j < eol && (s[j] == '*' || s[j] == '#' || s[j] == ':' || s[j] == ';'))
      ++j;
    if (j > i) {
      while (j < eol && s[j] == ' ') ++j;
    }
    return j;
  }

  std::size_t handle_link(std::string_view s, std::size_t i) {
    auto close = match_link(s, i);
    if (close == std::string_view::npos) {
      ++result_.warnings;
      return end_of_line(s, i);
    }
    auto body = s.substr(i + 2, close - i - 4);
    auto pipe = find_pipe(body);
    auto raw_target = pipe == std::string_view::npos ? body : body.substr(0, pipe);
    raw_target = trim(raw_target);
    bool leading_colon = !raw_target.empty() && raw_target.front() == ':';
    if (leading_colon) raw_target.remove_prefix(1);
    if (!leading_colon && is_dropped_link(raw_target)) return close;

    std::string anchor;
    if (pipe != std::string_view::npos && !trim(body.substr(pipe + 1)).empty()) {
      anchor = inline_clean(body.substr(pipe + 1));
    } else {
      anchor = inline_clean(raw_target);
    }
    auto start = out_.size();
    emit(anchor);
    if (!record_links_ || leading_colon) return close;
    std::string_view emitted(out_.data() + start, out_.size() - start);
    auto target = canonical_title(raw_target);
    if (target.empty() || trim(emitted).empty()) return close;
    LinkOccurrence link;
    link.target_title = std::move(target);
    link.anchor_text = std::string(emitted);
    link.char_offset = static_cast<std::uint32_t>(start);
    result_.links.push_back(std::move(link));
    return close;
  }

  static bool is_external_link(std::string_view rest) {
    return starts_with_ci(rest, "http://") || starts_with_ci(rest, "https://") ||
           starts_with_ci(rest, "ftp://") || rest.compare(0, 2, "//") == 0;
  }

  std::size_t handle_external_link(std::string_view s, std::size_t i) {
    auto eol = end_of_line(s, i);
    auto close = s.find(']', i);
    if (close == std::string_view::npos || close > eol) {
      emit(s[i]);
      return i + 1;
    }
    auto body = s.substr(i + 1, close - i - 1);
    auto space = body.find(' ');
    if (space != std::string_view::npos) emit(inline_clean(body.substr(space + 1)));
    return close + 1;
  }

  std::size_t handle_magic_word(std::string_view s, std::size_t i) {
    std::size_t j = i + 2;
    while (j < s.size() && std::isupper(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i + 2 && s.compare(j, 2, "__") == 0) return j + 2;
    emit(s[i]);
    return i + 1;
  }

  std::size_t handle_entity(std::string_view s, std::size_t i) {
    for (const auto& e : kEntities) {
      if (s.compare(i, e.name.size(), e.name) == 0) {
        emit(e.text);
        return i + e.name.size();
      }
    }
    emit(s[i]);
    return i + 1;
  }

  bool record_links_;
  std::string out_;
  StrippedText result_;
};

bool parse_number(std::string_view s, double& value) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(value);
}

bool parse_unsigned(std::string_view s, int& value) {
  if (s.empty() || s.size() > 4) return false;
  if (s.size() > 1 && s.front() == '0') return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// deg [min [sec]] -> decimal degrees
std::optional<double> dms(std::span<const std::string> parts) {
  static constexpr std::array<double, 3> kScale = {1.0, 60.0, 3600.0};
  if (parts.empty() || parts.size() > 3) return std::nullopt;
  double total = 0.0;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    double v = 0.0;
    if (!parse_number(parts[k], v) || v < 0.0) return std::nullopt;
    total += v / kScale[k];
  }
  return total;
}

bool is_hemisphere(std::string_view s, char a, char b) {
  return s.size() == 1 && (s[0] == a || s[0] == b);
}

}  // namespace

std::string canonical_title(std::string_view title) {
  auto hash = title.find('#');
  if (hash != std::string_view::npos) title = title.substr(0, hash);
  std::string out;
  out.reserve(title.size());
  bool pending_space = false;
  for (char c : title) {
    if (c == '_' || is_space(c)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  if (!out.empty() && out[0] >= 'a' && out[0] <= 'z') out[0] = static_cast<char>(out[0] - 'a' + 'A');
  return out;
}

StrippedText strip_markup(std::string_view wikitext) {
  return Stripper(true).run(wikitext);
}

std::vector<Snippet> segment_snippets(std::string_view article_title,
                                      std::string_view clean_text,
                                      std::span<const HeadingMarker> headings) {
  std::vector<Snippet> snippets;
  std::vector<const HeadingMarker*> stack;
  std::size_t next_heading = 0;
  std::size_t para_begin = std::string_view::npos;
  std::size_t para_end = 0;

  auto close_paragraph = [&] {
    if (para_begin == std::string_view::npos) return;
    auto raw = clean_text.substr(para_begin, para_end - para_begin);
    auto lead = raw.size() - raw.substr(raw.find_first_not_of(" \t\r\n\f\v")).size();
    auto text = trim(raw);
    Snippet snippet;
    snippet.article_title = std::string(article_title);
    snippet.ordinal = static_cast<std::uint32_t>(snippets.size());
    for (const auto* h : stack) {
      if (snippet.heading_path.size() < 5) snippet.heading_path.push_back(h->title);
    }
    snippet.text = std::string(text);
    snippet.begin = static_cast<std::uint32_t>(para_begin + lead);
    snippet.end = static_cast<std::uint32_t>(snippet.begin + text.size());
    snippets.push_back(std::move(snippet));
    para_begin = std::string_view::npos;
  };

  std::size_t pos = 0;
  while (pos <= clean_text.size()) {
    auto eol = clean_text.find('\n', pos);
    if (eol == std::string_view::npos) eol = clean_text.size();
    while (next_heading < headings.size() && headings[next_heading].offset <= pos) {
      close_paragraph();
      const auto& h = headings[next_heading++];
      while (!stack.empty() && stack.back()->depth >= h.depth) stack.pop_back();
      if (h.depth <= 5) stack.push_back(&h);
    }
    auto line = clean_text.substr(pos, eol - pos);
    if (trim(line).empty()) {
      close_paragraph();
    } else {
      if (para_begin == std::string_view::npos) para_begin = pos;
      para_end = eol;
    }
    if (eol == clean_text.size()) break;
    pos = eol + 1;
  }
  close_paragraph();
  return snippets;
}

std::optional<Coordinate> extract_geotag(std::string_view wikitext,
                                         Diagnostics* diag) {
  std::size_t i = 0;
  std::size_t open = std::string_view::npos;
  while ((i = wikitext.find("{{", i)) != std::string_view::npos) {
    auto rest = trim(wikitext.substr(i + 2, 12));
    if (starts_with_ci(rest, "coord")) {
      auto after = trim(rest.substr(5));
      if (after.empty() || after.front() == '|' || after.front() == '}') {
        open = i;
        break;
      }
    }
    i += 2;
  }
  if (open == std::string_view::npos) return std::nullopt;
  auto close = match_template(wikitext, open);
  if (close == std::string_view::npos) {
    if (diag) diag->warn("unterminated coord template");
    return std::nullopt;
  }
  auto body = wikitext.substr(open + 2, close - open - 4);

  std::vector<std::string> positional;
  bool first = true;
  std::size_t start = 0;
  for (std::size_t k = 0; k <= body.size(); ++k) {
    if (k == body.size() || body[k] == '|') {
      auto arg = trim(body.substr(start, k - start));
      if (!first && arg.find('=') == std::string_view::npos)
        positional.emplace_back(arg);
      first = false;
      start = k + 1;
    }
  }

  std::optional<double> lat;
  std::optional<double> lon;
  std::size_t ns = positional.size();
  for (std::size_t k = 1; k < positional.size() && k <= 3; ++k) {
    if (is_hemisphere(positional[k], 'N', 'S')) {
      ns = k;
      break;
    }
  }
  if (ns < positional.size()) {
    std::size_t ew = positional.size();
    for (std::size_t k = ns + 2; k < positional.size() && k <= ns + 4; ++k) {
      if (is_hemisphere(positional[k], 'E', 'W')) {
        ew = k;
        break;
      }
    }
    if (ew < positional.size()) {
      std::span<const std::string> all(positional);
      lat = dms(all.subspan(0, ns));
      lon = dms(all.subspan(ns + 1, ew - ns - 1));
      if (lat && positional[ns] == "S") *lat = -*lat;
      if (lon && positional[ew] == "W") *lon = -*lon;
    }
  } else if (positional.size() >= 2) {
    double a = 0.0;
    double b = 0.0;
    if (parse_number(positional[0], a) && parse_number(positional[1], b)) {
      lat = a;
      lon = b;
    }
  }
  if (!lat || !lon) {
    if (diag) diag->warn("unparseable coord template: {{" + std::string(body) + "}}");
    return std::nullopt;
  }
  if (*lat < -90.0 || *lat > 90.0 || *lon < -180.0 || *lon > 180.0) {
    if (diag) diag->warn("coordinate out of range: {{" + std::string(body) + "}}");
    return std::nullopt;
  }
  return Coordinate{*lat, *lon};
}

const TemporalProfile& TemporalProfile::english() {
  static const TemporalProfile profile{
      {"January", "February", "March", "April", "May", "June", "July",
       "August", "September", "October", "November", "December"},
      {"BC", "BCE", "AD", "CE"},
      "century"};
  return profile;
}

bool classify_temporal(std::string_view title, const TemporalProfile& profile) {
  auto strip_era = [&](std::string_view s) {
    for (const auto& era : profile.era_suffixes) {
      if (s.size() > era.size() + 1 && s.substr(s.size() - era.size()) == era &&
          s[s.size() - era.size() - 1] == ' ')
        return s.substr(0, s.size() - era.size() - 1);
    }
    return s;
  };
  auto all_digits = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
      return c >= '0' && c <= '9';
    });
  };

  auto base = strip_era(title);
  // Year: 1983, 44 BC
  if (base.size() <= 4 && all_digits(base)) return true;
  // Decade: 1980s
  if (base.size() >= 2 && base.size() <= 5 && base.back() == 's' &&
      all_digits(base.substr(0, base.size() - 1)) && base[base.size() - 2] == '0')
    return true;
  // Century: 20th century
  auto space = base.find(' ');
  if (space != std::string_view::npos && base.substr(space + 1) == profile.century_word) {
    auto ordinal = base.substr(0, space);
    if (ordinal.size() >= 3) {
      auto suffix = ordinal.substr(ordinal.size() - 2);
      auto digits = ordinal.substr(0, ordinal.size() - 2);
      if (all_digits(digits) &&
          (suffix == "st" || suffix == "nd" || suffix == "rd" || suffix == "th"))
        return true;
    }
  }
  // Month-day: October 1
  if (space != std::string_view::npos && base.size() == title.size()) {
    auto month = title.substr(0, space);
    int day = 0;
    if (std::find(profile.month_names.begin(), profile.month_names.end(), month) !=
            profile.month_names.end() &&
        parse_unsigned(title.substr(space + 1), day) && day >= 1 && day <= 31)
      return true;
  }
  return false;
}

}  // namespace eesd

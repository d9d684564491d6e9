// Copyright 2026 The t2t Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "t2t/postprocess.hpp"

#include <array>
#include <utility>

#include "t2t/text.hpp"

namespace t2t {

namespace {

// Longer spellings first so "&quot;" wins over the bare "&quot".
constexpr std::array<std::pair<std::string_view, std::string_view>, 8> kEntities{{
    {"&quot;", "\""},
    {"&quot", "\""},
    {"&amp;", "&"},
    {"&amp", "&"},
    {"&apos;", "'"},
    {"&lt;", "<"},
    {"&gt;", ">"},
    {"&#39;", "'"},
}};

enum class QuoteKind { kNone, kDouble, kSingle, kCurlyDouble, kCurlySingle };

struct QuoteInfo {
  QuoteKind kind = QuoteKind::kNone;
  bool symmetric = false;
  bool opening = false;  // meaningful for asymmetric quotes only
};

QuoteInfo classify(char32_t cp) {
  switch (cp) {
    case U'"': return {QuoteKind::kDouble, true, false};
    case U'\'': return {QuoteKind::kSingle, true, false};
    case 0x201C: return {QuoteKind::kCurlyDouble, false, true};
    case 0x201D: return {QuoteKind::kCurlyDouble, false, false};
    case 0x2018: return {QuoteKind::kCurlySingle, false, true};
    case 0x2019: return {QuoteKind::kCurlySingle, false, false};
    default: return {};
  }
}

// A single quote or right single quote between two letters/digits is an
// apostrophe ("sy'n", "it’s"), not a quotation mark.
bool is_apostrophe(const std::vector<text::CodePoint>& cps, std::size_t i) {
  const char32_t cp = cps[i].value;
  if (cp != U'\'' && cp != 0x2019) return false;
  return i > 0 && i + 1 < cps.size() && text::is_alnum(cps[i - 1].value) &&
         text::is_alnum(cps[i + 1].value);
}

bool opens_context(char32_t prev) {
  return text::is_space(prev) || prev == U'(' || prev == U'[' || prev == U'{' ||
         classify(prev).kind != QuoteKind::kNone;
}

}  // namespace

std::string decode_html_entities(std::string_view text) {
  std::string current(text);
  for (;;) {
    std::string next;
    next.reserve(current.size());
    bool changed = false;
    std::size_t i = 0;
    while (i < current.size()) {
      if (current[i] == '&') {
        bool matched = false;
        for (const auto& [entity, replacement] : kEntities) {
          if (std::string_view(current).substr(i, entity.size()) == entity) {
            next += replacement;
            i += entity.size();
            matched = changed = true;
            break;
          }
        }
        if (matched) continue;
      }
      next += current[i++];
    }
    if (!changed) return current;
    current = std::move(next);
  }
}

bool contains_html_entity(std::string_view text) {
  for (const auto& [entity, replacement] : kEntities) {
    if (text.find(entity) != std::string_view::npos) return true;
  }
  return false;
}

std::string replace_underscores(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != ' ' && text[i] != '_') {
      out += text[i++];
      continue;
    }
    const std::size_t start = i;
    bool had_underscore = false;
    while (i < text.size() && (text[i] == ' ' || text[i] == '_')) {
      had_underscore |= text[i] == '_';
      ++i;
    }
    if (had_underscore) {
      out += ' ';
    } else {
      out.append(text.substr(start, i - start));
    }
  }
  return out;
}

bool wraps_entire_text(std::string_view raw) {
  const auto cps = text::decode_utf8(text::trim(raw));
  if (cps.size() < 2) return false;
  const QuoteInfo outer = classify(cps.front().value);
  if (outer.kind == QuoteKind::kNone || !(outer.symmetric || outer.opening)) return false;
  const QuoteInfo last = classify(cps.back().value);
  if (last.kind != outer.kind || !(last.symmetric || !last.opening)) return false;

  // Track quotations opened inside; the outer quote wraps everything only if
  // nothing inside closes it early and every inner quotation is closed.
  std::vector<QuoteKind> open;
  for (std::size_t i = 1; i + 1 < cps.size(); ++i) {
    const QuoteInfo q = classify(cps[i].value);
    if (q.kind == QuoteKind::kNone || is_apostrophe(cps, i)) continue;
    const bool opener = q.symmetric ? opens_context(cps[i - 1].value) : q.opening;
    if (opener) {
      open.push_back(q.kind);
      continue;
    }
    bool closed = false;
    for (std::size_t k = open.size(); k > 0; --k) {
      if (open[k - 1] == q.kind) {
        open.resize(k - 1);
        closed = true;
        break;
      }
    }
    if (!closed && q.kind == outer.kind) return false;
  }
  return open.empty();
}

std::string strip_wrapping_quotes(std::string_view text) {
  std::string current(text);
  while (wraps_entire_text(current)) {
    const auto trimmed = text::trim(current);
    const auto cps = text::decode_utf8(trimmed);
    const std::size_t begin = cps.front().length;
    const std::size_t end = cps.back().offset;
    current = std::string(trimmed.substr(begin, end - begin));
  }
  return current;
}

CleanText postprocess(std::string_view text) {
  CleanText out{std::string(text), {}};
  const auto apply = [&out](std::string_view name, std::string next) {
    if (next != out.text) {
      out.applied_steps.emplace_back(name);
      out.text = std::move(next);
    }
  };
  apply("decode_html_entities", decode_html_entities(out.text));
  apply("replace_underscores", replace_underscores(out.text));
  apply("strip_wrapping_quotes", strip_wrapping_quotes(out.text));
  return out;
}

}  // namespace t2t

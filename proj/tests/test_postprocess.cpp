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

#include <doctest.h>

#include <random>

#include "t2t/postprocess.hpp"
#include "t2t/text.hpp"

using namespace t2t;

namespace {

std::string alnum_only(std::string_view s) {
  std::string out;
  for (const auto& cp : text::decode_utf8(s)) {
    if (text::is_alnum(cp.value)) out.append(s.substr(cp.offset, cp.length));
  }
  return out;
}

// Strings built from the pieces postprocessing cares about.
std::string fuzz_string(std::mt19937_64& rng, bool with_entities) {
  static const std::vector<std::string> pieces = {
      "a", "Bella", "Center", "23", "x", "é", "ó", " ", " ", "  ", "_", "__", ".", ",", "\"", "'", "“", "”", "‘",
      "’", "«", "»", "(", ")", "it's", "d'", "o’", "\t", "\n"};
  static const std::vector<std::string> entities = {"&quot;", "&quot", "&amp;", "&amp", "&apos;", "&lt;",
                                                    "&gt;",   "&#39;", "&",     ";",    "&amp;quot;", "#39"};
  std::string s;
  const auto len = rng() % 24;
  for (std::size_t i = 0; i < len; ++i) {
    if (with_entities && rng() % 4 == 0) {
      s += entities[rng() % entities.size()];
    } else {
      s += pieces[rng() % pieces.size()];
    }
  }
  return s;
}

}  // namespace

TEST_CASE("entity decoding") {
  CHECK(decode_html_entities("He said &quot;hi&quot;.") == "He said \"hi\".");
  CHECK(decode_html_entities("no entities here") == "no entities here");
  CHECK(decode_html_entities("&amp;quot;x&amp;quot;") == "\"x\"");
  CHECK(decode_html_entities("&quothi&quot") == "\"hi\"");
  CHECK(decode_html_entities("a &lt;b&gt; &apos;c&#39; d &amp e") == "a <b> 'c' d & e");
  CHECK(decode_html_entities("&nbsp; &copy;") == "&nbsp; &copy;");
}

TEST_CASE("underscores") {
  CHECK(replace_underscores("Bella_Center") == "Bella Center");
  CHECK(replace_underscores("a__b") == "a b");
  CHECK(replace_underscores("a _ b") == "a b");
  CHECK(replace_underscores("no underscores  here") == "no underscores  here");
}

TEST_CASE("wrapping quotes") {
  CHECK(strip_wrapping_quotes("\"The hotel has 23 floors.\"") == "The hotel has 23 floors.");
  CHECK(strip_wrapping_quotes("He said \"hi\" loudly.") == "He said \"hi\" loudly.");
  CHECK(strip_wrapping_quotes("\"\"") == "");
  CHECK(strip_wrapping_quotes("“Curly.”") == "Curly.");
  CHECK(strip_wrapping_quotes("'Single.'") == "Single.");
  CHECK(strip_wrapping_quotes("  \"padded\"  ") == "padded");
  // Two quotations side by side do not wrap the text.
  CHECK(strip_wrapping_quotes("\"a\" and \"b\"") == "\"a\" and \"b\"");
  CHECK(strip_wrapping_quotes("'It's'") == "It's");
  CHECK(strip_wrapping_quotes("“a” “b”") == "“a” “b”");
  CHECK_FALSE(wraps_entire_text("\"open only"));
  CHECK_FALSE(wraps_entire_text("\"a\" b \"c\""));
}

TEST_CASE("postprocess order and step names") {
  const CleanText c = postprocess("\"&quot;Bella_Center&quot; is big.\"");
  CHECK(c.text == "\"Bella Center\" is big.");
  CHECK(c.applied_steps ==
        std::vector<std::string>{"decode_html_entities", "replace_underscores", "strip_wrapping_quotes"});

  const CleanText clean = postprocess("Already clean.");
  CHECK(clean.text == "Already clean.");
  CHECK(clean.applied_steps.empty());

  CHECK(postprocess("He said &quot;hi&quot;.").text == "He said \"hi\".");
  CHECK(postprocess("He said &quot;hi&quot;.").applied_steps == std::vector<std::string>{"decode_html_entities"});
}

TEST_CASE("fuzz: idempotent, clean, non-destructive") {
  std::mt19937_64 rng(20230601);
  for (int i = 0; i < 10000; ++i) {
    const bool entities = i % 2 == 0;
    const std::string raw = fuzz_string(rng, entities);
    const CleanText once = postprocess(raw);
    INFO("input: [" << raw << "]");
    REQUIRE(postprocess(once.text).text == once.text);
    REQUIRE(postprocess(once.text).applied_steps.empty());
    REQUIRE_FALSE(contains_html_entity(once.text));
    REQUIRE(once.text.find('_') == std::string::npos);
    REQUIRE_FALSE(wraps_entire_text(once.text));
    if (!entities) REQUIRE(alnum_only(once.text) == alnum_only(raw));
  }
}

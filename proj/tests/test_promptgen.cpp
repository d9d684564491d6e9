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

#include "t2t/error.hpp"
#include "t2t/promptgen.hpp"
#include "test_support.hpp"

using namespace t2t;
using t2t::testing::data_file;
using t2t::testing::fixture;
using t2t::testing::read_file;

namespace {

Entry ac_hotel() { return load_corpus(fixture("ac_hotel.jsonl"), CorpusFormat::kJsonl).entries.at(0); }

std::size_t count_lines_equal(const std::string& text, std::string_view line) {
  std::size_t n = 0, start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    if (std::string_view(text).substr(start, end - start) == line) ++n;
    start = end + 1;
  }
  return n;
}

}  // namespace

TEST_CASE("linearize keeps fields verbatim") {
  CHECK(linearize({"AC_Hotel_Bella_Sky_Copenhagen", "floorCount", "23"}) ==
        "AC_Hotel_Bella_Sky_Copenhagen floorCount 23");
  CHECK(linearize({"Adolfo_Suárez_Madrid–Barajas_Airport", "runwayName", "\"14R/32L\""}) ==
        "Adolfo_Suárez_Madrid–Barajas_Airport runwayName \"14R/32L\"");
  CHECK(linearize({"a", "b", "c"}) == "a b c");
}

TEST_CASE("zero-shot AC_Hotel prompt matches the canonical bytes") {
  const Prompt p = build_zero_shot(ac_hotel(), lang::kEnglish);
  CHECK(p.text == read_file(fixture("prompts/ac_hotel_zero_shot_en.txt")));
  CHECK(p.text.starts_with("Write the following triples as fluent English text.\n"));
  CHECK(p.entry_id == "ac-hotel");
}

TEST_CASE("zero-shot template substitution and determinism") {
  const Entry e = make_entry("one", {{"a", "b", "c"}});
  const Prompt p = build_zero_shot(e, lang::kIrish);
  CHECK(p.text.find("fluent Irish text.") != std::string::npos);
  CHECK(count_lines_equal(p.text, "a b c") == 1);
  CHECK(build_zero_shot(e, lang::kIrish).text == p.text);
  CHECK(build_zero_shot(e, lang::kBreton).text.starts_with("Write the following triples as fluent Breton text."));
}

TEST_CASE("zero-shot without triple quotes") {
  const Entry e = make_entry("one", {{"a", "b", "c"}});
  CHECK(build_zero_shot(e, lang::kWelsh, Quoting::kNone).text ==
        "Write the following triples as fluent Welsh text.\n\nTriples:\na b c\n\nText:");
}

TEST_CASE("few-shot AC_Hotel prompt matches the canonical bytes") {
  const Prompt p = build_few_shot(ac_hotel(), default_examples(lang::kEnglish), lang::kEnglish);
  CHECK(p.text == read_file(fixture("prompts/ac_hotel_few_shot_en.txt")));
  CHECK(p.text.ends_with("Text 3:"));
  CHECK(count_lines_equal(p.text, "##") == 2);
}

TEST_CASE("few-shot numbering and separators") {
  const Entry e = make_entry("q", {{"x", "y", "z"}});
  const std::vector<FewShotExample> one{{{{"a", "b", "c"}}, "A b c."}};
  const Prompt p = build_few_shot(e, one, lang::kEnglish);
  CHECK(p.text ==
        "Write the following triples as fluent English text.\n\n"
        "Triple 1: \"\"\"\na b c\n\"\"\"\nText 1: A b c.\n##\n"
        "Triple 2: \"\"\"\nx y z\n\"\"\"\nText 2:");
  CHECK(count_lines_equal(p.text, "##") == 1);

  auto five = default_examples(lang::kIrish);
  five.insert(five.end(), five.begin(), five.end());
  five.push_back(five.front());
  CHECK(count_lines_equal(build_few_shot(e, five, lang::kIrish).text, "##") == five.size());
}

TEST_CASE("few-shot preconditions") {
  const Entry e = make_entry("q", {{"x", "y", "z"}});
  CHECK_THROWS_AS(build_few_shot(e, {}, lang::kEnglish), Error);
  try {
    build_few_shot(e, {}, lang::kEnglish);
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::kNoExamples);
  }
  const Entry empty = make_entry("empty", {});
  try {
    build_zero_shot(empty, lang::kEnglish);
    FAIL("expected EmptyEntry");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::kEmptyEntry);
  }
}

TEST_CASE("curated examples") {
  const auto en = default_examples(lang::kEnglish);
  REQUIRE(en.size() == 2);
  CHECK(en[0].text == "14R/32L is the runway name of Adolfo Suárez Madrid-Barajas Airport.");
  CHECK(en[1].triples.size() == 3);
  const auto cy = default_examples(lang::kWelsh);
  REQUIRE(cy.size() == 2);
  CHECK(cy[0].text == "Ganed Albennie Jones yn Errata, Mississippi.");
  CHECK(cy[0].triples == std::vector<Triple>{{"Albennie_Jones", "birthPlace", "Errata,_Mississippi"}});
  CHECK(default_examples(lang::kMaltese)[0].text == "Albennie Jones twieldet f'Errata Mississippi.");
  CHECK(default_examples(lang::kIrish)[0].triples == en[0].triples);
  CHECK(default_examples(lang::kBreton)[1].triples == en[1].triples);
  try {
    default_examples(LanguageCode("xx"));
    FAIL("expected NoDefaults");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNoDefaults);
  }
}

TEST_CASE("shipped examples file equals the built-in set") {
  const ExampleSet file = ExampleSet::load(data_file("fewshot_examples.jsonl"));
  const ExampleSet builtin = ExampleSet::builtin();
  for (const auto& code : {lang::kEnglish, lang::kIrish, lang::kMaltese, lang::kWelsh, lang::kBreton}) {
    CHECK(file.for_language(code) == builtin.for_language(code));
    CHECK(builtin.for_language(code) == default_examples(code));
  }
  CHECK_FALSE(file.has(LanguageCode("xx")));
}

TEST_CASE("build_prompt dispatches on mode") {
  PromptSpec spec;
  spec.mode = PromptMode::kFewShot;
  spec.target_language = lang::kEnglish;
  spec.examples = default_examples(lang::kEnglish);
  CHECK(build_prompt(ac_hotel(), spec).text == read_file(fixture("prompts/ac_hotel_few_shot_en.txt")));
  spec.mode = PromptMode::kZeroShot;
  spec.examples.clear();
  CHECK(build_prompt(ac_hotel(), spec).text == read_file(fixture("prompts/ac_hotel_zero_shot_en.txt")));
}

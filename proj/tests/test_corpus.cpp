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

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "t2t/corpus.hpp"
#include "t2t/error.hpp"
#include "test_support.hpp"

using namespace t2t;
using t2t::testing::fixture;
using t2t::testing::TempDir;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::kIo;
}

Corpus sized_corpus(const std::vector<std::size_t>& sizes) {
  Corpus c;
  c.languages.insert(lang::kEnglish);
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    std::vector<Triple> triples;
    for (std::size_t k = 0; k < sizes[i]; ++k) triples.push_back({"s" + std::to_string(i), "p", "o"});
    c.entries.push_back(make_entry("e" + std::to_string(i), triples, {{lang::kEnglish, {"text"}}}));
  }
  return c;
}

std::map<std::size_t, std::size_t> size_histogram(const std::vector<Entry>& entries) {
  std::map<std::size_t, std::size_t> h;
  for (const auto& e : entries) ++h[e.size];
  return h;
}

// Allocation written out directly from the documented rule.
std::map<std::size_t, std::size_t> expected_allocation(const std::map<std::size_t, std::size_t>& strata,
                                                       std::size_t n, std::size_t total) {
  std::map<std::size_t, std::size_t> quota;
  std::size_t used = 0;
  for (const auto& [size, count] : strata) {
    quota[size] = n * count / total;
    used += quota[size];
  }
  std::vector<std::pair<std::size_t, std::size_t>> order(strata.begin(), strata.end());
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  for (std::size_t i = 0; used < n; ++i, ++used) ++quota[order[i % order.size()].first];
  return quota;
}

}  // namespace

TEST_CASE("AC_Hotel JSONL entry loads with size 4 and verbatim fields") {
  const Corpus c = load_corpus(fixture("ac_hotel.jsonl"), CorpusFormat::kJsonl);
  REQUIRE(c.entries.size() == 1);
  const Entry& e = c.entries[0];
  CHECK(e.id == "ac-hotel");
  CHECK(e.size == 4);
  CHECK(e.triples[0] == Triple{"AC_Hotel_Bella_Sky_Copenhagen", "owner", "Bella_Center"});
  CHECK(e.triples[3] == Triple{"AC_Hotel_Bella_Sky_Copenhagen", "floorCount", "23"});
  REQUIRE(e.references_in(lang::kEnglish).size() == 1);
  CHECK(e.references_in(lang::kEnglish)[0].starts_with("The AC Hotel Bella Sky Copenhagen is owned by Bella Center"));
  CHECK(e.references_in(lang::kIrish).empty());
  CHECK(c.languages == std::set<LanguageCode>{lang::kEnglish});
}

TEST_CASE("empty corpus file is rejected") {
  TempDir dir;
  t2t::testing::write_file(dir / "empty.jsonl", "\n\n");
  CHECK(kind_of([&] { load_corpus(dir / "empty.jsonl", CorpusFormat::kJsonl); }) == ErrorKind::kEmptyCorpus);
}

TEST_CASE("missing corpus file is an I/O error") {
  CHECK(kind_of([] { load_corpus("/nonexistent/corpus.jsonl", CorpusFormat::kJsonl); }) == ErrorKind::kIo);
}

TEST_CASE("ten-entry fixture keeps sizes in order") {
  const Corpus c = load_corpus(fixture("ten_entries.jsonl"), CorpusFormat::kJsonl);
  std::vector<std::size_t> sizes;
  for (const auto& e : c.entries) sizes.push_back(e.size);
  CHECK(sizes == std::vector<std::size_t>{1, 1, 2, 2, 3, 3, 4, 5, 6, 7});
  CHECK(validate_corpus(c).empty());
}

TEST_CASE("duplicate ids") {
  CHECK(kind_of([] { load_corpus(fixture("duplicate_id.jsonl"), CorpusFormat::kJsonl); }) == ErrorKind::kDuplicateId);
  const Corpus c = parse_corpus(fixture("duplicate_id.jsonl"), CorpusFormat::kJsonl);
  const auto v = validate_corpus(c);
  REQUIRE(v.size() == 1);
  CHECK(v[0].invariant == "unique-id");
  CHECK(v[0].entry_id == "dup-a");
}

TEST_CASE("declared size that disagrees with the triples is one violation") {
  std::istringstream in(
      R"({"id": "e1", "size": 3, "triples": [{"subject": "a", "predicate": "b", "object": "c"}, )"
      R"({"subject": "d", "predicate": "e", "object": "f"}], "references": {"en": ["x"]}})"
      "\n");
  const Corpus c = parse_corpus_jsonl(in, Split::kDev);
  const auto v = validate_corpus(c);
  REQUIRE(v.size() == 1);
  CHECK(v[0].entry_id == "e1");
  CHECK(v[0].invariant == "size-matches-triples");
}

TEST_CASE("blank triple fields and empty references are violations") {
  Corpus c = sized_corpus({1});
  c.entries[0].triples[0].object = "  ";
  c.entries[0].references[lang::kEnglish].push_back("");
  const auto v = validate_corpus(c);
  REQUIRE(v.size() == 2);
  CHECK(v[0].invariant == "nonempty-triple-fields");
  CHECK(v[1].invariant == "nonempty-references");
}

TEST_CASE("malformed JSONL names the line") {
  std::istringstream in("{\"id\": \"a\", \"triples\": []}\n{not json\n");
  try {
    parse_corpus_jsonl(in, Split::kDev, "bad.jsonl");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kParse);
    CHECK(std::string(e.what()).find("bad.jsonl") != std::string::npos);
    CHECK(std::string(e.what()).find('2') != std::string::npos);
  }
}

TEST_CASE("entries without an id get split-index ids") {
  std::istringstream in(R"({"triples": [{"subject": "a", "predicate": "b", "object": "c"}]})"
                        "\n"
                        R"({"triples": [{"subject": "d", "predicate": "e", "object": "f"}]})"
                        "\n");
  const Corpus c = parse_corpus_jsonl(in, Split::kTest);
  REQUIRE(c.entries.size() == 2);
  CHECK(c.entries[0].id == "test-0");
  CHECK(c.entries[1].id == "test-1");
}

TEST_CASE("WebNLG XML reader") {
  const Corpus c = load_corpus(fixture("webnlg_sample.xml"), CorpusFormat::kWebNlgXml);
  REQUIRE(c.entries.size() == 2);
  CHECK(c.entries[0].id == "Id1");
  CHECK(c.entries[0].category == std::optional<std::string>("Airport"));
  CHECK(c.entries[0].triples[0] == Triple{"Aarhus_Airport", "runwayLength", "2776.0"});
  CHECK(c.entries[1].size == 2);
  CHECK(c.entries[1].triples[1] == Triple{"AC_Hotel_Bella_Sky_Copenhagen", "architect", "3XN"});
  // A lex without a lang attribute is English.
  CHECK(c.entries[1].references_in(lang::kEnglish).size() == 1);
  CHECK(c.entries[1].references_in(lang::kIrish).size() == 2);
  CHECK(c.languages == std::set<LanguageCode>{lang::kEnglish, lang::kIrish});
}

TEST_CASE("unknown reference languages are registered with a warning") {
  std::vector<std::string> warnings;
  LanguageRegistry::global().set_warning_sink([&](std::string_view w) { warnings.emplace_back(w); });
  std::istringstream in(
      R"({"id": "q", "triples": [{"subject": "a", "predicate": "b", "object": "c"}], "references": {"qx": ["t"]}})"
      "\n");
  const Corpus c = parse_corpus_jsonl(in, Split::kDev);
  LanguageRegistry::global().set_warning_sink(nullptr);
  CHECK(LanguageRegistry::global().contains(LanguageCode("qx")));
  CHECK(display_name(LanguageCode("qx")) == "qx");
  CHECK(warnings.size() == 1);
  CHECK(validate_corpus(c).empty());
}

TEST_CASE("JSONL round trip") {
  for (const char* name : {"ac_hotel.jsonl", "ten_entries.jsonl", "dev20/corpus.jsonl"}) {
    const Corpus c = load_corpus(fixture(name), CorpusFormat::kJsonl);
    std::stringstream s;
    write_corpus_jsonl(c, s);
    CHECK(parse_corpus_jsonl(s, Split::kDev) == c);
  }
  const Corpus xml = load_corpus(fixture("webnlg_sample.xml"), CorpusFormat::kWebNlgXml);
  std::stringstream s;
  write_corpus_jsonl(xml, s);
  CHECK(parse_corpus_jsonl(s, Split::kDev) == xml);
}

TEST_CASE("sample equal to the population returns every entry in corpus order") {
  const Corpus c = load_corpus(fixture("dev20/corpus.jsonl"), CorpusFormat::kJsonl);
  for (std::uint64_t seed : {0u, 1u, 99u}) {
    CHECK(stratified_sample(c, 20, seed) == c.entries);
  }
}

TEST_CASE("50 size-1 and 50 size-2 entries, n=20: 10 of each for every seed") {
  std::vector<std::size_t> sizes(50, 1);
  sizes.insert(sizes.end(), 50, 2);
  const Corpus c = sized_corpus(sizes);
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const auto h = size_histogram(stratified_sample(c, 20, seed));
    REQUIRE(h.at(1) == 10);
    REQUIRE(h.at(2) == 10);
  }
  CHECK(stratified_sample(c, 20, 7) == stratified_sample(c, 20, 7));
  CHECK(stratified_sample(c, 20, 7) != stratified_sample(c, 20, 8));
}

TEST_CASE("sample too large") {
  const Corpus c = load_corpus(fixture("ten_entries.jsonl"), CorpusFormat::kJsonl);
  CHECK(kind_of([&] { stratified_sample(c, 11, 1); }) == ErrorKind::kSampleTooLarge);
}

TEST_CASE("sampling property: allocation, subset, no duplicates, corpus order") {
  std::mt19937 rng(2023);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t count = 1 + rng() % 60;
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < count; ++i) sizes.push_back(1 + rng() % 7);
    const Corpus c = sized_corpus(sizes);
    const std::size_t n = rng() % (count + 1);
    const auto sample = stratified_sample(c, n, rng());
    REQUIRE(sample.size() == n);

    std::map<std::size_t, std::size_t> strata;
    for (auto s : sizes) ++strata[s];
    auto expected = expected_allocation(strata, n, count);
    std::erase_if(expected, [](const auto& kv) { return kv.second == 0; });
    CHECK(size_histogram(sample) == expected);

    // Members come from the corpus, once each, in corpus order.
    std::size_t last = 0;
    std::set<std::string> ids;
    for (const auto& e : sample) {
      const auto it = std::find(c.entries.begin(), c.entries.end(), e);
      REQUIRE(it != c.entries.end());
      const auto pos = static_cast<std::size_t>(it - c.entries.begin()) + 1;
      CHECK(pos > last);
      last = pos;
      CHECK(ids.insert(e.id).second);
    }
  }
}

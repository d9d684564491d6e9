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

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "t2t/language.hpp"

namespace t2t {

// One RDF triple, stored verbatim (underscores and quoted literals kept).
struct Triple {
  std::string subject;
  std::string predicate;
  std::string object;

  bool operator==(const Triple&) const = default;
};

struct Entry {
  std::string id;
  std::optional<std::string> category;
  std::vector<Triple> triples;
  // Declared triple count; equals triples.size() for valid entries.
  std::size_t size = 0;
  std::map<LanguageCode, std::vector<std::string>> references;

  bool operator==(const Entry&) const = default;

  // References in `language`, empty if there are none.
  const std::vector<std::string>& references_in(const LanguageCode& language) const;
};

Entry make_entry(std::string id, std::vector<Triple> triples,
                 std::map<LanguageCode, std::vector<std::string>> references = {},
                 std::optional<std::string> category = std::nullopt);

enum class Split { kTrain, kDev, kTest };

std::string_view split_name(Split split);
std::optional<Split> parse_split(std::string_view name);

struct Corpus {
  Split split = Split::kDev;
  std::set<LanguageCode> languages;
  std::vector<Entry> entries;

  bool operator==(const Corpus&) const = default;

  const Entry* find(std::string_view id) const;
};

enum class CorpusFormat { kWebNlgXml, kJsonl };

std::optional<CorpusFormat> parse_corpus_format(std::string_view name);
std::string_view corpus_format_name(CorpusFormat format);

// Reads a corpus without enforcing entry invariants; only syntax errors
// (ParseError) and unreadable files (IoError) are raised. Used by validation,
// which wants to report every violation rather than stop at the first.
Corpus parse_corpus(const std::filesystem::path& path, CorpusFormat format,
                    Split split = Split::kDev);
Corpus parse_corpus_jsonl(std::istream& in, Split split, std::string_view source = "<stream>");
Corpus parse_corpus_webnlg_xml(std::istream& in, Split split,
                               std::string_view source = "<stream>");

// Strict load: the returned corpus satisfies every invariant, otherwise
// throws EmptyCorpus, DuplicateId or ParseError naming the offending entry.
Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format,
                   Split split = Split::kDev);

// Throws like load_corpus if `corpus` breaks an invariant.
void require_valid(const Corpus& corpus);

// JSONL entry schema: {"id", "category"?, "triples": [...], "references": {...}}.
std::string entry_to_json_line(const Entry& entry);
void write_corpus_jsonl(const Corpus& corpus, std::ostream& out);

struct Violation {
  std::string entry_id;
  std::string invariant;
  std::string message;
};

// Empty iff every Triple/Entry/Corpus invariant holds.
std::vector<Violation> validate_corpus(const Corpus& corpus);

// Proportional allocation over triple-count strata: each stratum gets
// floor(n * share) slots, leftover slots go one each to the most populous
// strata (ties to the smaller triple count). Selection inside a stratum is
// uniform under `seed`. The result is returned in corpus order.
std::vector<Entry> stratified_sample(const Corpus& corpus, std::size_t n, std::uint64_t seed);

}  // namespace t2t

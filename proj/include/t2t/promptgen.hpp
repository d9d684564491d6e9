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

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "t2t/corpus.hpp"
#include "t2t/language.hpp"

namespace t2t {

enum class PromptMode { kZeroShot, kFewShot };
enum class Quoting { kTripleQuotes, kNone };

struct FewShotExample {
  std::vector<Triple> triples;
  std::string text;

  bool operator==(const FewShotExample&) const = default;
};

struct PromptSpec {
  PromptMode mode = PromptMode::kZeroShot;
  LanguageCode target_language = lang::kEnglish;
  Quoting quoting = Quoting::kTripleQuotes;
  std::vector<FewShotExample> examples;  // empty iff zero-shot
};

struct Prompt {
  std::string text;
  PromptSpec spec;
  std::string entry_id;
};

// `subject predicate object`, fields verbatim.
std::string linearize(const Triple& triple);

Prompt build_zero_shot(const Entry& entry, const LanguageCode& language,
                       Quoting quoting = Quoting::kTripleQuotes);

Prompt build_few_shot(const Entry& entry, const std::vector<FewShotExample>& examples,
                      const LanguageCode& language, Quoting quoting = Quoting::kTripleQuotes);

// Dispatches on spec.mode.
Prompt build_prompt(const Entry& entry, const PromptSpec& spec);

// The curated pair of in-context examples shipped for `language`.
// Throws NoDefaults for languages without curated examples.
std::vector<FewShotExample> default_examples(const LanguageCode& language);

// Curated examples keyed by language. Loaded from a file in the JSONL entry
// schema: every entry contributes an example to each language it has a
// reference for (the first reference is the example text).
class ExampleSet {
 public:
  ExampleSet() = default;

  static ExampleSet builtin();
  static ExampleSet from_corpus(const Corpus& corpus);
  static ExampleSet load(const std::filesystem::path& path);

  // Throws NoDefaults if `language` has no examples.
  const std::vector<FewShotExample>& for_language(const LanguageCode& language) const;
  bool has(const LanguageCode& language) const;

  // Back to the JSONL entry schema (one line per distinct triple set).
  Corpus to_corpus() const;

 private:
  std::map<LanguageCode, std::vector<FewShotExample>> by_language_;
};

}  // namespace t2t

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

#include "t2t/promptgen.hpp"

#include <fstream>

#include "t2t/error.hpp"

namespace t2t {

namespace {

constexpr std::string_view kDelimiter = "\"\"\"";

std::string instruction(const LanguageCode& language) {
  return "Write the following triples as fluent " + display_name(language) + " text.";
}

// `{label}: """\n{triples}\n"""` or, unquoted, `{label}:\n{triples}`.
void append_triple_block(std::string& out, std::string_view label,
                         const std::vector<Triple>& triples, Quoting quoting) {
  out += label;
  out += ':';
  if (quoting == Quoting::kTripleQuotes) {
    out += ' ';
    out += kDelimiter;
  }
  out += '\n';
  for (std::size_t i = 0; i < triples.size(); ++i) {
    if (i > 0) out += '\n';
    out += linearize(triples[i]);
  }
  if (quoting == Quoting::kTripleQuotes) {
    out += '\n';
    out += kDelimiter;
  }
}

void require_triples(const Entry& entry) {
  if (entry.triples.empty()) {
    throw Error(ErrorKind::kEmptyEntry, "entry '" + entry.id + "' has no triples");
  }
}

struct CuratedSet {
  std::vector<Triple> triples;
  std::vector<std::pair<LanguageCode, std::string>> texts;
};

// The fixed in-context examples: runway + journal triple sets for
// English/Irish/Breton, Albennie Jones + GMA New Media for Maltese/Welsh.
std::vector<CuratedSet> curated_sets() {
  return {
      {{{"Adolfo_Suárez_Madrid–Barajas_Airport", "runwayName", "\"14R/32L\""}},
       {{lang::kEnglish, "14R/32L is the runway name of Adolfo Suárez Madrid-Barajas Airport."},
        {lang::kIrish, "14R/32L is ainm do rúidbhealach Aerfort Adolfo Suárez Madrid-Barajas"},
        {lang::kBreton, "Anv leurenn bradañ aerborzh Adolfo Suárez Madrid-Barajas zo 14L/32R."}}},
      {{{"American_Journal_of_Mathematics", "abbreviation", "\"Am. J. Math.\""},
        {"American_Journal_of_Mathematics", "firstPublicationYear", "1878"},
        {"American_Journal_of_Mathematics", "issnNumber", "\"1080-6377\""}},
       {{lang::kEnglish,
         "The American Journal of Mathematics was first published in 1878 and is also known by "
         "the abbreviated title of Am. J. Math. It has an ISSN number of 1080-6377."},
        {lang::kIrish,
         "Foilsíodh an American Journal of Mathematics don chéad uair in 1878 agus aithnítear "
         "leis an ainm giorraithe Am. J. Math. chomh maith é. Tá an uimhir ISSN 1080-6377 aige."},
        // Verbatim from the curated set even though it does not describe the
        // journal triples.
        {lang::kBreton,
         "Finland zo bro ar Finniz hag hini ar skorndorrer Aleksey Chirikov bet savet e "
         "chanter-bigi Arctech en Helsinki."}}},
      {{{"Albennie_Jones", "birthPlace", "Errata,_Mississippi"}},
       {{lang::kMaltese, "Albennie Jones twieldet f'Errata Mississippi."},
        {lang::kWelsh, "Ganed Albennie Jones yn Errata, Mississippi."}}},
      {{{"GMA_New_Media", "industry", "Entertainment"},
        {"GMA_New_Media", "type", "Media_company"},
        {"GMA_New_Media", "product", "World_Wide_Web"}},
       {{lang::kMaltese,
         "GMA New Media hija kumpanija tal-midja tal-industrija tad-divertiment li toffri "
         "servizzi li jikkonċernaw il-World Wide Web."},
        {lang::kWelsh,
         "Mae GMA New Media yn gwmni cyfryngau yn y diwydiant adloniant sy'n cynnig "
         "gwasanaethau sy'n ymwneud â'r We Fyd Eang."}}},
  };
}

}  // namespace

std::string linearize(const Triple& triple) {
  return triple.subject + " " + triple.predicate + " " + triple.object;
}

Prompt build_zero_shot(const Entry& entry, const LanguageCode& language, Quoting quoting) {
  require_triples(entry);
  std::string text = instruction(language);
  text += "\n\n";
  append_triple_block(text, "Triples", entry.triples, quoting);
  text += "\n\nText:";
  return {std::move(text), PromptSpec{PromptMode::kZeroShot, language, quoting, {}}, entry.id};
}

Prompt build_few_shot(const Entry& entry, const std::vector<FewShotExample>& examples,
                      const LanguageCode& language, Quoting quoting) {
  if (examples.empty()) throw Error(ErrorKind::kNoExamples, "few-shot prompt needs at least one example");
  require_triples(entry);
  std::string text = instruction(language);
  text += "\n\n";
  std::size_t k = 0;
  for (const auto& ex : examples) {
    const std::string n = std::to_string(++k);
    append_triple_block(text, "Triple " + n, ex.triples, quoting);
    text += "\nText " + n + ": " + ex.text + "\n##\n";
  }
  const std::string n = std::to_string(++k);
  append_triple_block(text, "Triple " + n, entry.triples, quoting);
  text += "\nText " + n + ":";
  return {std::move(text), PromptSpec{PromptMode::kFewShot, language, quoting, examples}, entry.id};
}

Prompt build_prompt(const Entry& entry, const PromptSpec& spec) {
  if (spec.mode == PromptMode::kZeroShot) {
    return build_zero_shot(entry, spec.target_language, spec.quoting);
  }
  return build_few_shot(entry, spec.examples, spec.target_language, spec.quoting);
}

std::vector<FewShotExample> default_examples(const LanguageCode& language) {
  static const ExampleSet kBuiltin = ExampleSet::builtin();
  return kBuiltin.for_language(language);
}

ExampleSet ExampleSet::builtin() {
  ExampleSet set;
  for (const auto& curated : curated_sets()) {
    for (const auto& [code, text] : curated.texts) {
      set.by_language_[code].push_back({curated.triples, text});
    }
  }
  return set;
}

ExampleSet ExampleSet::from_corpus(const Corpus& corpus) {
  ExampleSet set;
  for (const auto& entry : corpus.entries) {
    for (const auto& [code, texts] : entry.references) {
      if (texts.empty()) continue;
      set.by_language_[code].push_back({entry.triples, texts.front()});
    }
  }
  return set;
}

ExampleSet ExampleSet::load(const std::filesystem::path& path) {
  return from_corpus(load_corpus(path, CorpusFormat::kJsonl, Split::kTrain));
}

const std::vector<FewShotExample>& ExampleSet::for_language(const LanguageCode& language) const {
  const auto it = by_language_.find(language);
  if (it == by_language_.end() || it->second.empty()) {
    throw Error(ErrorKind::kNoDefaults, "no curated few-shot examples for language '" + language.str() + "'");
  }
  return it->second;
}

bool ExampleSet::has(const LanguageCode& language) const {
  const auto it = by_language_.find(language);
  return it != by_language_.end() && !it->second.empty();
}

Corpus ExampleSet::to_corpus() const {
  Corpus corpus;
  corpus.split = Split::kTrain;
  for (const auto& [code, examples] : by_language_) {
    corpus.languages.insert(code);
    for (const auto& ex : examples) {
      Entry* target = nullptr;
      for (auto& e : corpus.entries) {
        if (e.triples == ex.triples && !e.references.contains(code)) {
          target = &e;
          break;
        }
      }
      if (target == nullptr) {
        corpus.entries.push_back(
            make_entry("example-" + std::to_string(corpus.entries.size() + 1), ex.triples));
        target = &corpus.entries.back();
      }
      target->references[code].push_back(ex.text);
    }
  }
  return corpus;
}

}  // namespace t2t

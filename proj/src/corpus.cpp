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

#include "t2t/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <unordered_map>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <json.hpp>

#include "t2t/error.hpp"
#include "t2t/text.hpp"

namespace t2t {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

Error parse_error(std::string_view source, const std::string& locus, const std::string& what) {
  return Error(ErrorKind::kParse, std::string(source) + ":" + locus + ": " + what);
}

std::string synthesized_id(Split split, std::size_t index) {
  return std::string(split_name(split)) + "-" + std::to_string(index);
}

void collect_languages(Corpus& corpus) {
  auto& registry = LanguageRegistry::global();
  for (const auto& entry : corpus.entries) {
    for (const auto& [code, refs] : entry.references) {
      registry.ensure(code);
      corpus.languages.insert(code);
    }
  }
}

std::string require_string(const json& obj, const char* key, std::string_view source,
                           const std::string& locus) {
  const auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw parse_error(source, locus, std::string("missing or non-string field '") + key + "'");
  }
  return it->get<std::string>();
}

Entry entry_from_json(const json& j, Split split, std::size_t index, std::string_view source,
                      const std::string& locus) {
  if (!j.is_object()) throw parse_error(source, locus, "entry is not a JSON object");
  Entry entry;
  if (const auto it = j.find("id"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw parse_error(source, locus, "'id' must be a string");
    entry.id = it->get<std::string>();
  } else {
    entry.id = synthesized_id(split, index);
  }
  if (const auto it = j.find("category"); it != j.end() && !it->is_null()) {
    if (!it->is_string()) throw parse_error(source, locus, "'category' must be a string");
    entry.category = it->get<std::string>();
  }
  const auto triples = j.find("triples");
  if (triples == j.end() || !triples->is_array()) {
    throw parse_error(source, locus, "missing 'triples' array");
  }
  for (std::size_t k = 0; k < triples->size(); ++k) {
    const auto& t = (*triples)[k];
    const std::string tlocus = locus + " triples[" + std::to_string(k) + "]";
    if (!t.is_object()) throw parse_error(source, tlocus, "triple is not an object");
    entry.triples.push_back({require_string(t, "subject", source, tlocus),
                             require_string(t, "predicate", source, tlocus),
                             require_string(t, "object", source, tlocus)});
  }
  entry.size = entry.triples.size();
  if (const auto it = j.find("size"); it != j.end() && !it->is_null()) {
    if (!it->is_number_unsigned()) throw parse_error(source, locus, "'size' must be a non-negative integer");
    entry.size = it->get<std::size_t>();
  }
  if (const auto it = j.find("references"); it != j.end() && !it->is_null()) {
    if (!it->is_object()) throw parse_error(source, locus, "'references' must be an object");
    for (const auto& [code, texts] : it->items()) {
      if (!texts.is_array()) {
        throw parse_error(source, locus, "references['" + code + "'] must be an array");
      }
      auto& out = entry.references[LanguageCode(code)];
      for (const auto& text : texts) {
        if (!text.is_string()) {
          throw parse_error(source, locus, "references['" + code + "'] holds a non-string");
        }
        out.push_back(text.get<std::string>());
      }
    }
  }
  return entry;
}

Triple split_mtriple(const std::string& raw, std::string_view source, const std::string& locus) {
  const auto first = raw.find('|');
  const auto second = first == std::string::npos ? first : raw.find('|', first + 1);
  if (second == std::string::npos) {
    throw parse_error(source, locus, "mtriple is not 'subject | predicate | object': " + raw);
  }
  return {std::string(text::trim(std::string_view(raw).substr(0, first))),
          std::string(text::trim(std::string_view(raw).substr(first + 1, second - first - 1))),
          std::string(text::trim(std::string_view(raw).substr(second + 1)))};
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  // Rejection sampling keeps the draw identical across standard libraries,
  // unlike std::uniform_int_distribution.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

const std::vector<std::string>& Entry::references_in(const LanguageCode& language) const {
  static const std::vector<std::string> kNone;
  const auto it = references.find(language);
  return it == references.end() ? kNone : it->second;
}

Entry make_entry(std::string id, std::vector<Triple> triples,
                 std::map<LanguageCode, std::vector<std::string>> references,
                 std::optional<std::string> category) {
  Entry e;
  e.id = std::move(id);
  e.category = std::move(category);
  e.size = triples.size();
  e.triples = std::move(triples);
  e.references = std::move(references);
  return e;
}

std::string_view split_name(Split split) {
  switch (split) {
    case Split::kTrain: return "train";
    case Split::kDev: return "dev";
    case Split::kTest: return "test";
  }
  return "dev";
}

std::optional<Split> parse_split(std::string_view name) {
  if (name == "train") return Split::kTrain;
  if (name == "dev") return Split::kDev;
  if (name == "test") return Split::kTest;
  return std::nullopt;
}

const Entry* Corpus::find(std::string_view id) const {
  for (const auto& e : entries) {
    if (e.id == id) return &e;
  }
  return nullptr;
}

std::optional<CorpusFormat> parse_corpus_format(std::string_view name) {
  if (name == "webnlg-xml") return CorpusFormat::kWebNlgXml;
  if (name == "jsonl") return CorpusFormat::kJsonl;
  return std::nullopt;
}

std::string_view corpus_format_name(CorpusFormat format) {
  return format == CorpusFormat::kJsonl ? "jsonl" : "webnlg-xml";
}

Corpus parse_corpus_jsonl(std::istream& in, Split split, std::string_view source) {
  Corpus corpus;
  corpus.split = split;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    const std::string locus = "line " + std::to_string(lineno);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw parse_error(source, locus, e.what());
    }
    corpus.entries.push_back(entry_from_json(j, split, corpus.entries.size(), source, locus));
  }
  collect_languages(corpus);
  return corpus;
}

Corpus parse_corpus_webnlg_xml(std::istream& in, Split split, std::string_view source) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_xml(in, tree);
  } catch (const pt::xml_parser_error& e) {
    throw parse_error(source, "line " + std::to_string(e.line()), e.message());
  }
  Corpus corpus;
  corpus.split = split;
  const auto entries = tree.get_child_optional("benchmark.entries");
  if (!entries) return corpus;
  for (const auto& [tag, node] : *entries) {
    if (tag != "entry") continue;
    const std::size_t index = corpus.entries.size();
    const std::string locus = "<entry> #" + std::to_string(index + 1);
    Entry entry;
    entry.id = node.get<std::string>("<xmlattr>.eid", synthesized_id(split, index));
    if (auto cat = node.get_optional<std::string>("<xmlattr>.category")) entry.category = *cat;
    if (const auto mset = node.get_child_optional("modifiedtripleset")) {
      std::size_t k = 0;
      for (const auto& [ttag, tnode] : *mset) {
        if (ttag != "mtriple") continue;
        entry.triples.push_back(split_mtriple(tnode.data(), source,
                                              locus + " <mtriple> #" + std::to_string(++k)));
      }
    }
    entry.size = entry.triples.size();
    if (auto size = node.get_optional<std::string>("<xmlattr>.size")) {
      try {
        entry.size = std::stoul(*size);
      } catch (const std::exception&) {
        throw parse_error(source, locus, "bad size attribute '" + *size + "'");
      }
    }
    for (const auto& [ltag, lnode] : node) {
      if (ltag != "lex") continue;
      const auto code = lnode.get<std::string>("<xmlattr>.lang", "en");
      entry.references[LanguageCode(code)].emplace_back(text::trim(lnode.data()));
    }
    corpus.entries.push_back(std::move(entry));
  }
  collect_languages(corpus);
  return corpus;
}

Corpus parse_corpus(const std::filesystem::path& path, CorpusFormat format, Split split) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open corpus file " + path.string());
  const std::string source = path.string();
  return format == CorpusFormat::kJsonl ? parse_corpus_jsonl(in, split, source)
                                        : parse_corpus_webnlg_xml(in, split, source);
}

void require_valid(const Corpus& corpus) {
  if (corpus.entries.empty()) throw Error(ErrorKind::kEmptyCorpus, "corpus has zero entries");
  for (const auto& v : validate_corpus(corpus)) {
    if (v.invariant == "unique-id") throw Error(ErrorKind::kDuplicateId, "duplicate entry id '" + v.entry_id + "'");
    throw Error(ErrorKind::kParse, "entry '" + v.entry_id + "': " + v.message);
  }
}

Corpus load_corpus(const std::filesystem::path& path, CorpusFormat format, Split split) {
  Corpus corpus = parse_corpus(path, format, split);
  if (corpus.entries.empty()) {
    throw Error(ErrorKind::kEmptyCorpus, path.string() + ": corpus has zero entries");
  }
  require_valid(corpus);
  return corpus;
}

std::string entry_to_json_line(const Entry& entry) {
  ordered_json j;
  j["id"] = entry.id;
  if (entry.category) j["category"] = *entry.category;
  j["triples"] = ordered_json::array();
  for (const auto& t : entry.triples) {
    j["triples"].push_back({{"subject", t.subject}, {"predicate", t.predicate}, {"object", t.object}});
  }
  if (entry.size != entry.triples.size()) j["size"] = entry.size;
  j["references"] = ordered_json::object();
  for (const auto& [code, texts] : entry.references) j["references"][code.str()] = texts;
  return j.dump();
}

void write_corpus_jsonl(const Corpus& corpus, std::ostream& out) {
  for (const auto& entry : corpus.entries) out << entry_to_json_line(entry) << '\n';
}

std::vector<Violation> validate_corpus(const Corpus& corpus) {
  std::vector<Violation> out;
  std::unordered_map<std::string, int> seen;
  for (const auto& entry : corpus.entries) {
    if (++seen[entry.id] == 2) {
      out.push_back({entry.id, "unique-id", "entry id '" + entry.id + "' occurs more than once"});
    }
    if (entry.triples.empty()) {
      out.push_back({entry.id, "nonempty-triples", "entry has no triples"});
    }
    if (entry.size != entry.triples.size()) {
      out.push_back({entry.id, "size-matches-triples",
                     "size is " + std::to_string(entry.size) + " but entry holds " +
                         std::to_string(entry.triples.size()) + " triples"});
    }
    for (std::size_t k = 0; k < entry.triples.size(); ++k) {
      const auto& t = entry.triples[k];
      if (text::trim(t.subject).empty() || text::trim(t.predicate).empty() ||
          text::trim(t.object).empty()) {
        out.push_back({entry.id, "nonempty-triple-fields",
                       "triple " + std::to_string(k + 1) + " has an empty field"});
      }
    }
    for (const auto& [code, texts] : entry.references) {
      if (!corpus.languages.contains(code)) {
        out.push_back({entry.id, "language-listed",
                       "reference language '" + code.str() + "' missing from corpus language set"});
      }
      for (const auto& text : texts) {
        if (text.empty()) {
          out.push_back({entry.id, "nonempty-references",
                         "empty reference text in language '" + code.str() + "'"});
        }
      }
    }
  }
  for (const auto& code : corpus.languages) {
    if (!LanguageRegistry::global().display_name(code)) {
      out.push_back({"", "language-registered", "language '" + code.str() + "' has no display name"});
    }
  }
  return out;
}

std::vector<Entry> stratified_sample(const Corpus& corpus, std::size_t n, std::uint64_t seed) {
  const std::size_t total = corpus.entries.size();
  if (total == 0) throw Error(ErrorKind::kEmptyCorpus, "cannot sample an empty corpus");
  if (n > total) {
    throw Error(ErrorKind::kSampleTooLarge, "sample of " + std::to_string(n) +
                                                " requested from a corpus of " + std::to_string(total));
  }
  // Strata keyed by triple count, ascending.
  std::map<std::size_t, std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < total; ++i) strata[corpus.entries[i].triples.size()].push_back(i);

  struct Slot {
    std::size_t triple_count;
    std::size_t population;
    std::size_t quota;
  };
  std::vector<Slot> slots;
  std::size_t allotted = 0;
  for (const auto& [count, members] : strata) {
    const std::size_t quota = n * members.size() / total;
    slots.push_back({count, members.size(), quota});
    allotted += quota;
  }
  std::vector<std::size_t> order(slots.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return slots[a].population > slots[b].population;
  });
  for (std::size_t k = 0; allotted < n; k = (k + 1) % order.size()) {
    auto& slot = slots[order[k]];
    if (slot.quota < slot.population) {
      ++slot.quota;
      ++allotted;
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> chosen;
  chosen.reserve(n);
  for (const auto& slot : slots) {
    auto members = strata.at(slot.triple_count);
    for (std::size_t i = 0; i < slot.quota; ++i) {
      const std::size_t j = i + uniform_below(rng, members.size() - i);
      std::swap(members[i], members[j]);
      chosen.push_back(members[i]);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  std::vector<Entry> sample;
  sample.reserve(n);
  for (const auto i : chosen) sample.push_back(corpus.entries[i]);
  return sample;
}

}  // namespace t2t

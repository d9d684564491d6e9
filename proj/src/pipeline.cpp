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

#include "t2t/pipeline.hpp"

#include <fstream>
#include <future>
#include <sstream>

#include "t2t/digest.hpp"
#include "t2t/error.hpp"
#include "t2t/ledger.hpp"

namespace t2t {

namespace fs = std::filesystem;

namespace {

Error config_error(ErrorKind cause, const std::string& message) {
  return Error(ErrorKind::kConfig, cause, message);
}

ordered_json to_json(const CleanText& c) { return {{"text", c.text}, {"applied_steps", c.applied_steps}}; }

CleanText clean_text_from_json(const nlohmann::json& j) {
  return {j.at("text").get<std::string>(), j.at("applied_steps").get<std::vector<std::string>>()};
}

void write_file(const fs::path& path, const std::string& content) {
  const fs::path tmp = fs::path(path) += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIo, "cannot write " + tmp.string());
    out << content;
    if (!out) throw Error(ErrorKind::kIo, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot write " + path.string() + ": " + ec.message());
}

std::string corpus_checksum(const RunConfig& config, const Corpus& corpus) {
  std::error_code ec;
  if (!config.corpus_path.empty() && fs::is_regular_file(config.corpus_path, ec)) {
    return sha256_file_hex(config.corpus_path);
  }
  std::ostringstream s;
  write_corpus_jsonl(corpus, s);
  return sha256_hex(s.str());
}

const std::vector<FewShotExample>& examples_for(const RunConfig& config, const RunResources& res) {
  static const std::vector<FewShotExample> kNone;
  if (prompt_mode(config.variant) != PromptMode::kFewShot) return kNone;
  const LanguageCode prompt_language = is_pivot(config.variant) ? lang::kEnglish : config.target_language;
  return res.examples->for_language(prompt_language);
}

PromptSpec prompt_spec(const RunConfig& config, const RunResources& res) {
  PromptSpec spec;
  spec.mode = prompt_mode(config.variant);
  spec.target_language = is_pivot(config.variant) ? lang::kEnglish : config.target_language;
  spec.quoting = config.quoting;
  spec.examples = examples_for(config, res);
  return spec;
}

class EntryRunner {
 public:
  EntryRunner(const RunConfig& config, const RunResources& res, const PromptSpec& spec, LedgerLog* ledger)
      : config_(config), res_(res), spec_(spec), ledger_(ledger) {}

  GenerationRecord operator()(const Entry& entry) const {
    GenerationRecord rec;
    rec.entry_id = entry.id;
    rec.variant = config_.variant;
    try {
      const Prompt prompt = build_prompt(entry, spec_);
      rec.prompt = prompt.text;

      CallStats stats;
      const CompletionRecord completion =
          complete(prompt, config_.params, *res_.completion, {res_.cache, res_.retry, &stats});
      rec.raw_completion = completion.completion;
      rec.usage = completion.usage;
      log(entry, "completion", completion, stats);

      CleanText clean = postprocess(completion.completion);
      if (is_pivot(config_.variant)) {
        CallStats tstats;
        const CompletionRecord translation = translate_record(clean.text, lang::kEnglish, config_.target_language,
                                                              *res_.translation, {res_.cache, res_.retry, &tstats});
        log(entry, "translation", translation, tstats);
        rec.english_clean = std::move(clean);
        rec.raw_translation = translation.completion;
        rec.translation_usage = translation.usage;
        rec.final_text = postprocess(translation.completion);
      } else {
        rec.final_text = std::move(clean);
      }
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::kIo) throw;
      rec.final_text.reset();
      rec.error = GenerationError{std::string(error_kind_name(e.kind())), e.what()};
    }
    return rec;
  }

 private:
  void log(const Entry& entry, const char* kind, const CompletionRecord& r, const CallStats& stats) const {
    if (ledger_ == nullptr) return;
    ledger_->append({std::string(variant_name(config_.variant)), config_.target_language.str(), entry.id, kind,
                     r.backend_id, r.usage, stats.cache_hit});
  }

  const RunConfig& config_;
  const RunResources& res_;
  const PromptSpec& spec_;
  LedgerLog* ledger_;
};

}  // namespace

std::string_view variant_name(SystemVariant v) {
  switch (v) {
    case SystemVariant::kDirectZeroShot: return "direct_zero_shot";
    case SystemVariant::kDirectFewShot: return "direct_few_shot";
    case SystemVariant::kPivotZeroShot: return "pivot_zero_shot";
    case SystemVariant::kPivotFewShot: return "pivot_few_shot";
  }
  return "direct_zero_shot";
}

std::optional<SystemVariant> parse_variant(std::string_view name) {
  for (const auto v : kAllVariants) {
    if (variant_name(v) == name) return v;
  }
  return std::nullopt;
}

bool is_pivot(SystemVariant v) {
  return v == SystemVariant::kPivotZeroShot || v == SystemVariant::kPivotFewShot;
}

PromptMode prompt_mode(SystemVariant v) {
  return (v == SystemVariant::kDirectFewShot || v == SystemVariant::kPivotFewShot) ? PromptMode::kFewShot
                                                                                   : PromptMode::kZeroShot;
}

std::string variant_label(SystemVariant v, const LanguageCode& target) {
  const std::string shots = prompt_mode(v) == PromptMode::kFewShot ? "Few-Shot " : "Zero-Shot ";
  return is_pivot(v) ? shots + "English + MT" : shots + display_name(target);
}

SampleSpec SampleSpec::parse(std::string_view text) {
  if (text == "full" || text.empty()) return {};
  const auto colon = text.find(':');
  try {
    SampleSpec s;
    s.full = false;
    std::size_t used = 0;
    const std::string n(text.substr(0, colon));
    s.n = std::stoul(n, &used);
    if (used != n.size()) throw std::invalid_argument(n);
    if (colon != std::string_view::npos) {
      const std::string seed(text.substr(colon + 1));
      s.seed = std::stoull(seed, &used);
      if (used != seed.size()) throw std::invalid_argument(seed);
    }
    return s;
  } catch (const std::exception&) {
    throw Error(ErrorKind::kConfig, "sample must be 'full' or 'n:seed', got '" + std::string(text) + "'");
  }
}

std::string SampleSpec::to_string() const {
  return full ? "full" : std::to_string(n) + ":" + std::to_string(seed);
}

ordered_json to_json(const RunConfig& c) {
  ordered_json j;
  j["variant"] = variant_name(c.variant);
  j["language"] = c.target_language.str();
  j["corpus"] = {{"path", c.corpus_path.string()},
                 {"format", corpus_format_name(c.corpus_format)},
                 {"split", split_name(c.split)}};
  j["completion_backend"] = c.completion_backend;
  j["decoding"] = to_json(c.params);
  j["translation_backend"] = c.translation_backend;
  j["example_set"] = c.example_set;
  j["quoting"] = c.quoting == Quoting::kTripleQuotes ? "triple_quotes" : "none";
  j["sample"] = c.sample.to_string();
  j["output_dir"] = c.output_dir.string();
  j["parallelism"] = c.parallelism;
  j["metrics"] = {{"lowercase", c.metrics.bleu.lowercase}};
  return j;
}

RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig c;
  c.variant = parse_variant(j.at("variant").get<std::string>()).value();
  c.target_language = LanguageCode(j.at("language").get<std::string>());
  const auto& corpus = j.at("corpus");
  c.corpus_path = corpus.at("path").get<std::string>();
  c.corpus_format = parse_corpus_format(corpus.at("format").get<std::string>()).value();
  c.split = parse_split(corpus.at("split").get<std::string>()).value();
  c.completion_backend = j.at("completion_backend").get<std::string>();
  c.params = decoding_params_from_json(j.at("decoding"));
  c.translation_backend = j.value("translation_backend", std::string());
  c.example_set = j.value("example_set", std::string("builtin"));
  c.quoting = j.value("quoting", std::string("triple_quotes")) == "none" ? Quoting::kNone : Quoting::kTripleQuotes;
  c.sample = SampleSpec::parse(j.value("sample", std::string("full")));
  c.output_dir = j.value("output_dir", std::string());
  c.parallelism = j.value("parallelism", std::size_t{1});
  if (j.contains("metrics")) c.metrics.set_case_folding(j.at("metrics").value("lowercase", false));
  return c;
}

ordered_json to_json(const GenerationRecord& r) {
  ordered_json j;
  j["entry_id"] = r.entry_id;
  j["variant"] = variant_name(r.variant);
  j["prompt"] = r.prompt;
  j["raw_completion"] = r.raw_completion;
  j["english_clean"] = r.english_clean ? to_json(*r.english_clean) : ordered_json(nullptr);
  j["raw_translation"] = r.raw_translation ? ordered_json(*r.raw_translation) : ordered_json(nullptr);
  j["final_text"] = r.final_text ? to_json(*r.final_text) : ordered_json(nullptr);
  j["usage"] = to_json(r.usage);
  j["translation_usage"] = r.translation_usage ? to_json(*r.translation_usage) : ordered_json(nullptr);
  j["error"] = r.error ? ordered_json{{"kind", r.error->kind}, {"message", r.error->message}} : ordered_json(nullptr);
  return j;
}

GenerationRecord generation_record_from_json(const nlohmann::json& j) {
  GenerationRecord r;
  r.entry_id = j.at("entry_id").get<std::string>();
  const auto variant = parse_variant(j.at("variant").get<std::string>());
  if (!variant) throw Error(ErrorKind::kParse, "unknown variant in record");
  r.variant = *variant;
  r.prompt = j.at("prompt").get<std::string>();
  r.raw_completion = j.at("raw_completion").get<std::string>();
  if (!j.at("english_clean").is_null()) r.english_clean = clean_text_from_json(j.at("english_clean"));
  if (!j.at("raw_translation").is_null()) r.raw_translation = j.at("raw_translation").get<std::string>();
  if (!j.at("final_text").is_null()) r.final_text = clean_text_from_json(j.at("final_text"));
  r.usage = usage_from_json(j.at("usage"));
  if (!j.at("translation_usage").is_null()) r.translation_usage = usage_from_json(j.at("translation_usage"));
  if (!j.at("error").is_null()) {
    r.error = GenerationError{j.at("error").at("kind").get<std::string>(), j.at("error").at("message").get<std::string>()};
  }
  return r;
}

ordered_json to_json(const RunManifest& m) {
  ordered_json j;
  j["config"] = m.config;
  j["corpus_checksum"] = m.corpus_checksum;
  j["completion_backend"] = m.completion_backend;
  j["completion_model"] = m.completion_model;
  j["translation_backend"] = m.translation_backend;
  j["started_at"] = m.started_at;
  j["finished_at"] = m.finished_at;
  j["complete"] = m.complete;
  j["n_records"] = m.n_records;
  j["n_errors"] = m.n_errors;
  j["cost_total"] = m.cost_total;
  j["record_index"] = m.record_index;
  return j;
}

RunManifest run_manifest_from_json(const nlohmann::json& j) {
  RunManifest m;
  m.config = j.at("config");
  m.corpus_checksum = j.at("corpus_checksum").get<std::string>();
  m.completion_backend = j.at("completion_backend").get<std::string>();
  m.completion_model = j.at("completion_model").get<std::string>();
  m.translation_backend = j.at("translation_backend").get<std::string>();
  m.started_at = j.at("started_at").get<std::string>();
  m.finished_at = j.at("finished_at").get<std::string>();
  m.complete = j.at("complete").get<bool>();
  m.n_records = j.at("n_records").get<std::size_t>();
  m.n_errors = j.at("n_errors").get<std::size_t>();
  m.cost_total = j.at("cost_total").get<double>();
  m.record_index = j.at("record_index").get<std::map<std::string, std::size_t>>();
  return m;
}

void check_run(const RunConfig& config, const RunResources& res) {
  if (res.corpus == nullptr) throw config_error(ErrorKind::kPrecondition, "run: no corpus loaded");
  if (res.completion == nullptr) {
    throw config_error(ErrorKind::kPrecondition, "run.completion_backend: no completion backend configured");
  }
  if (!LanguageRegistry::global().contains(config.target_language)) {
    throw config_error(ErrorKind::kPrecondition, "run.language: unregistered language '" +
                                                     config.target_language.str() + "'");
  }
  if (config.parallelism == 0) throw config_error(ErrorKind::kPrecondition, "run.parallelism: must be >= 1");
  if (is_pivot(config.variant)) {
    if (config.target_language == lang::kEnglish) {
      throw config_error(ErrorKind::kPrecondition, "run.language: pivot variants need a non-English target");
    }
    if (res.translation == nullptr) {
      throw config_error(ErrorKind::kPrecondition,
                         "run.translation_backend: pivot variants need a translation backend");
    }
    try {
      check_translation(lang::kEnglish, config.target_language, *res.translation);
    } catch (const Error& e) {
      throw config_error(e.kind(), std::string("run.language: ") + error_kind_name(e.kind()).data() + ": " + e.what());
    }
  }
  if (prompt_mode(config.variant) == PromptMode::kFewShot) {
    if (res.examples == nullptr) {
      throw config_error(ErrorKind::kNoDefaults, "run.example_set: few-shot variants need an example set");
    }
    const LanguageCode prompt_language = is_pivot(config.variant) ? lang::kEnglish : config.target_language;
    if (!res.examples->has(prompt_language)) {
      throw config_error(ErrorKind::kNoDefaults, "run.example_set: no examples for language '" +
                                                     prompt_language.str() + "'");
    }
  }
  if (!config.sample.full && config.sample.n > res.corpus->entries.size()) {
    throw config_error(ErrorKind::kSampleTooLarge, "run.sample: " + std::to_string(config.sample.n) +
                                                       " exceeds corpus size " +
                                                       std::to_string(res.corpus->entries.size()));
  }
}

std::vector<Entry> select_entries(const RunConfig& config, const Corpus& corpus) {
  if (config.sample.full) return corpus.entries;
  return stratified_sample(corpus, config.sample.n, config.sample.seed);
}

std::vector<Prompt> build_run_prompts(const RunConfig& config, const RunResources& res) {
  check_run(config, res);
  const PromptSpec spec = prompt_spec(config, res);
  std::vector<Prompt> prompts;
  for (const auto& entry : select_entries(config, *res.corpus)) prompts.push_back(build_prompt(entry, spec));
  return prompts;
}

RunResult run(const RunConfig& config, const RunResources& res) {
  check_run(config, res);
  const PromptSpec spec = prompt_spec(config, res);
  const std::vector<Entry> entries = select_entries(config, *res.corpus);

  RunResult result;
  RunManifest& m = result.manifest;
  m.config = to_json(config);
  m.corpus_checksum = corpus_checksum(config, *res.corpus);
  m.completion_backend = res.completion->id();
  m.completion_model = res.completion->model_id();
  m.translation_backend = is_pivot(config.variant) ? res.translation->id() : "";
  m.started_at = utc_timestamp();

  const bool persist = !config.output_dir.empty();
  std::optional<LedgerLog> ledger;
  std::ofstream records_out;
  const fs::path manifest_path = config.output_dir / "manifest.json";
  if (persist) {
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec) throw Error(ErrorKind::kIo, "cannot create " + config.output_dir.string() + ": " + ec.message());
    write_file(manifest_path, to_json(m).dump(2) + "\n");
    ledger.emplace(config.output_dir / "ledger.jsonl");
    records_out.open(config.output_dir / "records.jsonl", std::ios::binary | std::ios::trunc);
    if (!records_out) throw Error(ErrorKind::kIo, "cannot write records.jsonl in " + config.output_dir.string());
  }

  const EntryRunner runner(config, res, spec, ledger ? &*ledger : nullptr);
  try {
    for (std::size_t begin = 0; begin < entries.size(); begin += config.parallelism) {
      const std::size_t end = std::min(entries.size(), begin + config.parallelism);
      std::vector<GenerationRecord> chunk;
      if (end - begin == 1) {
        chunk.push_back(runner(entries[begin]));
      } else {
        std::vector<std::future<GenerationRecord>> futures;
        for (std::size_t i = begin; i < end; ++i) {
          futures.push_back(std::async(std::launch::async, [&runner, &entries, i] { return runner(entries[i]); }));
        }
        for (auto& f : futures) chunk.push_back(f.get());
      }
      for (auto& rec : chunk) {
        if (persist) {
          records_out << to_json(rec).dump() << '\n';
          records_out.flush();
          if (!records_out) throw Error(ErrorKind::kIo, "short write to records.jsonl");
        }
        m.record_index[rec.entry_id] = result.records.size();
        result.records.push_back(std::move(rec));
      }
    }
  } catch (const Error&) {
    if (persist) {
      m.finished_at = utc_timestamp();
      m.n_records = result.records.size();
      write_file(manifest_path, to_json(m).dump(2) + "\n");
    }
    throw;
  }

  for (const auto& rec : result.records) {
    if (rec.error) ++m.n_errors;
    m.cost_total += rec.usage.cost_estimate + (rec.translation_usage ? rec.translation_usage->cost_estimate : 0.0);
  }
  m.cost_total = round_currency(m.cost_total);
  m.n_records = result.records.size();
  m.finished_at = utc_timestamp();
  m.complete = true;

  if (persist) {
    records_out.close();
    ordered_json report;
    try {
      const RunEvaluation eval = evaluate_run(result.records, *res.corpus, config.target_language, config.metrics);
      report = nlohmann::ordered_json::parse(score_to_json(eval.score));
      report["excluded"] = eval.excluded;
    } catch (const Error& e) {
      report = {{"error", error_kind_name(e.kind())}, {"message", e.what()}};
    }
    write_file(config.output_dir / "report.json", report.dump(2) + "\n");
    write_file(manifest_path, to_json(m).dump(2) + "\n");
  }
  return result;
}

RunEvaluation evaluate_run(std::span<const GenerationRecord> records, const Corpus& corpus,
                           const LanguageCode& language, const MetricConfigs& configs) {
  RunEvaluation out;
  std::vector<SegmentPair> pairs;
  for (const auto& rec : records) {
    if (rec.error || !rec.final_text) {
      ++out.excluded;
      continue;
    }
    const Entry* entry = corpus.find(rec.entry_id);
    if (entry == nullptr) {
      throw Error(ErrorKind::kNoReferences, "entry '" + rec.entry_id + "' is not in the corpus");
    }
    const auto& refs = entry->references_in(language);
    if (refs.empty()) {
      throw Error(ErrorKind::kNoReferences,
                  "entry '" + rec.entry_id + "' has no references in '" + language.str() + "'");
    }
    pairs.push_back({rec.final_text->text, refs});
  }
  if (pairs.empty()) throw Error(ErrorKind::kEmptyInput, "no successful records to evaluate");
  out.score = evaluate_all(pairs, configs);
  return out;
}

std::vector<GenerationRecord> read_records(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  std::vector<GenerationRecord> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    try {
      out.push_back(generation_record_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::kParse, path.string() + ":line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

RunManifest read_manifest(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  try {
    return run_manifest_from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, path.string() + ": " + e.what());
  }
}

}  // namespace t2t

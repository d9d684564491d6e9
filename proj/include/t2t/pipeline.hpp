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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "t2t/backends.hpp"
#include "t2t/corpus.hpp"
#include "t2t/metrics.hpp"
#include "t2t/postprocess.hpp"
#include "t2t/promptgen.hpp"

namespace t2t {

enum class SystemVariant { kDirectZeroShot, kDirectFewShot, kPivotZeroShot, kPivotFewShot };

inline constexpr SystemVariant kAllVariants[] = {SystemVariant::kDirectZeroShot, SystemVariant::kDirectFewShot,
                                                 SystemVariant::kPivotZeroShot, SystemVariant::kPivotFewShot};

std::string_view variant_name(SystemVariant v);
std::optional<SystemVariant> parse_variant(std::string_view name);
bool is_pivot(SystemVariant v);
PromptMode prompt_mode(SystemVariant v);
// Row label in comparison tables, e.g. "Few-Shot English + MT".
std::string variant_label(SystemVariant v, const LanguageCode& target);

// Either the whole corpus or a stratified sample of n entries.
struct SampleSpec {
  bool full = true;
  std::size_t n = 0;
  std::uint64_t seed = 0;

  // "full" or "n:seed".
  static SampleSpec parse(std::string_view text);
  std::string to_string() const;
};

struct RunConfig {
  SystemVariant variant = SystemVariant::kDirectZeroShot;
  LanguageCode target_language = lang::kEnglish;
  std::filesystem::path corpus_path;
  CorpusFormat corpus_format = CorpusFormat::kJsonl;
  Split split = Split::kDev;
  std::string completion_backend;
  DecodingParams params;
  std::string translation_backend;  // pivot variants only
  std::string example_set = "builtin";  // few-shot variants only
  Quoting quoting = Quoting::kTripleQuotes;
  SampleSpec sample;
  std::filesystem::path output_dir;  // empty: nothing written
  std::size_t parallelism = 1;
  MetricConfigs metrics;
};

ordered_json to_json(const RunConfig& c);
RunConfig run_config_from_json(const nlohmann::json& j);

// Everything a run talks to. Backends and cache outlive the run.
struct RunResources {
  const Corpus* corpus = nullptr;
  CompletionBackend* completion = nullptr;
  TranslationBackend* translation = nullptr;
  const ExampleSet* examples = nullptr;
  ResponseCache* cache = nullptr;
  RetryPolicy retry;
};

struct GenerationError {
  std::string kind;
  std::string message;

  bool operator==(const GenerationError&) const = default;
};

struct GenerationRecord {
  std::string entry_id;
  SystemVariant variant = SystemVariant::kDirectZeroShot;
  std::string prompt;
  std::string raw_completion;
  std::optional<CleanText> english_clean;      // pivot only
  std::optional<std::string> raw_translation;  // pivot only
  std::optional<CleanText> final_text;         // absent iff error
  UsageRecord usage;
  std::optional<UsageRecord> translation_usage;
  std::optional<GenerationError> error;

  bool operator==(const GenerationRecord&) const = default;
};

ordered_json to_json(const GenerationRecord& r);
GenerationRecord generation_record_from_json(const nlohmann::json& j);

struct RunManifest {
  ordered_json config;
  std::string corpus_checksum;
  std::string completion_backend;
  std::string completion_model;
  std::string translation_backend;
  std::string started_at;
  std::string finished_at;
  bool complete = false;
  std::size_t n_records = 0;
  std::size_t n_errors = 0;
  double cost_total = 0.0;
  std::map<std::string, std::size_t> record_index;  // entry id -> line in records.jsonl
};

ordered_json to_json(const RunManifest& m);
RunManifest run_manifest_from_json(const nlohmann::json& j);

struct RunResult {
  std::vector<GenerationRecord> records;
  RunManifest manifest;
};

// Checks the config against the resources without calling any backend.
// Throws ConfigError (with the underlying cause, e.g. UnsupportedLanguage).
void check_run(const RunConfig& config, const RunResources& resources);

std::vector<Entry> select_entries(const RunConfig& config, const Corpus& corpus);

// The prompts a run would send, in corpus order, with no backend calls.
std::vector<Prompt> build_run_prompts(const RunConfig& config, const RunResources& resources);

// Prompt -> completion -> postprocess [-> translate -> postprocess] for
// every selected entry. Per-entry failures become error records. When
// output_dir is set, writes manifest.json, records.jsonl (incrementally),
// ledger.jsonl and report.json there.
RunResult run(const RunConfig& config, const RunResources& resources);

struct RunEvaluation {
  MetricScore score;
  std::size_t excluded = 0;  // errored records left out
};

RunEvaluation evaluate_run(std::span<const GenerationRecord> records, const Corpus& corpus,
                           const LanguageCode& language, const MetricConfigs& configs = {});

std::vector<GenerationRecord> read_records(const std::filesystem::path& path);
RunManifest read_manifest(const std::filesystem::path& path);

// ---- comparison tables ----

struct BaselineRow {
  LanguageCode language;
  std::string label;
  MetricScore score;
};

std::vector<BaselineRow> load_baselines(const std::filesystem::path& path);

struct ComparisonRow {
  std::string method;
  MetricScore score;
  bool is_baseline = false;
  bool best_bleu = false;
  bool best_chrf = false;
  bool best_ter = false;
};

struct LanguageBlock {
  LanguageCode language;
  std::vector<ComparisonRow> rows;
};

struct ComparisonTable {
  std::vector<LanguageBlock> blocks;
};

using ReportMap = std::map<std::pair<LanguageCode, SystemVariant>, MetricScore>;

// One block per language, variants in canonical order then the baseline;
// the best value per column per language is flagged (ties share the flag).
ComparisonTable compare(const ReportMap& reports, std::span<const BaselineRow> baselines = {});

std::string render_text(const ComparisonTable& table);
std::string render_csv(const ComparisonTable& table);
std::string render_json(const ComparisonTable& table);

}  // namespace t2t

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

#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>

#include "t2t/cache.hpp"
#include "t2t/config.hpp"
#include "t2t/corpus.hpp"
#include "t2t/error.hpp"
#include "t2t/ledger.hpp"
#include "t2t/pipeline.hpp"

namespace t2t::cli {

namespace {

namespace fs = std::filesystem;

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kIo:
    case ErrorKind::kConfig:
      return 2;
    default:
      return 1;
  }
}

CorpusFormat format_or_guess(const std::string& name, const fs::path& path) {
  if (name.empty()) return path.extension() == ".xml" ? CorpusFormat::kWebNlgXml : CorpusFormat::kJsonl;
  const auto f = parse_corpus_format(name);
  if (!f) throw Error(ErrorKind::kConfig, "--format: expected 'jsonl' or 'webnlg-xml', got '" + name + "'");
  return *f;
}

Split split_or_throw(const std::string& name) {
  const auto s = parse_split(name);
  if (!s) throw Error(ErrorKind::kConfig, "--split: expected 'train', 'dev' or 'test', got '" + name + "'");
  return *s;
}

struct CorpusArgs {
  std::string path;
  std::string format;
  std::string split = "dev";

  void add_to(CLI::App* cmd) {
    cmd->add_option("corpus", path, "Corpus file")->required();
    cmd->add_option("--format", format, "jsonl or webnlg-xml (default: by extension)");
    cmd->add_option("--split", split, "train, dev or test");
  }
};

int cmd_validate(const CorpusArgs& a, std::ostream& out) {
  const fs::path path(a.path);
  const Corpus corpus = parse_corpus(path, format_or_guess(a.format, path), split_or_throw(a.split));
  const auto violations = validate_corpus(corpus);
  for (const auto& v : violations) {
    out << (v.entry_id.empty() ? "<corpus>" : v.entry_id) << ": " << v.invariant << ": " << v.message << '\n';
  }
  out << violations.size() << (violations.size() == 1 ? " violation" : " violations") << " in "
      << corpus.entries.size() << " entries\n";
  return violations.empty() ? 0 : 1;
}

int cmd_sample(const CorpusArgs& a, std::size_t n, std::uint64_t seed, std::ostream& out) {
  const fs::path path(a.path);
  const Corpus corpus = load_corpus(path, format_or_guess(a.format, path), split_or_throw(a.split));
  for (const auto& e : stratified_sample(corpus, n, seed)) out << e.id << '\n';
  return 0;
}

struct RunArgs {
  std::string config;
  std::string variant;
  std::string lang;
  std::string backend;
  std::string translator;
  std::string sample;
  std::string out_dir;
  std::string examples;
  std::size_t parallelism = 0;
  bool dry_run = false;
  bool no_cache = false;
};

std::size_t count_lines(const fs::path& path) {
  std::ifstream in(path);
  return static_cast<std::size_t>(std::count(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>(), '\n'));
}

int cmd_run(const RunArgs& a, std::ostream& out) {
  CliConfig cfg = load_cli_config(a.config);
  RunConfig run = cfg.run;
  if (!a.variant.empty()) {
    const auto v = parse_variant(a.variant);
    if (!v) throw Error(ErrorKind::kConfig, "--variant: unknown variant '" + a.variant + "'");
    run.variant = *v;
  }
  if (!a.lang.empty()) run.target_language = LanguageCode(a.lang);
  if (!a.backend.empty()) run.completion_backend = a.backend;
  if (!a.translator.empty()) run.translation_backend = a.translator;
  if (!a.sample.empty()) {
    try {
      run.sample = SampleSpec::parse(a.sample);
    } catch (const Error& e) {
      throw Error(ErrorKind::kConfig, std::string("--sample: ") + e.what());
    }
  }
  if (!a.out_dir.empty()) run.output_dir = fs::absolute(a.out_dir);
  if (a.parallelism > 0) run.parallelism = a.parallelism;
  if (!a.examples.empty()) {
    cfg.examples = fs::absolute(a.examples);
    run.example_set = cfg.examples.string();
  }
  require_paths(cfg);

  const Corpus corpus = load_corpus(cfg.corpus, cfg.corpus_format, cfg.split);
  auto completion =
      make_completion_backend(find_backend(cfg, run.completion_backend, "run.completion_backend"));
  std::unique_ptr<TranslationBackend> translation;
  if (is_pivot(run.variant)) {
    translation = make_translation_backend(find_backend(cfg, run.translation_backend, "run.translation_backend"));
  } else {
    run.translation_backend.clear();
  }
  ExampleSet examples = cfg.examples.empty() ? ExampleSet::builtin() : ExampleSet::load(cfg.examples);
  if (prompt_mode(run.variant) == PromptMode::kZeroShot) run.example_set.clear();

  std::optional<ResponseCache> cache;
  if (!cfg.cache_dir.empty() && !a.no_cache && !a.dry_run) cache.emplace(cfg.cache_dir);

  RunResources res;
  res.corpus = &corpus;
  res.completion = completion.get();
  res.translation = translation.get();
  res.examples = &examples;
  res.cache = cache ? &*cache : nullptr;

  if (a.dry_run) {
    const auto prompts = build_run_prompts(run, res);
    for (std::size_t i = 0; i < prompts.size(); ++i) {
      if (i > 0) out << '\n';
      out << prompts[i].text << '\n';
    }
    return 0;
  }

  if (run.output_dir.empty()) throw Error(ErrorKind::kConfig, "paths.output_dir: missing (or pass --out)");
  const fs::path ledger_path = run.output_dir / "ledger.jsonl";
  const std::size_t ledger_before = count_lines(ledger_path);
  const RunResult result = t2t::run(run, res);

  const std::vector<fs::path> paths{ledger_path};
  auto entries = LedgerLog::read(paths);
  entries.erase(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(std::min(ledger_before, entries.size())));
  out << "manifest: " << (run.output_dir / "manifest.json").string() << '\n';
  out << "records: " << result.manifest.n_records << " (" << result.manifest.n_errors << " errors)\n";
  out << render_ledger(summarize(entries));
  return 0;
}

struct ReportArgs {
  std::vector<std::string> run_dirs;
  std::string baselines;
  std::string format = "text";
  std::string corpus;
};

int cmd_report(const ReportArgs& a, std::ostream& out, std::ostream& err) {
  if (a.format != "text" && a.format != "json" && a.format != "csv") {
    throw Error(ErrorKind::kConfig, "--format: expected text, json or csv, got '" + a.format + "'");
  }
  ReportMap reports;
  for (const auto& dir_name : a.run_dirs) {
    const fs::path dir(dir_name);
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) throw Error(ErrorKind::kIo, "no such run directory: " + dir.string());
    const RunManifest manifest = read_manifest(dir / "manifest.json");
    const RunConfig config = run_config_from_json(manifest.config);
    const fs::path corpus_path = a.corpus.empty() ? config.corpus_path : fs::path(a.corpus);
    const Corpus corpus = load_corpus(corpus_path, config.corpus_format, config.split);
    const auto records = read_records(dir / "records.jsonl");
    const RunEvaluation eval = evaluate_run(records, corpus, config.target_language, config.metrics);
    if (eval.excluded > 0) {
      err << dir.string() << ": " << eval.excluded << " failed records excluded from scoring\n";
    }
    if (!manifest.complete) err << dir.string() << ": run did not complete\n";
    if (!reports.emplace(std::pair{config.target_language, config.variant}, eval.score).second) {
      err << dir.string() << ": duplicate " << variant_name(config.variant) << "/" << config.target_language.str()
          << " run ignored\n";
    }
  }
  std::vector<BaselineRow> baselines;
  if (!a.baselines.empty()) baselines = load_baselines(a.baselines);
  const ComparisonTable table = compare(reports, baselines);
  if (a.format == "json") {
    out << render_json(table);
  } else if (a.format == "csv") {
    out << render_csv(table);
  } else {
    out << render_text(table);
  }
  return 0;
}

fs::path cache_dir_from(const std::string& dir, const std::string& config) {
  if (!dir.empty()) return dir;
  if (!config.empty()) {
    const CliConfig cfg = load_cli_config(config);
    if (!cfg.cache_dir.empty()) return cfg.cache_dir;
  }
  throw Error(ErrorKind::kConfig, "paths.cache_dir: missing (pass --dir or a config with a cache)");
}

bool is_hex_key(const std::string& s) {
  return s.size() == 64 && std::all_of(s.begin(), s.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

int cmd_cache_ls(const fs::path& dir, std::ostream& out) {
  const ResponseCache cache(dir);
  std::size_t corrupt = 0;
  for (const auto& key : cache.keys()) {
    try {
      const auto rec = cache.lookup(key);
      out << key.hex << '\t' << (rec ? rec->backend_id + '\t' + rec->model_id : std::string("?\t?")) << '\n';
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kCacheCorrupt) throw;
      ++corrupt;
      out << key.hex << "\tcorrupt\n";
    }
  }
  return corrupt > 0 ? 1 : 0;
}

int cmd_cache_rm(const fs::path& dir, const std::vector<std::string>& keys, bool all, std::ostream& out,
                 std::ostream& err) {
  ResponseCache cache(dir);
  if (all) {
    out << "removed " << cache.clear() << " entries\n";
    return 0;
  }
  if (keys.empty()) throw Error(ErrorKind::kConfig, "cache rm: give keys or --all");
  int status = 0;
  for (const auto& k : keys) {
    if (!is_hex_key(k)) throw Error(ErrorKind::kConfig, "cache rm: not a cache key: '" + k + "'");
    if (cache.remove(CacheKey{k})) {
      out << "removed " << k << '\n';
    } else {
      err << "no entry " << k << '\n';
      status = 1;
    }
  }
  return status;
}

int cmd_ledger(const std::vector<std::string>& inputs, const std::string& format, std::ostream& out) {
  std::vector<fs::path> paths;
  for (const auto& p : inputs) {
    std::error_code ec;
    const fs::path path(p);
    paths.push_back(fs::is_directory(path, ec) ? path / "ledger.jsonl" : path);
    if (!fs::exists(paths.back(), ec)) throw Error(ErrorKind::kIo, "no ledger at " + paths.back().string());
  }
  const LedgerSummary s = summarize(LedgerLog::read(paths));
  if (format == "json") {
    ordered_json j{{"total", s.total},           {"spent", s.spent},           {"calls", s.calls},
                   {"cache_hits", s.cache_hits}, {"by_variant", s.by_variant}, {"by_language", s.by_language}};
    out << j.dump(2) << '\n';
  } else if (format == "text") {
    out << render_ledger(s);
  } else {
    throw Error(ErrorKind::kConfig, "--format: expected text or json, got '" + format + "'");
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generate text from RDF triples with an LLM and score it", "t2t"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every command");

  CorpusArgs validate_args;
  auto* validate = app.add_subcommand("validate", "Check a corpus against every entry invariant");
  validate_args.add_to(validate);

  CorpusArgs sample_args;
  std::size_t sample_n = 0;
  std::uint64_t sample_seed = 0;
  auto* sample = app.add_subcommand("sample", "Print a stratified sample of entry ids");
  sample_args.add_to(sample);
  sample->add_option("-n,--n", sample_n, "Sample size")->required();
  sample->add_option("--seed", sample_seed, "Random seed");

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Generate text for a corpus under one system variant");
  run->add_option("-c,--config", run_args.config, "Configuration file")->required();
  run->add_option("--variant", run_args.variant,
                  "direct_zero_shot, direct_few_shot, pivot_zero_shot or pivot_few_shot");
  run->add_option("--lang", run_args.lang, "Target language code");
  run->add_option("--backend", run_args.backend, "Completion backend id");
  run->add_option("--translator", run_args.translator, "Translation backend id");
  run->add_option("--sample", run_args.sample, "full or n:seed");
  run->add_option("--out", run_args.out_dir, "Run directory");
  run->add_option("--examples", run_args.examples, "Few-shot examples file (JSONL entries)");
  run->add_option("--parallelism", run_args.parallelism, "Concurrent requests");
  run->add_flag("--dry-run", run_args.dry_run, "Print the prompts and exit without calling any backend");
  run->add_flag("--no-cache", run_args.no_cache, "Ignore the response cache");

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "Score runs and print a comparison table");
  report->add_option("runs", report_args.run_dirs, "Run directories")->required();
  report->add_option("--baselines", report_args.baselines, "Baseline rows (JSON)");
  report->add_option("--format", report_args.format, "text, json or csv");
  report->add_option("--corpus", report_args.corpus, "Score against this corpus instead of the manifest's");

  std::string cache_dir, cache_config;
  std::vector<std::string> rm_keys;
  bool rm_all = false;
  auto* cache = app.add_subcommand("cache", "Inspect or prune the response cache");
  cache->require_subcommand(1);
  cache->add_option("--dir", cache_dir, "Cache directory");
  cache->add_option("-c,--config", cache_config, "Take the cache directory from this config");
  auto* cache_ls = cache->add_subcommand("ls", "List cached responses");
  auto* cache_rm = cache->add_subcommand("rm", "Remove cached responses");
  cache_rm->add_option("keys", rm_keys, "Cache keys");
  cache_rm->add_flag("--all", rm_all, "Remove every entry");

  std::vector<std::string> ledger_inputs;
  std::string ledger_format = "text";
  auto* ledger = app.add_subcommand("ledger", "Sum recorded API usage");
  ledger->add_option("inputs", ledger_inputs, "Run directories or ledger files")->required();
  ledger->add_option("--format", ledger_format, "text or json");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(validate_args, out);
    if (*sample) return cmd_sample(sample_args, sample_n, sample_seed, out);
    if (*run) return cmd_run(run_args, out);
    if (*report) return cmd_report(report_args, out, err);
    if (*cache) {
      const fs::path dir = cache_dir_from(cache_dir, cache_config);
      if (*cache_ls) return cmd_cache_ls(dir, out);
      if (*cache_rm) return cmd_cache_rm(dir, rm_keys, rm_all, out, err);
    }
    if (*ledger) return cmd_ledger(ledger_inputs, ledger_format, out);
  } catch (const Error& e) {
    err << "error: " << error_kind_name(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace t2t::cli

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

#include "t2t/config.hpp"

#include <fstream>
#include <initializer_list>

#include "t2t/error.hpp"
#include "t2t/http_backends.hpp"
#include "t2t/replay_backends.hpp"

namespace t2t {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw Error(ErrorKind::kConfig, field + ": " + what);
}

std::string join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

// A JSON object whose keys must all be in `allowed`.
class Section {
 public:
  Section(const nlohmann::json& j, std::string path, std::initializer_list<std::string_view> allowed)
      : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_.empty() ? "<root>" : path_, "expected an object");
    for (const auto& [key, value] : j_.items()) {
      bool ok = false;
      for (auto a : allowed) ok = ok || a == key;
      if (!ok) fail(join(path_, key), "unknown key");
    }
  }

  bool has(const std::string& key) const { return j_.contains(key); }
  const nlohmann::json& at(const std::string& key) const { return j_.at(key); }
  std::string field(const std::string& key) const { return join(path_, key); }

  std::string str(const std::string& key, std::string fallback = {}) const {
    if (!has(key)) return fallback;
    if (!j_.at(key).is_string()) fail(field(key), "expected a string");
    return j_.at(key).get<std::string>();
  }

  std::string required_str(const std::string& key) const {
    if (!has(key)) fail(field(key), "missing");
    return str(key);
  }

  double number(const std::string& key, double fallback) const {
    if (!has(key)) return fallback;
    if (!j_.at(key).is_number()) fail(field(key), "expected a number");
    return j_.at(key).get<double>();
  }

  std::int64_t integer(const std::string& key, std::int64_t fallback) const {
    if (!has(key)) return fallback;
    if (!j_.at(key).is_number_integer()) fail(field(key), "expected an integer");
    return j_.at(key).get<std::int64_t>();
  }

  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    if (!j_.at(key).is_boolean()) fail(field(key), "expected true or false");
    return j_.at(key).get<bool>();
  }

 private:
  const nlohmann::json& j_;
  std::string path_;
};

fs::path resolve(const fs::path& base, const std::string& p) {
  if (p.empty()) return {};
  const fs::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

std::optional<BackendKind> parse_backend_kind(std::string_view name) {
  for (auto k : {BackendKind::kHttpCompletion, BackendKind::kReplayCompletion, BackendKind::kEcho,
                 BackendKind::kHttpTranslation, BackendKind::kReplayTranslation}) {
    if (backend_kind_name(k) == name) return k;
  }
  return std::nullopt;
}

UnitPrices parse_prices(const nlohmann::json& j, const std::string& path) {
  const Section s(j, path, {"prompt_per_1k", "completion_per_1k", "per_character"});
  UnitPrices p;
  p.prompt_per_1k = s.number("prompt_per_1k", 0.0);
  p.completion_per_1k = s.number("completion_per_1k", 0.0);
  p.per_character = s.number("per_character", 0.0);
  if (p.prompt_per_1k < 0 || p.completion_per_1k < 0 || p.per_character < 0) fail(path, "prices must be >= 0");
  return p;
}

BackendSpec parse_backend(const std::string& id, const nlohmann::json& j, const std::string& path,
                          const fs::path& base) {
  const Section s(j, path,
                  {"kind", "endpoint", "path", "model", "prices", "fixture", "languages", "api_key_env", "timeout"});
  BackendSpec b;
  b.id = id;
  const std::string kind = s.required_str("kind");
  const auto parsed = parse_backend_kind(kind);
  if (!parsed) fail(s.field("kind"), "unknown backend kind '" + kind + "'");
  b.kind = *parsed;
  b.endpoint = s.str("endpoint");
  b.path = s.str("path");
  b.model = s.str("model");
  b.api_key_env = s.str("api_key_env");
  b.timeout_seconds = static_cast<int>(s.integer("timeout", 0));
  if (s.has("prices")) b.prices = parse_prices(s.at("prices"), s.field("prices"));
  b.fixture = resolve(base, s.str("fixture"));
  if (s.has("languages")) {
    if (!is_translation_kind(b.kind)) fail(s.field("languages"), "only translation backends take languages");
    const auto& langs = s.at("languages");
    if (!langs.is_array()) fail(s.field("languages"), "expected an array of language codes");
    std::set<LanguageCode> codes;
    for (const auto& l : langs) {
      if (!l.is_string()) fail(s.field("languages"), "expected an array of language codes");
      codes.insert(LanguageCode(l.get<std::string>()));
    }
    b.languages = std::move(codes);
  }

  switch (b.kind) {
    case BackendKind::kHttpCompletion:
      if (b.endpoint.empty()) fail(s.field("endpoint"), "missing");
      if (b.model.empty()) fail(s.field("model"), "missing");
      break;
    case BackendKind::kHttpTranslation:
      if (b.endpoint.empty()) fail(s.field("endpoint"), "missing");
      break;
    case BackendKind::kReplayCompletion:
    case BackendKind::kReplayTranslation:
      if (b.fixture.empty()) fail(s.field("fixture"), "missing");
      break;
    case BackendKind::kEcho:
      break;
  }
  return b;
}

void parse_run(const nlohmann::json& j, RunConfig& run) {
  const Section s(j, "run",
                  {"variant", "language", "completion_backend", "translation_backend", "quoting", "sample",
                   "parallelism"});
  if (s.has("variant")) {
    const auto v = parse_variant(s.str("variant"));
    if (!v) fail(s.field("variant"), "unknown variant '" + s.str("variant") + "'");
    run.variant = *v;
  }
  if (s.has("language")) run.target_language = LanguageCode(s.str("language"));
  run.completion_backend = s.str("completion_backend", run.completion_backend);
  run.translation_backend = s.str("translation_backend", run.translation_backend);
  if (s.has("quoting")) {
    const std::string q = s.str("quoting");
    if (q == "triple_quotes") {
      run.quoting = Quoting::kTripleQuotes;
    } else if (q == "none") {
      run.quoting = Quoting::kNone;
    } else {
      fail(s.field("quoting"), "expected 'triple_quotes' or 'none'");
    }
  }
  if (s.has("sample")) {
    try {
      run.sample = SampleSpec::parse(s.str("sample"));
    } catch (const Error& e) {
      fail(s.field("sample"), e.what());
    }
  }
  const auto par = s.integer("parallelism", 1);
  if (par < 1) fail(s.field("parallelism"), "must be >= 1");
  run.parallelism = static_cast<std::size_t>(par);
}

void parse_defaults(const nlohmann::json& j, RunConfig& run) {
  const Section s(j, "defaults", {"decoding", "metrics"});
  if (s.has("decoding")) {
    try {
      run.params = decoding_params_from_json(s.at("decoding"));
    } catch (const Error& e) {
      fail(s.field("decoding"), e.what());
    } catch (const nlohmann::json::exception& e) {
      fail(s.field("decoding"), e.what());
    }
  }
  if (s.has("metrics")) {
    const Section m(s.at("metrics"), s.field("metrics"), {"lowercase"});
    run.metrics.set_case_folding(m.boolean("lowercase", false));
  }
}

}  // namespace

std::string_view backend_kind_name(BackendKind kind) {
  switch (kind) {
    case BackendKind::kHttpCompletion: return "http-completion";
    case BackendKind::kReplayCompletion: return "replay-completion";
    case BackendKind::kEcho: return "echo";
    case BackendKind::kHttpTranslation: return "http-translation";
    case BackendKind::kReplayTranslation: return "replay-translation";
  }
  return "echo";
}

bool is_translation_kind(BackendKind kind) {
  return kind == BackendKind::kHttpTranslation || kind == BackendKind::kReplayTranslation;
}

CliConfig parse_cli_config(const nlohmann::json& doc, const fs::path& base_dir) {
  const Section root(doc, "", {"paths", "backends", "run", "defaults"});
  CliConfig c;
  if (root.has("paths")) {
    const Section p(root.at("paths"), "paths",
                    {"corpus", "corpus_format", "split", "cache_dir", "output_dir", "examples"});
    c.corpus = resolve(base_dir, p.str("corpus"));
    if (p.has("corpus_format")) {
      const auto f = parse_corpus_format(p.str("corpus_format"));
      if (!f) fail(p.field("corpus_format"), "expected 'jsonl' or 'webnlg-xml'");
      c.corpus_format = *f;
    }
    if (p.has("split")) {
      const auto s = parse_split(p.str("split"));
      if (!s) fail(p.field("split"), "expected 'train', 'dev' or 'test'");
      c.split = *s;
    }
    c.cache_dir = resolve(base_dir, p.str("cache_dir"));
    c.output_dir = resolve(base_dir, p.str("output_dir"));
    c.examples = resolve(base_dir, p.str("examples"));
  }
  if (root.has("backends")) {
    const auto& backends = root.at("backends");
    if (!backends.is_object()) fail("backends", "expected an object");
    for (const auto& [id, spec] : backends.items()) {
      c.backends.emplace(id, parse_backend(id, spec, "backends." + id, base_dir));
    }
  }
  if (root.has("run")) parse_run(root.at("run"), c.run);
  if (root.has("defaults")) parse_defaults(root.at("defaults"), c.run);

  c.run.corpus_path = c.corpus;
  c.run.corpus_format = c.corpus_format;
  c.run.split = c.split;
  c.run.output_dir = c.output_dir;
  c.run.example_set = c.examples.empty() ? "builtin" : c.examples.string();
  return c;
}

CliConfig load_cli_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read config " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kConfig, ErrorKind::kParse, path.string() + ": " + e.what());
  }
  CliConfig c = parse_cli_config(doc, path.parent_path());
  c.source = path;
  return c;
}

void require_paths(const CliConfig& config) {
  std::error_code ec;
  if (config.corpus.empty()) fail("paths.corpus", "missing");
  if (!fs::exists(config.corpus, ec)) fail("paths.corpus", "no such file " + config.corpus.string());
  if (!config.examples.empty() && !fs::exists(config.examples, ec)) {
    fail("paths.examples", "no such file " + config.examples.string());
  }
  for (const auto& [id, b] : config.backends) {
    if (!b.fixture.empty() && !fs::exists(b.fixture, ec)) {
      fail("backends." + id + ".fixture", "no such file " + b.fixture.string());
    }
  }
}

const BackendSpec& find_backend(const CliConfig& config, const std::string& id, const std::string& field) {
  if (id.empty()) fail(field, "no backend selected");
  const auto it = config.backends.find(id);
  if (it == config.backends.end()) fail(field, "unknown backend '" + id + "'");
  return it->second;
}

std::unique_ptr<CompletionBackend> make_completion_backend(const BackendSpec& spec) {
  switch (spec.kind) {
    case BackendKind::kHttpCompletion: {
      HttpCompletionConfig c;
      c.id = spec.id;
      c.endpoint = spec.endpoint;
      if (!spec.path.empty()) c.path = spec.path;
      c.model = spec.model;
      c.prices = spec.prices;
      if (!spec.api_key_env.empty()) c.api_key_env = spec.api_key_env;
      if (spec.timeout_seconds > 0) c.timeout_seconds = spec.timeout_seconds;
      return std::make_unique<HttpCompletionBackend>(std::move(c));
    }
    case BackendKind::kReplayCompletion:
      return std::make_unique<ReplayCompletionBackend>(
          ReplayCompletionBackend::load(spec.fixture, spec.id, spec.model.empty() ? "replay" : spec.model, spec.prices));
    case BackendKind::kEcho:
      return std::make_unique<EchoCompletionBackend>(spec.id);
    default:
      fail("backends." + spec.id + ".kind", "'" + std::string(backend_kind_name(spec.kind)) +
                                                "' is not a completion backend");
  }
}

std::unique_ptr<TranslationBackend> make_translation_backend(const BackendSpec& spec) {
  switch (spec.kind) {
    case BackendKind::kHttpTranslation: {
      HttpTranslationConfig c;
      c.id = spec.id;
      c.endpoint = spec.endpoint;
      if (!spec.path.empty()) c.path = spec.path;
      if (!spec.model.empty()) c.model = spec.model;
      c.languages = spec.languages.value_or(default_translation_languages());
      c.prices = spec.prices;
      if (!spec.api_key_env.empty()) c.api_key_env = spec.api_key_env;
      if (spec.timeout_seconds > 0) c.timeout_seconds = spec.timeout_seconds;
      return std::make_unique<HttpTranslationBackend>(std::move(c));
    }
    case BackendKind::kReplayTranslation:
      return std::make_unique<ReplayTranslationBackend>(ReplayTranslationBackend::load(
          spec.fixture, spec.id, spec.languages.value_or(default_translation_languages()), spec.prices));
    default:
      fail("backends." + spec.id + ".kind", "'" + std::string(backend_kind_name(spec.kind)) +
                                                "' is not a translation backend");
  }
}

}  // namespace t2t

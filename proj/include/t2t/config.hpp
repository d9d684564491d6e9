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

// The single structured configuration file behind the CLI. Secrets never
// live here: live backends read their keys from the environment.

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>

#include "t2t/backends.hpp"
#include "t2t/pipeline.hpp"

namespace t2t {

enum class BackendKind { kHttpCompletion, kReplayCompletion, kEcho, kHttpTranslation, kReplayTranslation };

std::string_view backend_kind_name(BackendKind kind);
bool is_translation_kind(BackendKind kind);

struct BackendSpec {
  std::string id;
  BackendKind kind = BackendKind::kEcho;
  std::string endpoint;
  std::string path;  // request path for http kinds
  std::string model;
  UnitPrices prices;
  std::filesystem::path fixture;  // replay kinds
  std::optional<std::set<LanguageCode>> languages;  // translation kinds
  std::string api_key_env;
  int timeout_seconds = 0;
};

struct CliConfig {
  std::filesystem::path source;  // the file this came from, if any
  std::filesystem::path corpus;
  CorpusFormat corpus_format = CorpusFormat::kJsonl;
  Split split = Split::kDev;
  std::filesystem::path cache_dir;  // empty: no cache
  std::filesystem::path output_dir;
  std::filesystem::path examples;  // empty: built-in examples
  std::map<std::string, BackendSpec> backends;
  RunConfig run;  // defaults for `run`; corpus fields mirror the above
};

// Relative paths resolve against `base_dir`. Unknown keys and bad values
// raise ConfigError naming the field, e.g. "backends.gpt.prices.per_1k".
CliConfig parse_cli_config(const nlohmann::json& doc, const std::filesystem::path& base_dir);
CliConfig load_cli_config(const std::filesystem::path& path);

// ConfigError when a path the config references does not exist.
void require_paths(const CliConfig& config);

const BackendSpec& find_backend(const CliConfig& config, const std::string& id, const std::string& field);
std::unique_ptr<CompletionBackend> make_completion_backend(const BackendSpec& spec);
std::unique_ptr<TranslationBackend> make_translation_backend(const BackendSpec& spec);

}  // namespace t2t

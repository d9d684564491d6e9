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

// Offline backends: fixture replay for completions and translations, and an
// echo backend for smoke tests. None of them performs I/O after loading.

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "t2t/backends.hpp"

namespace t2t {

// Languages the default machine translation service covers (no Breton).
std::set<LanguageCode> default_translation_languages();

// Fixture JSONL lines: {"prompt", "params"?, "completion", "usage"?}.
// A fixture without params answers the prompt under any parameters.
class ReplayCompletionBackend : public CompletionBackend {
 public:
  ReplayCompletionBackend(std::string id, std::string model_id, UnitPrices prices = {});

  static ReplayCompletionBackend load(const std::filesystem::path& path, std::string id, std::string model_id,
                                      UnitPrices prices = {});

  void add(std::string prompt, std::optional<DecodingParams> params, std::string completion,
           std::size_t prompt_tokens = 0, std::size_t completion_tokens = 0);
  std::size_t size() const { return fixtures_.size(); }

  std::string id() const override { return id_; }
  std::string model_id() const override { return model_id_; }
  BackendResponse complete(std::string_view prompt, const DecodingParams& params) override;

 private:
  struct Fixture {
    std::string completion;
    std::size_t prompt_tokens;
    std::size_t completion_tokens;
  };

  std::string id_;
  std::string model_id_;
  UnitPrices prices_;
  // Keyed by prompt + "\n\x1f" + canonical params ("" for any params).
  std::map<std::string, Fixture> fixtures_;
};

// Returns the last line of the prompt.
class EchoCompletionBackend : public CompletionBackend {
 public:
  explicit EchoCompletionBackend(std::string id = "echo") : id_(std::move(id)) {}

  std::string id() const override { return id_; }
  std::string model_id() const override { return "echo"; }
  BackendResponse complete(std::string_view prompt, const DecodingParams& params) override;

 private:
  std::string id_;
};

// Fixture JSONL lines: {"text", "source", "target", "translation"}.
class ReplayTranslationBackend : public TranslationBackend {
 public:
  explicit ReplayTranslationBackend(std::string id, std::set<LanguageCode> languages = default_translation_languages(),
                                    UnitPrices prices = {});

  static ReplayTranslationBackend load(const std::filesystem::path& path, std::string id,
                                       std::set<LanguageCode> languages = default_translation_languages(),
                                       UnitPrices prices = {});

  void add(std::string text, const LanguageCode& source, const LanguageCode& target, std::string translation);
  std::size_t size() const { return fixtures_.size(); }

  std::string id() const override { return id_; }
  bool supports(const LanguageCode& source, const LanguageCode& target) const override;
  BackendResponse translate(std::string_view text, const LanguageCode& source, const LanguageCode& target) override;

 private:
  std::string id_;
  std::set<LanguageCode> languages_;
  UnitPrices prices_;
  std::map<std::string, std::string> fixtures_;
};

}  // namespace t2t

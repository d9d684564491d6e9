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

// Live backends over HTTP JSON APIs. API keys come from the environment
// only; a missing key surfaces as AuthError on the first request, so
// configuring a live backend never requires credentials by itself.

#include <set>
#include <string>

#include "t2t/backends.hpp"

namespace t2t {

struct HttpCompletionConfig {
  std::string id = "completion";
  std::string endpoint;  // scheme://host[:port]
  std::string path = "/v1/completions";
  std::string model;
  UnitPrices prices;
  std::string api_key_env = "T2T_COMPLETION_KEY";
  int timeout_seconds = 120;
};

// POST {model, prompt, temperature, top_p, frequency_penalty,
// presence_penalty, best_of, max_tokens}; reads choices[0].text and usage.
class HttpCompletionBackend : public CompletionBackend {
 public:
  explicit HttpCompletionBackend(HttpCompletionConfig config) : config_(std::move(config)) {}

  std::string id() const override { return config_.id; }
  std::string model_id() const override { return config_.model; }
  bool live() const override { return true; }
  BackendResponse complete(std::string_view prompt, const DecodingParams& params) override;

 private:
  HttpCompletionConfig config_;
};

struct HttpTranslationConfig {
  std::string id = "translation";
  std::string endpoint;
  std::string path = "/language/translate/v2";
  std::string model = "nmt";
  std::set<LanguageCode> languages;
  UnitPrices prices;
  std::string api_key_env = "T2T_TRANSLATE_KEY";
  int timeout_seconds = 60;
};

// POST {q, source, target, format: "text"} with ?key=; reads
// data.translations[0].translatedText.
class HttpTranslationBackend : public TranslationBackend {
 public:
  explicit HttpTranslationBackend(HttpTranslationConfig config) : config_(std::move(config)) {}

  std::string id() const override { return config_.id; }
  std::string model_id() const override { return config_.model; }
  bool live() const override { return true; }
  bool supports(const LanguageCode& source, const LanguageCode& target) const override;
  BackendResponse translate(std::string_view text, const LanguageCode& source, const LanguageCode& target) override;

 private:
  HttpTranslationConfig config_;
};

}  // namespace t2t

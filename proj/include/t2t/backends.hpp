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

#include <chrono>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "t2t/language.hpp"
#include "t2t/promptgen.hpp"

namespace t2t {

using ordered_json = nlohmann::ordered_json;

// Completion request parameters; defaults are the ones every run uses.
struct DecodingParams {
  double temperature = 0.0;
  double top_p = 1.0;
  double frequency_penalty = 0.0;
  double presence_penalty = 0.0;
  int best_of = 1;
  int max_length = 500;

  bool operator==(const DecodingParams&) const = default;

  // Fixed field order and number formatting; feeds cache keys.
  std::string canonical() const;
};

ordered_json to_json(const DecodingParams& p);
DecodingParams decoding_params_from_json(const nlohmann::json& j);

// Prices per 1000 tokens (completion backends) or per character
// (translation backends, billed on input characters).
struct UnitPrices {
  double prompt_per_1k = 0.0;
  double completion_per_1k = 0.0;
  double per_character = 0.0;
};

struct UsageRecord {
  std::size_t prompt_tokens = 0;
  std::size_t completion_tokens = 0;
  double cost_estimate = 0.0;

  bool operator==(const UsageRecord&) const = default;
};

UsageRecord price_tokens(std::size_t prompt_tokens, std::size_t completion_tokens, const UnitPrices& prices);
UsageRecord price_characters(std::size_t characters, const UnitPrices& prices);

ordered_json to_json(const UsageRecord& u);
UsageRecord usage_from_json(const nlohmann::json& j);

struct CompletionRecord {
  std::string backend_id;
  std::string model_id;
  std::string prompt;
  DecodingParams params;
  std::string completion;  // raw, never postprocessed
  UsageRecord usage;
  std::string timestamp;   // ISO-8601 UTC

  bool operator==(const CompletionRecord&) const = default;
};

ordered_json to_json(const CompletionRecord& r);
CompletionRecord completion_record_from_json(const nlohmann::json& j);

struct CacheKey {
  std::string hex;

  bool operator==(const CacheKey&) const = default;
};

CacheKey cache_key(std::string_view backend_id, std::string_view model_id, std::string_view prompt,
                   const DecodingParams& params);
CacheKey cache_key(const CompletionRecord& record);

std::string utc_timestamp();

// What a backend hands back for one request.
struct BackendResponse {
  std::string text;
  UsageRecord usage;
};

class CompletionBackend {
 public:
  virtual ~CompletionBackend() = default;

  virtual std::string id() const = 0;
  virtual std::string model_id() const = 0;
  // Live backends talk to a remote service; only they are retried.
  virtual bool live() const { return false; }

  virtual BackendResponse complete(std::string_view prompt, const DecodingParams& params) = 0;
};

class TranslationBackend {
 public:
  virtual ~TranslationBackend() = default;

  virtual std::string id() const = 0;
  virtual std::string model_id() const { return id(); }
  virtual bool live() const { return false; }
  virtual bool supports(const LanguageCode& source, const LanguageCode& target) const = 0;

  virtual BackendResponse translate(std::string_view text, const LanguageCode& source,
                                    const LanguageCode& target) = 0;
};

struct RetryPolicy {
  int max_attempts = 5;
  std::chrono::milliseconds initial_delay{1000};
  double multiplier = 2.0;
  std::chrono::milliseconds max_delay{30000};
  // Replaced in tests to avoid real sleeping.
  std::function<void(std::chrono::milliseconds)> sleep;
};

class ResponseCache;

// Per-call bookkeeping filled in by complete()/translate().
struct CallStats {
  int attempts = 0;
  bool cache_hit = false;
  bool cache_corrupt = false;
};

struct CallContext {
  ResponseCache* cache = nullptr;
  RetryPolicy retry;
  CallStats* stats = nullptr;
};

// Cache first, then the backend (with bounded exponential backoff for live
// backends on RateLimited/TransportError); successful results are cached.
CompletionRecord complete(const Prompt& prompt, const DecodingParams& params, CompletionBackend& backend,
                          const CallContext& ctx = {});
CompletionRecord complete(std::string_view prompt_text, const DecodingParams& params,
                          CompletionBackend& backend, const CallContext& ctx = {});

// Translation as a cached record: prompt holds the source text, completion
// the translation, model_id encodes the language direction.
CompletionRecord translate_record(std::string_view text, const LanguageCode& source, const LanguageCode& target,
                                  TranslationBackend& backend, const CallContext& ctx = {});

std::string translate(std::string_view text, const LanguageCode& source, const LanguageCode& target,
                      TranslationBackend& backend, const CallContext& ctx = {});

// Throws Precondition for source == target and UnsupportedLanguage when the
// backend cannot handle the direction. Makes no backend call.
void check_translation(const LanguageCode& source, const LanguageCode& target,
                       const TranslationBackend& backend);

}  // namespace t2t

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

#include "t2t/backends.hpp"

#include <algorithm>
#include <cstdio>
#include <ctime>
#include <thread>

#include "t2t/cache.hpp"
#include "t2t/digest.hpp"
#include "t2t/error.hpp"

namespace t2t {

namespace {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename Call>
BackendResponse with_retry(bool live, const RetryPolicy& policy, CallStats* stats, Call&& call) {
  auto delay = policy.initial_delay;
  const int attempts = live ? std::max(1, policy.max_attempts) : 1;
  for (int attempt = 1;; ++attempt) {
    if (stats != nullptr) stats->attempts = attempt;
    try {
      return call();
    } catch (const Error& e) {
      if (!e.transient() || attempt >= attempts) throw;
    }
    if (policy.sleep) {
      policy.sleep(delay);
    } else {
      std::this_thread::sleep_for(delay);
    }
    delay = std::min(policy.max_delay,
                     std::chrono::milliseconds(static_cast<long long>(delay.count() * policy.multiplier)));
  }
}

std::optional<CompletionRecord> cached(const CacheKey& key, const CallContext& ctx) {
  if (ctx.cache == nullptr) return std::nullopt;
  try {
    auto hit = ctx.cache->lookup(key);
    if (hit && ctx.stats != nullptr) ctx.stats->cache_hit = true;
    return hit;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kCacheCorrupt) throw;
    if (ctx.stats != nullptr) ctx.stats->cache_corrupt = true;
    return std::nullopt;
  }
}

}  // namespace

std::string DecodingParams::canonical() const {
  return "temperature=" + format_number(temperature) + ";top_p=" + format_number(top_p) +
         ";frequency_penalty=" + format_number(frequency_penalty) +
         ";presence_penalty=" + format_number(presence_penalty) + ";best_of=" + std::to_string(best_of) +
         ";max_length=" + std::to_string(max_length);
}

ordered_json to_json(const DecodingParams& p) {
  return {{"temperature", p.temperature},
          {"top_p", p.top_p},
          {"frequency_penalty", p.frequency_penalty},
          {"presence_penalty", p.presence_penalty},
          {"best_of", p.best_of},
          {"max_length", p.max_length}};
}

DecodingParams decoding_params_from_json(const nlohmann::json& j) {
  DecodingParams p;
  for (const auto& [key, value] : j.items()) {
    if (key == "temperature") p.temperature = value.get<double>();
    else if (key == "top_p") p.top_p = value.get<double>();
    else if (key == "frequency_penalty") p.frequency_penalty = value.get<double>();
    else if (key == "presence_penalty") p.presence_penalty = value.get<double>();
    else if (key == "best_of") p.best_of = value.get<int>();
    else if (key == "max_length") p.max_length = value.get<int>();
    else throw Error(ErrorKind::kConfig, "unknown decoding parameter '" + key + "'");
  }
  return p;
}

UsageRecord price_tokens(std::size_t prompt_tokens, std::size_t completion_tokens, const UnitPrices& prices) {
  return {prompt_tokens, completion_tokens,
          static_cast<double>(prompt_tokens) * prices.prompt_per_1k / 1000.0 +
              static_cast<double>(completion_tokens) * prices.completion_per_1k / 1000.0};
}

UsageRecord price_characters(std::size_t characters, const UnitPrices& prices) {
  return {characters, 0, static_cast<double>(characters) * prices.per_character};
}

ordered_json to_json(const UsageRecord& u) {
  return {{"prompt_tokens", u.prompt_tokens},
          {"completion_tokens", u.completion_tokens},
          {"cost_estimate", u.cost_estimate}};
}

UsageRecord usage_from_json(const nlohmann::json& j) {
  UsageRecord u;
  u.prompt_tokens = j.value("prompt_tokens", std::size_t{0});
  u.completion_tokens = j.value("completion_tokens", std::size_t{0});
  u.cost_estimate = j.value("cost_estimate", 0.0);
  return u;
}

ordered_json to_json(const CompletionRecord& r) {
  return {{"backend_id", r.backend_id}, {"model_id", r.model_id},     {"prompt", r.prompt},
          {"params", to_json(r.params)}, {"completion", r.completion}, {"usage", to_json(r.usage)},
          {"timestamp", r.timestamp}};
}

CompletionRecord completion_record_from_json(const nlohmann::json& j) {
  CompletionRecord r;
  r.backend_id = j.at("backend_id").get<std::string>();
  r.model_id = j.at("model_id").get<std::string>();
  r.prompt = j.at("prompt").get<std::string>();
  r.params = decoding_params_from_json(j.at("params"));
  r.completion = j.at("completion").get<std::string>();
  r.usage = usage_from_json(j.at("usage"));
  r.timestamp = j.value("timestamp", std::string());
  return r;
}

CacheKey cache_key(std::string_view backend_id, std::string_view model_id, std::string_view prompt,
                   const DecodingParams& params) {
  // Length-prefixed fields so no two distinct tuples serialize alike.
  const std::string canonical = params.canonical();
  std::string material;
  for (const std::string_view field : {backend_id, model_id, prompt, std::string_view(canonical)}) {
    material += std::to_string(field.size());
    material += ':';
    material += field;
  }
  return {sha256_hex(material)};
}

CacheKey cache_key(const CompletionRecord& record) {
  return cache_key(record.backend_id, record.model_id, record.prompt, record.params);
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

CompletionRecord complete(const Prompt& prompt, const DecodingParams& params, CompletionBackend& backend,
                          const CallContext& ctx) {
  return complete(prompt.text, params, backend, ctx);
}

CompletionRecord complete(std::string_view prompt_text, const DecodingParams& params, CompletionBackend& backend,
                          const CallContext& ctx) {
  const std::string backend_id = backend.id();
  const std::string model_id = backend.model_id();
  const CacheKey key = cache_key(backend_id, model_id, prompt_text, params);
  if (auto hit = cached(key, ctx)) return std::move(*hit);

  BackendResponse response = with_retry(backend.live(), ctx.retry, ctx.stats,
                                        [&] { return backend.complete(prompt_text, params); });
  CompletionRecord record{backend_id,      model_id,       std::string(prompt_text), params,
                          std::move(response.text), response.usage, utc_timestamp()};
  if (ctx.cache != nullptr) ctx.cache->store(record);
  return record;
}

void check_translation(const LanguageCode& source, const LanguageCode& target, const TranslationBackend& backend) {
  if (source == target) {
    throw Error(ErrorKind::kPrecondition, "translation source and target are both '" + source.str() + "'");
  }
  if (!backend.supports(source, target)) {
    throw Error(ErrorKind::kUnsupportedLanguage, "translation backend '" + backend.id() + "' does not support " +
                                                     source.str() + " -> " + target.str());
  }
}

CompletionRecord translate_record(std::string_view text, const LanguageCode& source, const LanguageCode& target,
                                  TranslationBackend& backend, const CallContext& ctx) {
  check_translation(source, target, backend);
  const std::string backend_id = backend.id();
  const std::string model_id = backend.model_id() + ":" + source.str() + "->" + target.str();
  const DecodingParams no_params;
  const CacheKey key = cache_key(backend_id, model_id, text, no_params);
  if (auto hit = cached(key, ctx)) return std::move(*hit);

  BackendResponse response = with_retry(backend.live(), ctx.retry, ctx.stats,
                                        [&] { return backend.translate(text, source, target); });
  CompletionRecord record{backend_id, model_id, std::string(text), no_params, std::move(response.text),
                          response.usage, utc_timestamp()};
  if (ctx.cache != nullptr) ctx.cache->store(record);
  return record;
}

std::string translate(std::string_view text, const LanguageCode& source, const LanguageCode& target,
                      TranslationBackend& backend, const CallContext& ctx) {
  return translate_record(text, source, target, backend, ctx).completion;
}

}  // namespace t2t

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

#include "t2t/http_backends.hpp"

#include <cstdlib>

#include <httplib.h>

#include "t2t/error.hpp"
#include "t2t/text.hpp"

namespace t2t {

namespace {

std::string api_key(const std::string& env) {
  const char* value = std::getenv(env.c_str());
  if (value == nullptr || *value == '\0') {
    throw Error(ErrorKind::kAuth, "environment variable " + env + " is not set");
  }
  return value;
}

std::string error_message(const std::string& body) {
  try {
    const auto j = nlohmann::json::parse(body);
    if (j.contains("error")) {
      const auto& err = j.at("error");
      if (err.is_object() && err.contains("message")) return err.at("message").get<std::string>();
      if (err.is_string()) return err.get<std::string>();
    }
  } catch (const nlohmann::json::exception&) {
  }
  return body;
}

nlohmann::json post_json(const std::string& endpoint, const std::string& path, const httplib::Headers& headers,
                         const nlohmann::json& body, int timeout_seconds) {
  httplib::Client client(endpoint);
  client.set_connection_timeout(timeout_seconds, 0);
  client.set_read_timeout(timeout_seconds, 0);
  client.set_write_timeout(timeout_seconds, 0);
  auto res = client.Post(path, headers, body.dump(), "application/json");
  if (!res) {
    throw Error(ErrorKind::kTransport, endpoint + path + ": " + httplib::to_string(res.error()));
  }
  const int status = res->status;
  if (status == 401 || status == 403) {
    throw Error(ErrorKind::kAuth, "HTTP " + std::to_string(status) + ": " + error_message(res->body));
  }
  if (status == 429) throw Error(ErrorKind::kRateLimited, "HTTP 429: " + error_message(res->body));
  if (status >= 500) {
    throw Error(ErrorKind::kTransport, "HTTP " + std::to_string(status) + ": " + error_message(res->body));
  }
  if (status != 200) {
    throw Error(ErrorKind::kBackendRefused, "HTTP " + std::to_string(status) + ": " + error_message(res->body));
  }
  try {
    return nlohmann::json::parse(res->body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kTransport, std::string("malformed response body: ") + e.what());
  }
}

}  // namespace

BackendResponse HttpCompletionBackend::complete(std::string_view prompt, const DecodingParams& params) {
  const std::string key = api_key(config_.api_key_env);
  const nlohmann::json request = {
      {"model", config_.model},
      {"prompt", std::string(prompt)},
      {"temperature", params.temperature},
      {"top_p", params.top_p},
      {"frequency_penalty", params.frequency_penalty},
      {"presence_penalty", params.presence_penalty},
      {"best_of", params.best_of},
      {"max_tokens", params.max_length},
  };
  const auto response = post_json(config_.endpoint, config_.path, {{"Authorization", "Bearer " + key}}, request,
                                  config_.timeout_seconds);
  try {
    const auto& choices = response.at("choices");
    if (choices.empty()) throw Error(ErrorKind::kBackendRefused, "response has no choices");
    std::size_t pt = 0;
    std::size_t ct = 0;
    if (response.contains("usage")) {
      pt = response.at("usage").value("prompt_tokens", std::size_t{0});
      ct = response.at("usage").value("completion_tokens", std::size_t{0});
    }
    return {choices.at(0).at("text").get<std::string>(), price_tokens(pt, ct, config_.prices)};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kTransport, std::string("unexpected completion response: ") + e.what());
  }
}

bool HttpTranslationBackend::supports(const LanguageCode& source, const LanguageCode& target) const {
  return config_.languages.contains(source) && config_.languages.contains(target);
}

BackendResponse HttpTranslationBackend::translate(std::string_view text, const LanguageCode& source,
                                                  const LanguageCode& target) {
  if (!supports(source, target)) {
    throw Error(ErrorKind::kUnsupportedLanguage,
                config_.id + " does not support " + source.str() + " -> " + target.str());
  }
  const std::string key = api_key(config_.api_key_env);
  const nlohmann::json request = {
      {"q", std::string(text)}, {"source", source.str()}, {"target", target.str()}, {"format", "text"}};
  const auto response = post_json(config_.endpoint, config_.path + "?key=" + httplib::detail::encode_query_param(key),
                                  {}, request, config_.timeout_seconds);
  try {
    return {response.at("data").at("translations").at(0).at("translatedText").get<std::string>(),
            price_characters(text::decode_utf8(text).size(), config_.prices)};
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kTransport, std::string("unexpected translation response: ") + e.what());
  }
}

}  // namespace t2t

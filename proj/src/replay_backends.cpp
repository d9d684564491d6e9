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

#include "t2t/replay_backends.hpp"

#include <fstream>

#include "t2t/error.hpp"
#include "t2t/text.hpp"

namespace t2t {

namespace {

std::string completion_key(std::string_view prompt, const std::optional<DecodingParams>& params) {
  std::string key(prompt);
  key += "\n\x1f";
  if (params) key += params->canonical();
  return key;
}

std::string translation_key(std::string_view text, const LanguageCode& source, const LanguageCode& target) {
  return source.str() + "\x1f" + target.str() + "\x1f" + std::string(text);
}

template <typename PerLine>
void read_jsonl(const std::filesystem::path& path, PerLine&& per_line) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot open fixture file " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::trim(line).empty()) continue;
    try {
      per_line(nlohmann::json::parse(line));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::kParse, path.string() + ":line " + std::to_string(lineno) + ": " + e.what());
    }
  }
}

}  // namespace

std::set<LanguageCode> default_translation_languages() {
  return {lang::kEnglish, lang::kIrish, lang::kMaltese, lang::kWelsh};
}

ReplayCompletionBackend::ReplayCompletionBackend(std::string id, std::string model_id, UnitPrices prices)
    : id_(std::move(id)), model_id_(std::move(model_id)), prices_(prices) {}

ReplayCompletionBackend ReplayCompletionBackend::load(const std::filesystem::path& path, std::string id,
                                                      std::string model_id, UnitPrices prices) {
  ReplayCompletionBackend backend(std::move(id), std::move(model_id), prices);
  read_jsonl(path, [&](const nlohmann::json& j) {
    std::optional<DecodingParams> params;
    if (j.contains("params") && !j.at("params").is_null()) params = decoding_params_from_json(j.at("params"));
    std::size_t pt = 0;
    std::size_t ct = 0;
    if (j.contains("usage")) {
      pt = j.at("usage").value("prompt_tokens", std::size_t{0});
      ct = j.at("usage").value("completion_tokens", std::size_t{0});
    }
    backend.add(j.at("prompt").get<std::string>(), params, j.at("completion").get<std::string>(), pt, ct);
  });
  return backend;
}

void ReplayCompletionBackend::add(std::string prompt, std::optional<DecodingParams> params, std::string completion,
                                  std::size_t prompt_tokens, std::size_t completion_tokens) {
  fixtures_[completion_key(prompt, params)] = {std::move(completion), prompt_tokens, completion_tokens};
}

BackendResponse ReplayCompletionBackend::complete(std::string_view prompt, const DecodingParams& params) {
  auto it = fixtures_.find(completion_key(prompt, params));
  if (it == fixtures_.end()) it = fixtures_.find(completion_key(prompt, std::nullopt));
  if (it == fixtures_.end()) throw Error(ErrorKind::kBackendRefused, "no fixture");
  const Fixture& f = it->second;
  return {f.completion, price_tokens(f.prompt_tokens, f.completion_tokens, prices_)};
}

BackendResponse EchoCompletionBackend::complete(std::string_view prompt, const DecodingParams&) {
  const auto nl = prompt.rfind('\n');
  return {std::string(nl == std::string_view::npos ? prompt : prompt.substr(nl + 1)), {}};
}

ReplayTranslationBackend::ReplayTranslationBackend(std::string id, std::set<LanguageCode> languages,
                                                   UnitPrices prices)
    : id_(std::move(id)), languages_(std::move(languages)), prices_(prices) {}

ReplayTranslationBackend ReplayTranslationBackend::load(const std::filesystem::path& path, std::string id,
                                                        std::set<LanguageCode> languages, UnitPrices prices) {
  ReplayTranslationBackend backend(std::move(id), std::move(languages), prices);
  read_jsonl(path, [&](const nlohmann::json& j) {
    backend.add(j.at("text").get<std::string>(), LanguageCode(j.at("source").get<std::string>()),
                LanguageCode(j.at("target").get<std::string>()), j.at("translation").get<std::string>());
  });
  return backend;
}

void ReplayTranslationBackend::add(std::string text, const LanguageCode& source, const LanguageCode& target,
                                   std::string translation) {
  fixtures_[translation_key(text, source, target)] = std::move(translation);
}

bool ReplayTranslationBackend::supports(const LanguageCode& source, const LanguageCode& target) const {
  return languages_.contains(source) && languages_.contains(target);
}

BackendResponse ReplayTranslationBackend::translate(std::string_view text, const LanguageCode& source,
                                                    const LanguageCode& target) {
  if (!supports(source, target)) {
    throw Error(ErrorKind::kUnsupportedLanguage, id_ + " does not support " + source.str() + " -> " + target.str());
  }
  const auto it = fixtures_.find(translation_key(text, source, target));
  if (it == fixtures_.end()) throw Error(ErrorKind::kBackendRefused, "no fixture");
  return {it->second, price_characters(text::decode_utf8(text).size(), prices_)};
}

}  // namespace t2t

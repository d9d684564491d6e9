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

#include <compare>
#include <functional>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

namespace t2t {

// A registered language code such as "ga". Comparison is by code.
class LanguageCode {
 public:
  LanguageCode() = default;
  explicit LanguageCode(std::string code) : code_(std::move(code)) {}

  const std::string& str() const { return code_; }
  bool empty() const { return code_.empty(); }

  auto operator<=>(const LanguageCode&) const = default;

 private:
  std::string code_;
};

namespace lang {
inline const LanguageCode kEnglish{"en"};
inline const LanguageCode kIrish{"ga"};
inline const LanguageCode kMaltese{"mt"};
inline const LanguageCode kWelsh{"cy"};
inline const LanguageCode kBreton{"br"};
}  // namespace lang

// Code -> display name table used when rendering prompts and reports.
// Starts with en/ga/mt/cy/br; readers may register further codes on the fly.
class LanguageRegistry {
 public:
  LanguageRegistry();

  static LanguageRegistry& global();

  bool contains(const LanguageCode& code) const;
  std::optional<std::string> display_name(const LanguageCode& code) const;

  // Returns false if the code was already registered (the name is kept).
  bool add(const LanguageCode& code, std::string display_name);

  // Registers an unknown code with the code itself as display name and
  // reports it through the warning sink. No-op for known codes.
  void ensure(const LanguageCode& code);

  std::vector<LanguageCode> codes() const;

  using WarningSink = std::function<void(std::string_view)>;
  void set_warning_sink(WarningSink sink);

 private:
  mutable std::shared_mutex mu_;
  std::vector<std::pair<LanguageCode, std::string>> entries_;
  WarningSink warn_;
};

// Display name from the global registry, falling back to the code.
std::string display_name(const LanguageCode& code);

}  // namespace t2t

template <>
struct std::hash<t2t::LanguageCode> {
  std::size_t operator()(const t2t::LanguageCode& c) const noexcept {
    return std::hash<std::string>{}(c.str());
  }
};

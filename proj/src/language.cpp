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

#include "t2t/language.hpp"

#include <algorithm>
#include <iostream>
#include <mutex>

namespace t2t {

LanguageRegistry::LanguageRegistry()
    : entries_{{lang::kEnglish, "English"},
               {lang::kIrish, "Irish"},
               {lang::kMaltese, "Maltese"},
               {lang::kWelsh, "Welsh"},
               {lang::kBreton, "Breton"}},
      warn_([](std::string_view msg) { std::cerr << "warning: " << msg << "\n"; }) {}

LanguageRegistry& LanguageRegistry::global() {
  static LanguageRegistry registry;
  return registry;
}

bool LanguageRegistry::contains(const LanguageCode& code) const {
  std::shared_lock lock(mu_);
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const auto& e) { return e.first == code; });
}

std::optional<std::string> LanguageRegistry::display_name(const LanguageCode& code) const {
  std::shared_lock lock(mu_);
  for (const auto& [c, name] : entries_) {
    if (c == code) return name;
  }
  return std::nullopt;
}

bool LanguageRegistry::add(const LanguageCode& code, std::string name) {
  std::unique_lock lock(mu_);
  for (const auto& e : entries_) {
    if (e.first == code) return false;
  }
  entries_.emplace_back(code, std::move(name));
  return true;
}

void LanguageRegistry::ensure(const LanguageCode& code) {
  if (add(code, code.str())) {
    WarningSink sink;
    {
      std::shared_lock lock(mu_);
      sink = warn_;
    }
    if (sink) sink("unknown language code '" + code.str() + "' registered with its code as display name");
  }
}

std::vector<LanguageCode> LanguageRegistry::codes() const {
  std::shared_lock lock(mu_);
  std::vector<LanguageCode> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.first);
  return out;
}

void LanguageRegistry::set_warning_sink(WarningSink sink) {
  std::unique_lock lock(mu_);
  warn_ = std::move(sink);
}

std::string display_name(const LanguageCode& code) {
  return LanguageRegistry::global().display_name(code).value_or(code.str());
}

}  // namespace t2t

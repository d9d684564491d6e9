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

#include <filesystem>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "t2t/backends.hpp"

namespace t2t {

// Money is summed in floating point and then quantized to 1e-10 currency
// units, so totals do not depend on summation order and equal the decimal
// total a person would compute by hand.
double round_currency(double amount);

double ledger_total(std::span<const UsageRecord> records);

struct LedgerEntry {
  std::string variant;
  std::string language;
  std::string entry_id;
  std::string kind;  // "completion" or "translation"
  std::string backend_id;
  UsageRecord usage;
  bool cached = false;

  bool operator==(const LedgerEntry&) const = default;
};

ordered_json to_json(const LedgerEntry& e);
LedgerEntry ledger_entry_from_json(const nlohmann::json& j);

struct LedgerSummary {
  double total = 0.0;
  // Cost of calls actually sent to a backend (cache hits excluded).
  double spent = 0.0;
  std::size_t calls = 0;
  std::size_t cache_hits = 0;
  std::map<std::string, double> by_variant;
  std::map<std::string, double> by_language;
};

LedgerSummary summarize(std::span<const LedgerEntry> entries);

// Append-only JSONL log. Writers from several threads are serialized;
// several logs (one per run) are merged when read.
class LedgerLog {
 public:
  explicit LedgerLog(std::filesystem::path path);

  void append(const LedgerEntry& entry);
  const std::filesystem::path& path() const { return path_; }

  static std::vector<LedgerEntry> read(std::span<const std::filesystem::path> paths);

 private:
  std::filesystem::path path_;
  std::mutex mu_;
};

std::string render_ledger(const LedgerSummary& summary);

}  // namespace t2t

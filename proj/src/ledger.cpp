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

#include "t2t/ledger.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "t2t/error.hpp"

namespace t2t {

double round_currency(double amount) { return std::round(amount * 1e10) / 1e10; }

double ledger_total(std::span<const UsageRecord> records) {
  const long double sum = std::accumulate(records.begin(), records.end(), 0.0L,
                                          [](long double acc, const UsageRecord& u) { return acc + u.cost_estimate; });
  return round_currency(static_cast<double>(sum));
}

ordered_json to_json(const LedgerEntry& e) {
  return {{"variant", e.variant},     {"language", e.language},     {"entry_id", e.entry_id},
          {"kind", e.kind},           {"backend_id", e.backend_id}, {"usage", to_json(e.usage)},
          {"cached", e.cached}};
}

LedgerEntry ledger_entry_from_json(const nlohmann::json& j) {
  LedgerEntry e;
  e.variant = j.at("variant").get<std::string>();
  e.language = j.at("language").get<std::string>();
  e.entry_id = j.at("entry_id").get<std::string>();
  e.kind = j.at("kind").get<std::string>();
  e.backend_id = j.at("backend_id").get<std::string>();
  e.usage = usage_from_json(j.at("usage"));
  e.cached = j.value("cached", false);
  return e;
}

LedgerSummary summarize(std::span<const LedgerEntry> entries) {
  LedgerSummary s;
  for (const auto& e : entries) {
    const double cost = e.usage.cost_estimate;
    s.total += cost;
    ++s.calls;
    if (e.cached) {
      ++s.cache_hits;
    } else {
      s.spent += cost;
    }
    s.by_variant[e.variant] += cost;
    s.by_language[e.language] += cost;
  }
  s.total = round_currency(s.total);
  s.spent = round_currency(s.spent);
  for (auto& [k, v] : s.by_variant) v = round_currency(v);
  for (auto& [k, v] : s.by_language) v = round_currency(v);
  return s;
}

LedgerLog::LedgerLog(std::filesystem::path path) : path_(std::move(path)) {}

void LedgerLog::append(const LedgerEntry& entry) {
  const std::string line = to_json(entry).dump() + "\n";
  std::lock_guard lock(mu_);
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (!out) throw Error(ErrorKind::kIo, "cannot append to ledger " + path_.string());
  out << line;
}

std::vector<LedgerEntry> LedgerLog::read(std::span<const std::filesystem::path> paths) {
  std::vector<LedgerEntry> out;
  for (const auto& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::kIo, "cannot read ledger " + path.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (line.empty()) continue;
      try {
        out.push_back(ledger_entry_from_json(nlohmann::json::parse(line)));
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::kParse, path.string() + ":line " + std::to_string(lineno) + ": " + e.what());
      }
    }
  }
  return out;
}

std::string render_ledger(const LedgerSummary& s) {
  std::ostringstream out;
  char buf[200];
  std::snprintf(buf, sizeof buf, "calls: %zu (cache hits: %zu)\n", s.calls, s.cache_hits);
  out << buf;
  std::snprintf(buf, sizeof buf, "total cost: US$%.4f (spent this session: US$%.4f)\n", s.total, s.spent);
  out << buf;
  for (const auto& [variant, cost] : s.by_variant) {
    std::snprintf(buf, sizeof buf, "  variant  %-18s US$%.4f\n", variant.c_str(), cost);
    out << buf;
  }
  for (const auto& [language, cost] : s.by_language) {
    std::snprintf(buf, sizeof buf, "  language %-18s US$%.4f\n", language.c_str(), cost);
    out << buf;
  }
  return out.str();
}

}  // namespace t2t

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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <unordered_map>

#include "t2t/error.hpp"
#include "t2t/metrics.hpp"
#include "t2t/text.hpp"

namespace t2t {

void require_pairs(std::span<const SegmentPair> pairs, std::string_view metric);

namespace {

using NgramCounts = std::unordered_map<std::string, int>;

NgramCounts count_ngrams(const std::vector<std::string>& tokens, int order) {
  NgramCounts counts;
  const auto n = static_cast<std::size_t>(order);
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (std::size_t k = 1; k < n; ++k) {
      key += '\x1f';
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

std::vector<std::string> prepare(std::string_view s, bool lowercase) {
  return lowercase ? tokenize(text::lowercase(s)) : tokenize(s);
}

}  // namespace

BleuStats& BleuStats::operator+=(const BleuStats& other) {
  for (std::size_t i = 0; i < matches.size() && i < other.matches.size(); ++i) {
    matches[i] += other.matches[i];
    totals[i] += other.totals[i];
  }
  hyp_length += other.hyp_length;
  ref_length += other.ref_length;
  return *this;
}

double BleuStats::brevity_penalty() const {
  if (hyp_length > ref_length) return 1.0;
  if (hyp_length == 0) return 0.0;
  return std::exp(1.0 - ref_length / hyp_length);
}

double BleuStats::score() const {
  if (hyp_length == 0) return 0.0;
  double log_sum = 0.0;
  for (std::size_t i = 0; i < matches.size(); ++i) {
    if (totals[i] == 0 || matches[i] == 0) return 0.0;
    log_sum += std::log(matches[i] / totals[i]);
  }
  return 100.0 * brevity_penalty() * std::exp(log_sum / static_cast<double>(matches.size()));
}

BleuStats bleu_segment_stats(const SegmentPair& pair, const BleuConfig& cfg) {
  const auto hyp = prepare(pair.hypothesis, cfg.lowercase);
  std::vector<std::vector<std::string>> refs;
  for (const auto& r : pair.references) refs.push_back(prepare(r, cfg.lowercase));

  BleuStats stats(cfg.max_order);
  stats.hyp_length = static_cast<double>(hyp.size());
  // Closest reference length; ties go to the shorter reference.
  std::size_t best_len = refs.front().size();
  for (const auto& r : refs) {
    const auto diff = [&](std::size_t len) {
      return std::abs(static_cast<long>(len) - static_cast<long>(hyp.size()));
    };
    if (diff(r.size()) < diff(best_len) || (diff(r.size()) == diff(best_len) && r.size() < best_len)) {
      best_len = r.size();
    }
  }
  stats.ref_length = static_cast<double>(best_len);

  for (int order = 1; order <= cfg.max_order; ++order) {
    const auto hyp_counts = count_ngrams(hyp, order);
    NgramCounts max_ref;
    for (const auto& r : refs) {
      for (const auto& [gram, c] : count_ngrams(r, order)) {
        auto& slot = max_ref[gram];
        slot = std::max(slot, c);
      }
    }
    double matched = 0;
    double total = 0;
    for (const auto& [gram, c] : hyp_counts) {
      total += c;
      const auto it = max_ref.find(gram);
      if (it != max_ref.end()) matched += std::min(c, it->second);
    }
    stats.matches[static_cast<std::size_t>(order - 1)] = matched;
    stats.totals[static_cast<std::size_t>(order - 1)] = total;
  }
  return stats;
}

double corpus_bleu(std::span<const SegmentPair> pairs, const BleuConfig& cfg) {
  require_pairs(pairs, "BLEU");
  BleuStats total(cfg.max_order);
  for (const auto& p : pairs) total += bleu_segment_stats(p, cfg);
  return total.score();
}

double sentence_bleu(const SegmentPair& pair, const BleuConfig& cfg) {
  const BleuStats s = bleu_segment_stats(pair, cfg);
  if (s.hyp_length == 0 || s.totals[0] == 0 || s.matches[0] == 0) return 0.0;
  double log_sum = std::log(s.matches[0] / s.totals[0]);
  for (std::size_t i = 1; i < s.matches.size(); ++i) {
    log_sum += std::log((s.matches[i] + 1.0) / (s.totals[i] + 1.0));
  }
  return 100.0 * s.brevity_penalty() * std::exp(log_sum / static_cast<double>(s.matches.size()));
}

}  // namespace t2t

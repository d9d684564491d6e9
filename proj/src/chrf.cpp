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
#include <unordered_map>

#include "t2t/error.hpp"
#include "t2t/metrics.hpp"
#include "t2t/text.hpp"

namespace t2t {

void require_pairs(std::span<const SegmentPair> pairs, std::string_view metric);

namespace {

using Counts = std::unordered_map<std::string, int>;

// Counts per order: character orders 1..char_order, then word orders.
struct Profile {
  std::vector<Counts> grams;
  std::vector<double> totals;
};

Profile profile(std::string_view raw, const ChrfConfig& cfg) {
  const std::string s = cfg.lowercase ? text::lowercase(raw) : std::string(raw);
  Profile p;
  // Characters with all whitespace removed.
  std::vector<std::string> chars;
  for (const auto& cp : text::decode_utf8(s)) {
    if (!text::is_space(cp.value)) chars.emplace_back(s.substr(cp.offset, cp.length));
  }
  const auto words = tokenize(s);
  const auto add_orders = [&p](const std::vector<std::string>& units, int max_order, bool join_space) {
    for (int n = 1; n <= max_order; ++n) {
      Counts counts;
      double total = 0;
      const auto len = static_cast<std::size_t>(n);
      for (std::size_t i = 0; i + len <= units.size(); ++i) {
        std::string key;
        for (std::size_t k = 0; k < len; ++k) {
          if (k > 0 && join_space) key += ' ';
          key += units[i + k];
        }
        ++counts[key];
        ++total;
      }
      p.grams.push_back(std::move(counts));
      p.totals.push_back(total);
    }
  };
  add_orders(chars, cfg.char_order, false);
  add_orders(words, cfg.word_order, true);
  return p;
}

ChrfStats compare(const Profile& hyp, const Profile& ref) {
  ChrfStats stats(hyp.grams.size());
  for (std::size_t o = 0; o < hyp.grams.size(); ++o) {
    double matched = 0;
    for (const auto& [gram, c] : hyp.grams[o]) {
      const auto it = ref.grams[o].find(gram);
      if (it != ref.grams[o].end()) matched += std::min(c, it->second);
    }
    stats.matches[o] = matched;
    stats.hyp_totals[o] = hyp.totals[o];
    stats.ref_totals[o] = ref.totals[o];
  }
  return stats;
}

}  // namespace

ChrfStats& ChrfStats::operator+=(const ChrfStats& other) {
  for (std::size_t i = 0; i < matches.size() && i < other.matches.size(); ++i) {
    matches[i] += other.matches[i];
    hyp_totals[i] += other.hyp_totals[i];
    ref_totals[i] += other.ref_totals[i];
  }
  return *this;
}

double ChrfStats::score(double beta) const {
  if (matches.empty()) return 0.0;
  const double b2 = beta * beta;
  double sum = 0.0;
  for (std::size_t i = 0; i < matches.size(); ++i) {
    const double p = hyp_totals[i] > 0 ? matches[i] / hyp_totals[i] : 0.0;
    const double r = ref_totals[i] > 0 ? matches[i] / ref_totals[i] : 0.0;
    const double denom = b2 * p + r;
    if (denom > 0) sum += (1.0 + b2) * p * r / denom;
  }
  return sum / static_cast<double>(matches.size());
}

ChrfStats chrf_segment_stats(const SegmentPair& pair, const ChrfConfig& cfg) {
  const Profile hyp = profile(pair.hypothesis, cfg);
  ChrfStats best;
  double best_score = -1.0;
  for (const auto& r : pair.references) {
    ChrfStats s = compare(hyp, profile(r, cfg));
    const double f = s.score(cfg.beta);
    if (f > best_score) {
      best_score = f;
      best = std::move(s);
    }
  }
  return best;
}

double chrf(std::span<const SegmentPair> pairs, const ChrfConfig& cfg) {
  require_pairs(pairs, "chrF++");
  ChrfStats total(static_cast<std::size_t>(cfg.char_order + cfg.word_order));
  for (const auto& p : pairs) total += chrf_segment_stats(p, cfg);
  return total.score(cfg.beta);
}

}  // namespace t2t

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

// Corpus-level BLEU (0-100), chrF++ (0-1) and TER (0-1, may exceed 1) with
// multi-reference support. Each metric aggregates per-segment sufficient
// statistics by summation, so segments can be scored in any order or in
// parallel and folded afterwards.

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace t2t {

struct SegmentPair {
  std::string hypothesis;
  std::vector<std::string> references;  // nonempty
};

// Whitespace split, then every punctuation character becomes its own token.
std::vector<std::string> tokenize(std::string_view text);

struct BleuConfig {
  int max_order = 4;
  bool lowercase = false;
};

struct ChrfConfig {
  int char_order = 6;
  int word_order = 2;
  double beta = 2.0;
  bool lowercase = false;
};

struct TerConfig {
  bool case_sensitive = true;
  int max_shift_size = 10;
  int max_shift_distance = 50;
};

struct MetricConfigs {
  BleuConfig bleu;
  ChrfConfig chrf;
  TerConfig ter;

  // The single case-folding switch; applies to all three metrics.
  void set_case_folding(bool fold) {
    bleu.lowercase = fold;
    chrf.lowercase = fold;
    ter.case_sensitive = !fold;
  }
};

// ---- BLEU ----

struct BleuStats {
  std::vector<double> matches;  // clipped n-gram matches per order
  std::vector<double> totals;   // hypothesis n-grams per order
  double hyp_length = 0;
  double ref_length = 0;  // effective reference length

  explicit BleuStats(int max_order = 4)
      : matches(static_cast<std::size_t>(max_order), 0.0),
        totals(static_cast<std::size_t>(max_order), 0.0) {}

  BleuStats& operator+=(const BleuStats& other);
  bool operator==(const BleuStats&) const = default;

  double brevity_penalty() const;
  // 100 * BP * geometric mean of precisions; 0 if any precision is 0.
  double score() const;
};

BleuStats bleu_segment_stats(const SegmentPair& pair, const BleuConfig& cfg = {});
double corpus_bleu(std::span<const SegmentPair> pairs, const BleuConfig& cfg = {});

// Sentence-level diagnostic only: add-one smoothing for orders >= 2.
double sentence_bleu(const SegmentPair& pair, const BleuConfig& cfg = {});

// ---- chrF++ ----

struct ChrfStats {
  // Character orders first, then word orders.
  std::vector<double> matches;
  std::vector<double> hyp_totals;
  std::vector<double> ref_totals;

  explicit ChrfStats(std::size_t orders = 8)
      : matches(orders, 0.0), hyp_totals(orders, 0.0), ref_totals(orders, 0.0) {}

  ChrfStats& operator+=(const ChrfStats& other);
  bool operator==(const ChrfStats&) const = default;

  // Arithmetic mean of the per-order F-beta scores.
  double score(double beta = 2.0) const;
};

// Statistics against the best-scoring reference (first one on ties).
ChrfStats chrf_segment_stats(const SegmentPair& pair, const ChrfConfig& cfg = {});
double chrf(std::span<const SegmentPair> pairs, const ChrfConfig& cfg = {});

// ---- TER ----

struct TerStats {
  double edits = 0;
  double ref_words = 0;

  TerStats& operator+=(const TerStats& other) {
    edits += other.edits;
    ref_words += other.ref_words;
    return *this;
  }
  bool operator==(const TerStats&) const = default;

  double score() const { return ref_words > 0 ? edits / ref_words : 0.0; }
};

// Minimum number of edits (insertions, deletions, substitutions and block
// shifts, cost 1 each) turning `hyp` into `ref`, with shifts chosen greedily.
std::size_t ter_edits(const std::vector<std::string>& hyp, const std::vector<std::string>& ref,
                      const TerConfig& cfg = {});

// Uses the reference needing the fewest edits (first one on ties).
TerStats ter_segment_stats(const SegmentPair& pair, const TerConfig& cfg = {});
double ter(std::span<const SegmentPair> pairs, const TerConfig& cfg = {});

// ---- bundle ----

struct MetricScore {
  double bleu = 0;
  double chrf = 0;
  double ter = 0;
  std::size_t n_segments = 0;

  bool operator==(const MetricScore&) const = default;
};

MetricScore evaluate_all(std::span<const SegmentPair> pairs, const MetricConfigs& configs = {});

// {"bleu": .., "chrf": .., "ter": .., "n_segments": ..}
std::string score_to_json(const MetricScore& score);
MetricScore score_from_json(std::string_view json_text);
// Two-line aligned table: header and values.
std::string render_score_table(const MetricScore& score);

}  // namespace t2t

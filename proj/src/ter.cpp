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
#include <cstdlib>
#include <optional>
#include <tuple>
#include <unordered_map>

#include "t2t/error.hpp"
#include "t2t/metrics.hpp"
#include "t2t/text.hpp"

namespace t2t {

void require_pairs(std::span<const SegmentPair> pairs, std::string_view metric);

namespace {

using Words = std::vector<int>;

enum class Op { kMatch, kSub, kIns, kDel };

std::size_t edit_distance(const Words& hyp, const Words& ref) {
  std::vector<std::size_t> prev(ref.size() + 1), cur(ref.size() + 1);
  for (std::size_t j = 0; j <= ref.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= hyp.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= ref.size(); ++j) {
      const std::size_t diag = prev[j - 1] + (hyp[i - 1] == ref[j - 1] ? 0 : 1);
      cur[j] = std::min({diag, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[ref.size()];
}

// Edit script hyp -> ref. kIns consumes a hypothesis word that has no
// counterpart, kDel a reference word missing from the hypothesis.
std::vector<Op> edit_trace(const Words& hyp, const Words& ref) {
  const std::size_t n = hyp.size();
  const std::size_t m = ref.size();
  std::vector<std::size_t> d((n + 1) * (m + 1));
  const auto at = [&](std::size_t i, std::size_t j) -> std::size_t& { return d[i * (m + 1) + j]; };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = i;
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = j;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      at(i, j) = std::min({at(i - 1, j - 1) + (hyp[i - 1] == ref[j - 1] ? 0 : 1), at(i - 1, j) + 1,
                           at(i, j - 1) + 1});
    }
  }
  std::vector<Op> ops;
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      const bool same = hyp[i - 1] == ref[j - 1];
      if (at(i, j) == at(i - 1, j - 1) + (same ? 0 : 1)) {
        ops.push_back(same ? Op::kMatch : Op::kSub);
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && at(i, j) == at(i - 1, j) + 1) {
      ops.push_back(Op::kIns);
      --i;
    } else {
      ops.push_back(Op::kDel);
      --j;
    }
  }
  std::reverse(ops.begin(), ops.end());
  return ops;
}

struct Alignment {
  std::vector<long> ref_to_hyp;  // hypothesis position each reference word aligns to
  std::vector<bool> hyp_err;
  std::vector<bool> ref_err;
};

Alignment align(const std::vector<Op>& ops) {
  Alignment a;
  long h = -1;
  for (const Op op : ops) {
    switch (op) {
      case Op::kMatch:
      case Op::kSub:
        ++h;
        a.ref_to_hyp.push_back(h);
        a.hyp_err.push_back(op == Op::kSub);
        a.ref_err.push_back(op == Op::kSub);
        break;
      case Op::kIns:
        ++h;
        a.hyp_err.push_back(true);
        break;
      case Op::kDel:
        a.ref_to_hyp.push_back(h);
        a.ref_err.push_back(true);
        break;
    }
  }
  return a;
}

// Moves words[start, start+length) so it begins before index `target` of
// the original sequence.
Words perform_shift(const Words& w, std::size_t start, std::size_t length, std::size_t target) {
  Words out;
  out.reserve(w.size());
  const auto append = [&](std::size_t b, std::size_t e) { out.insert(out.end(), w.begin() + b, w.begin() + e); };
  if (target < start) {
    append(0, target);
    append(start, start + length);
    append(target, start);
    append(start + length, w.size());
  } else if (target > start + length) {
    append(0, start);
    append(start + length, target);
    append(start, start + length);
    append(target, w.size());
  } else {
    append(0, start);
    append(start + length, std::min(w.size(), length + target));
    append(start, start + length);
    append(std::min(w.size(), length + target), w.size());
  }
  return out;
}

struct ShiftChoice {
  long gain = 0;
  std::size_t length = 0;
  std::size_t pos = 0;
  std::size_t target = 0;
  Words shifted;
};

// Best single shift by edit-distance reduction; ties prefer longer blocks,
// then earlier source and destination positions.
std::optional<ShiftChoice> best_shift(const Words& hyp, const Words& ref, const TerConfig& cfg) {
  const auto base = static_cast<long>(edit_distance(hyp, ref));
  const Alignment a = align(edit_trace(hyp, ref));
  std::optional<ShiftChoice> best;
  const auto better = [&](const ShiftChoice& c) {
    if (!best) return true;
    return std::make_tuple(c.gain, c.length, -static_cast<long>(c.pos), -static_cast<long>(c.target)) >
           std::make_tuple(best->gain, best->length, -static_cast<long>(best->pos),
                           -static_cast<long>(best->target));
  };
  const auto max_size = static_cast<std::size_t>(cfg.max_shift_size);
  for (std::size_t ph = 0; ph < hyp.size(); ++ph) {
    for (std::size_t pr = 0; pr < ref.size(); ++pr) {
      const long dist = static_cast<long>(pr) - static_cast<long>(ph);
      if (std::abs(dist) > cfg.max_shift_distance) continue;
      for (std::size_t len = 1; len <= max_size && ph + len <= hyp.size() && pr + len <= ref.size(); ++len) {
        if (hyp[ph + len - 1] != ref[pr + len - 1]) break;
        // Only move blocks that are currently misaligned onto reference
        // words that are currently in error.
        if (std::none_of(a.hyp_err.begin() + static_cast<long>(ph), a.hyp_err.begin() + static_cast<long>(ph + len),
                         [](bool e) { return e; })) {
          continue;
        }
        if (std::none_of(a.ref_err.begin() + static_cast<long>(pr), a.ref_err.begin() + static_cast<long>(pr + len),
                         [](bool e) { return e; })) {
          continue;
        }
        const long anchor = a.ref_to_hyp[pr];
        if (static_cast<long>(ph) <= anchor && anchor < static_cast<long>(ph + len)) continue;
        long prev_target = -1;
        for (long offset = -1; offset < static_cast<long>(len); ++offset) {
          const long rpos = static_cast<long>(pr) + offset;
          const long target = rpos == -1 ? 0 : a.ref_to_hyp[static_cast<std::size_t>(rpos)] + 1;
          if (target == prev_target) continue;
          prev_target = target;
          ShiftChoice c;
          c.length = len;
          c.pos = ph;
          c.target = static_cast<std::size_t>(target);
          c.shifted = perform_shift(hyp, ph, len, c.target);
          c.gain = base - static_cast<long>(edit_distance(c.shifted, ref));
          if (better(c)) best = std::move(c);
        }
      }
    }
  }
  return best;
}

std::size_t ter_edits_ids(Words hyp, const Words& ref, const TerConfig& cfg) {
  std::size_t shifts = 0;
  for (;;) {
    auto choice = best_shift(hyp, ref, cfg);
    if (!choice || choice->gain <= 0) break;
    hyp = std::move(choice->shifted);
    ++shifts;
  }
  return shifts + edit_distance(hyp, ref);
}

class Interner {
 public:
  Words intern(const std::vector<std::string>& words) {
    Words out;
    out.reserve(words.size());
    for (const auto& w : words) {
      const auto [it, inserted] = ids_.try_emplace(w, static_cast<int>(ids_.size()));
      out.push_back(it->second);
    }
    return out;
  }

 private:
  std::unordered_map<std::string, int> ids_;
};

std::vector<std::string> prepare(std::string_view s, const TerConfig& cfg) {
  return cfg.case_sensitive ? tokenize(s) : tokenize(text::lowercase(s));
}

}  // namespace

std::size_t ter_edits(const std::vector<std::string>& hyp, const std::vector<std::string>& ref,
                      const TerConfig& cfg) {
  Interner interner;
  const Words h = interner.intern(hyp);
  const Words r = interner.intern(ref);
  return ter_edits_ids(h, r, cfg);
}

TerStats ter_segment_stats(const SegmentPair& pair, const TerConfig& cfg) {
  Interner interner;
  const Words hyp = interner.intern(prepare(pair.hypothesis, cfg));
  std::optional<TerStats> best;
  for (const auto& r : pair.references) {
    const Words ref = interner.intern(prepare(r, cfg));
    if (ref.empty()) throw Error(ErrorKind::kEmptyReference, "TER: reference with zero tokens");
    const TerStats s{static_cast<double>(ter_edits_ids(hyp, ref, cfg)), static_cast<double>(ref.size())};
    if (!best || s.edits < best->edits) best = s;
  }
  return *best;
}

double ter(std::span<const SegmentPair> pairs, const TerConfig& cfg) {
  require_pairs(pairs, "TER");
  TerStats total;
  for (const auto& p : pairs) total += ter_segment_stats(p, cfg);
  return total.score();
}

}  // namespace t2t

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

#include <cmath>
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "t2t/error.hpp"
#include "t2t/metrics.hpp"
#include "t2t/text.hpp"

namespace t2t {

std::vector<std::string> tokenize(std::string_view s) {
  std::vector<std::string> tokens;
  std::string current;
  const auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (const auto& cp : text::decode_utf8(s)) {
    const auto bytes = s.substr(cp.offset, cp.length);
    if (text::is_space(cp.value)) {
      flush();
    } else if (text::is_punct(cp.value)) {
      flush();
      tokens.emplace_back(bytes);
    } else {
      current.append(bytes);
    }
  }
  flush();
  return tokens;
}

void require_pairs(std::span<const SegmentPair> pairs, std::string_view metric) {
  if (pairs.empty()) {
    throw Error(ErrorKind::kEmptyInput, std::string(metric) + " needs at least one segment");
  }
  for (const auto& p : pairs) {
    if (p.references.empty()) {
      throw Error(ErrorKind::kPrecondition, std::string(metric) + ": segment without references");
    }
  }
}

MetricScore evaluate_all(std::span<const SegmentPair> pairs, const MetricConfigs& configs) {
  MetricScore s;
  s.bleu = corpus_bleu(pairs, configs.bleu);
  s.chrf = chrf(pairs, configs.chrf);
  s.ter = ter(pairs, configs.ter);
  s.n_segments = pairs.size();
  return s;
}

std::string score_to_json(const MetricScore& score) {
  nlohmann::ordered_json j;
  j["bleu"] = score.bleu;
  j["chrf"] = score.chrf;
  j["ter"] = score.ter;
  j["n_segments"] = score.n_segments;
  return j.dump();
}

MetricScore score_from_json(std::string_view json_text) {
  const auto j = nlohmann::json::parse(json_text);
  return {j.at("bleu").get<double>(), j.at("chrf").get<double>(), j.at("ter").get<double>(),
          j.at("n_segments").get<std::size_t>()};
}

std::string render_score_table(const MetricScore& score) {
  char buf[160];
  std::ostringstream out;
  std::snprintf(buf, sizeof buf, "%10s  %8s  %8s  %10s\n", "BLEU", "ChrF++", "TER", "segments");
  out << buf;
  std::snprintf(buf, sizeof buf, "%10.4f  %8.4f  %8.4f  %10zu\n", score.bleu, score.chrf, score.ter,
                score.n_segments);
  out << buf;
  return out.str();
}

}  // namespace t2t

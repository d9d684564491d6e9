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
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "t2t/error.hpp"
#include "t2t/language.hpp"
#include "t2t/pipeline.hpp"

namespace t2t {

namespace {

std::string fixed4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void flag_best(std::vector<ComparisonRow>& rows) {
  if (rows.empty()) return;
  double bleu = rows.front().score.bleu, chrf = rows.front().score.chrf, ter = rows.front().score.ter;
  for (const auto& r : rows) {
    bleu = std::max(bleu, r.score.bleu);
    chrf = std::max(chrf, r.score.chrf);
    ter = std::min(ter, r.score.ter);
  }
  for (auto& r : rows) {
    r.best_bleu = r.score.bleu == bleu;
    r.best_chrf = r.score.chrf == chrf;
    r.best_ter = r.score.ter == ter;
  }
}

}  // namespace

std::vector<BaselineRow> load_baselines(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read baselines file " + path.string());
  std::vector<BaselineRow> out;
  try {
    const auto doc = nlohmann::json::parse(in);
    for (const auto& row : doc.at("baselines")) {
      BaselineRow b{LanguageCode(row.at("language").get<std::string>()), row.at("label").get<std::string>(), {}};
      b.score.bleu = row.at("bleu").get<double>();
      b.score.chrf = row.at("chrf").get<double>();
      b.score.ter = row.at("ter").get<double>();
      out.push_back(std::move(b));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kParse, path.string() + ": " + e.what());
  }
  return out;
}

ComparisonTable compare(const ReportMap& reports, std::span<const BaselineRow> baselines) {
  std::set<LanguageCode> present;
  for (const auto& [key, score] : reports) present.insert(key.first);

  // Registry order first, then anything unregistered in code order.
  std::vector<LanguageCode> order;
  for (const auto& code : LanguageRegistry::global().codes()) {
    if (present.erase(code) > 0) order.push_back(code);
  }
  order.insert(order.end(), present.begin(), present.end());

  ComparisonTable table;
  for (const auto& language : order) {
    LanguageBlock block{language, {}};
    for (const auto v : kAllVariants) {
      const auto it = reports.find({language, v});
      if (it != reports.end()) block.rows.push_back({variant_label(v, language), it->second});
    }
    for (const auto& b : baselines) {
      if (b.language == language) block.rows.push_back({b.label, b.score, true});
    }
    flag_best(block.rows);
    table.blocks.push_back(std::move(block));
  }
  return table;
}

std::string render_text(const ComparisonTable& table) {
  std::size_t lang_w = 8, method_w = 6;
  for (const auto& block : table.blocks) {
    lang_w = std::max(lang_w, display_name(block.language).size());
    for (const auto& r : block.rows) method_w = std::max(method_w, r.method.size());
  }
  auto pad = [](std::string s, std::size_t w) {
    s.resize(std::max(s.size(), w), ' ');
    return s;
  };
  auto cell = [&](double v, bool best) { return pad(fixed4(v) + (best ? "*" : ""), 10); };

  std::ostringstream out;
  const std::string header =
      pad("Language", lang_w) + "  " + pad("Method", method_w) + "  " + pad("BLEU", 10) + pad("ChrF++", 10) + "TER";
  out << header << '\n' << std::string(header.size() + 7, '-') << '\n';
  for (const auto& block : table.blocks) {
    bool first = true;
    for (const auto& r : block.rows) {
      if (r.is_baseline && !first) out << pad("", lang_w) << "  " << std::string(method_w + 27, '-') << '\n';
      std::string line = pad(first ? display_name(block.language) : "", lang_w) + "  " + pad(r.method, method_w) +
                         "  " + cell(r.score.bleu, r.best_bleu) + cell(r.score.chrf, r.best_chrf) +
                         fixed4(r.score.ter) + (r.best_ter ? "*" : "");
      out << line << '\n';
      first = false;
    }
  }
  out << "* best value per column within a language (BLEU, ChrF++ higher is better; TER lower is better)\n";
  return out.str();
}

std::string render_csv(const ComparisonTable& table) {
  std::ostringstream out;
  out << "language,method,bleu,chrf,ter,baseline,best_bleu,best_chrf,best_ter\n";
  for (const auto& block : table.blocks) {
    for (const auto& r : block.rows) {
      out << block.language.str() << ',' << csv_field(r.method) << ',' << fixed4(r.score.bleu) << ','
          << fixed4(r.score.chrf) << ',' << fixed4(r.score.ter) << ',' << r.is_baseline << ',' << r.best_bleu << ','
          << r.best_chrf << ',' << r.best_ter << '\n';
    }
  }
  return out.str();
}

std::string render_json(const ComparisonTable& table) {
  ordered_json blocks = ordered_json::array();
  for (const auto& block : table.blocks) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : block.rows) {
      rows.push_back({{"method", r.method},
                      {"bleu", r.score.bleu},
                      {"chrf", r.score.chrf},
                      {"ter", r.score.ter},
                      {"n_segments", r.score.n_segments},
                      {"baseline", r.is_baseline},
                      {"best", {{"bleu", r.best_bleu}, {"chrf", r.best_chrf}, {"ter", r.best_ter}}}});
    }
    blocks.push_back({{"language", block.language.str()},
                      {"language_name", display_name(block.language)},
                      {"rows", std::move(rows)}});
  }
  return ordered_json{{"blocks", std::move(blocks)}}.dump(2) + "\n";
}

}  // namespace t2t

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

#include <string>
#include <string_view>
#include <vector>

namespace t2t {

struct CleanText {
  std::string text;
  // Names of the steps that changed the text, in application order.
  std::vector<std::string> applied_steps;

  bool operator==(const CleanText&) const = default;
};

// Replaces &quot; &amp; &apos; &lt; &gt; &#39; (and bare &quot / &amp)
// repeatedly until no entity of the table is left, so &amp;quot; becomes ".
std::string decode_html_entities(std::string_view text);

// Each underscore becomes a space; space runs containing one collapse to
// a single space.
std::string replace_underscores(std::string_view text);

// True if the trimmed text opens with a quote whose matching close is the
// final character, i.e. one quotation spans the whole text.
bool wraps_entire_text(std::string_view text);

// Removes a quote pair that wraps the entire text. Applied until the text is
// no longer wrapped, so the result never satisfies wraps_entire_text().
std::string strip_wrapping_quotes(std::string_view text);

// decode_html_entities -> replace_underscores -> strip_wrapping_quotes.
CleanText postprocess(std::string_view text);

// True if `text` still contains an entity from the decode table.
bool contains_html_entity(std::string_view text);

}  // namespace t2t

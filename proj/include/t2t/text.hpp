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

// Small UTF-8 helpers shared by the corpus reader, postprocessing and the
// metric tokenizers. Invalid byte sequences decode to U+FFFD one byte at a
// time, so no input is ever rejected.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace t2t::text {

struct CodePoint {
  char32_t value;
  std::size_t offset;  // byte offset of the first byte
  std::size_t length;  // encoded length in bytes
};

std::vector<CodePoint> decode_utf8(std::string_view s);
void append_utf8(std::string& out, char32_t cp);

bool is_space(char32_t cp);
bool is_punct(char32_t cp);
bool is_alnum(char32_t cp);

// Lowercases ASCII, Latin-1 and Latin Extended-A, which covers the letters
// of every registered language. Other code points pass through.
char32_t to_lower(char32_t cp);
std::string lowercase(std::string_view s);

// Trims Unicode whitespace from both ends.
std::string_view trim(std::string_view s);

}  // namespace t2t::text

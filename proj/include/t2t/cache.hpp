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

#include <array>
#include <filesystem>
#include <mutex>
#include <optional>
#include <vector>

#include "t2t/backends.hpp"

namespace t2t {

// One file per key under `dir`, named by the key's hex digest. The body is
// {"checksum": sha256(record json), "record": {...}}; files are written to a
// temporary name and renamed, so readers never see a partial entry.
class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir);

  const std::filesystem::path& dir() const { return dir_; }

  // Absent if never stored. Throws CacheCorrupt if the entry fails its
  // checksum or does not belong to `key`.
  std::optional<CompletionRecord> lookup(const CacheKey& key) const;
  void store(const CompletionRecord& record);

  std::vector<CacheKey> keys() const;
  bool remove(const CacheKey& key);
  std::size_t clear();

 private:
  std::filesystem::path path_for(const CacheKey& key) const;
  std::mutex& stripe(const CacheKey& key) const;

  std::filesystem::path dir_;
  mutable std::array<std::mutex, 64> stripes_;
};

}  // namespace t2t

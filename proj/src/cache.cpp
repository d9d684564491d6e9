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

#include "t2t/cache.hpp"

#include <atomic>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include <unistd.h>

#include "t2t/digest.hpp"
#include "t2t/error.hpp"

namespace t2t {

namespace fs = std::filesystem;

namespace {

bool is_hex_digest(const std::string& name) {
  return name.size() == 64 &&
         name.find_first_not_of("0123456789abcdef") == std::string::npos;
}

std::string temp_suffix() {
  static std::atomic<unsigned long> counter{0};
  std::ostringstream s;
  s << ".tmp." << ::getpid() << "." << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "."
    << counter.fetch_add(1);
  return s.str();
}

}  // namespace

ResponseCache::ResponseCache(fs::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) throw Error(ErrorKind::kIo, "cannot create cache directory " + dir_.string() + ": " + ec.message());
}

fs::path ResponseCache::path_for(const CacheKey& key) const { return dir_ / key.hex; }

std::mutex& ResponseCache::stripe(const CacheKey& key) const {
  return stripes_[std::hash<std::string>{}(key.hex) % stripes_.size()];
}

std::optional<CompletionRecord> ResponseCache::lookup(const CacheKey& key) const {
  const fs::path path = path_for(key);
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::stringstream body;
  body << in.rdbuf();
  const auto corrupt = [&](const std::string& why) {
    return Error(ErrorKind::kCacheCorrupt, "cache entry " + path.string() + ": " + why);
  };
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body.str());
  } catch (const nlohmann::json::exception& e) {
    throw corrupt(e.what());
  }
  if (!doc.is_object() || !doc.contains("checksum") || !doc.contains("record")) {
    throw corrupt("missing checksum or record");
  }
  CompletionRecord record;
  try {
    record = completion_record_from_json(doc.at("record"));
  } catch (const std::exception& e) {
    throw corrupt(e.what());
  }
  if (sha256_hex(to_json(record).dump()) != doc.at("checksum").get<std::string>()) {
    throw corrupt("checksum mismatch");
  }
  if (cache_key(record) != key) throw corrupt("record does not belong to this key");
  return record;
}

void ResponseCache::store(const CompletionRecord& record) {
  const CacheKey key = cache_key(record);
  const std::string payload = to_json(record).dump();
  ordered_json doc;
  doc["checksum"] = sha256_hex(payload);
  doc["record"] = to_json(record);

  std::lock_guard lock(stripe(key));
  const fs::path final_path = path_for(key);
  fs::path tmp = final_path;
  tmp += temp_suffix();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::kIo, "cannot write cache entry " + tmp.string());
    out << doc.dump();
    out.flush();
    if (!out) throw Error(ErrorKind::kIo, "short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, final_path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorKind::kIo, "cannot publish cache entry " + final_path.string());
  }
}

std::vector<CacheKey> ResponseCache::keys() const {
  std::vector<CacheKey> out;
  for (const auto& item : fs::directory_iterator(dir_)) {
    const std::string name = item.path().filename().string();
    if (item.is_regular_file() && is_hex_digest(name)) out.push_back({name});
  }
  std::sort(out.begin(), out.end(), [](const CacheKey& a, const CacheKey& b) { return a.hex < b.hex; });
  return out;
}

bool ResponseCache::remove(const CacheKey& key) {
  std::lock_guard lock(stripe(key));
  std::error_code ec;
  return fs::remove(path_for(key), ec);
}

std::size_t ResponseCache::clear() {
  std::size_t n = 0;
  for (const auto& key : keys()) n += remove(key) ? 1 : 0;
  return n;
}

}  // namespace t2t

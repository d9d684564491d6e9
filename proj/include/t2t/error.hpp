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

#include <stdexcept>
#include <string>
#include <string_view>

namespace t2t {

// Every failure the library reports carries one of these kinds so callers
// (the CLI in particular) can map them to exit codes without string matching.
enum class ErrorKind {
  kParse,
  kEmptyCorpus,
  kDuplicateId,
  kSampleTooLarge,
  kEmptyEntry,
  kNoExamples,
  kNoDefaults,
  kAuth,
  kRateLimited,
  kTransport,
  kBackendRefused,
  kUnsupportedLanguage,
  kPrecondition,
  kCacheCorrupt,
  kEmptyInput,
  kEmptyReference,
  kNoReferences,
  kConfig,
  kIo,
};

std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind), cause_(kind) {}
  // A ConfigError (say) raised because of an underlying UnsupportedLanguage.
  Error(ErrorKind kind, ErrorKind cause, const std::string& message)
      : std::runtime_error(message), kind_(kind), cause_(cause) {}

  ErrorKind kind() const { return kind_; }
  ErrorKind cause() const { return cause_; }

  // True for failures a live backend call may recover from on retry.
  bool transient() const {
    return kind_ == ErrorKind::kRateLimited || kind_ == ErrorKind::kTransport;
  }

 private:
  ErrorKind kind_;
  ErrorKind cause_;
};

}  // namespace t2t

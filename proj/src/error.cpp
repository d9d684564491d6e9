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

#include "t2t/error.hpp"

namespace t2t {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kEmptyCorpus: return "EmptyCorpus";
    case ErrorKind::kDuplicateId: return "DuplicateId";
    case ErrorKind::kSampleTooLarge: return "SampleTooLarge";
    case ErrorKind::kEmptyEntry: return "EmptyEntry";
    case ErrorKind::kNoExamples: return "NoExamples";
    case ErrorKind::kNoDefaults: return "NoDefaults";
    case ErrorKind::kAuth: return "AuthError";
    case ErrorKind::kRateLimited: return "RateLimited";
    case ErrorKind::kTransport: return "TransportError";
    case ErrorKind::kBackendRefused: return "BackendRefused";
    case ErrorKind::kUnsupportedLanguage: return "UnsupportedLanguage";
    case ErrorKind::kPrecondition: return "PreconditionViolation";
    case ErrorKind::kCacheCorrupt: return "CacheCorrupt";
    case ErrorKind::kEmptyInput: return "EmptyInput";
    case ErrorKind::kEmptyReference: return "EmptyReference";
    case ErrorKind::kNoReferences: return "NoReferences";
    case ErrorKind::kConfig: return "ConfigError";
    case ErrorKind::kIo: return "IoError";
  }
  return "Error";
}

}  // namespace t2t

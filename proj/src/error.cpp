// Copyright 2026 tsgen contributors
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

#include "tsgen/error.hpp"

namespace tsgen {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return "io-error";
    case ErrorKind::kEncoding: return "encoding-error";
    case ErrorKind::kLineCountMismatch: return "line-count-mismatch";
    case ErrorKind::kReservedToken: return "reserved-token";
    case ErrorKind::kFieldCount: return "field-count";
    case ErrorKind::kEmptyField: return "empty-field";
    case ErrorKind::kBadToken: return "bad-token";
    case ErrorKind::kMissingMask: return "missing-mask";
    case ErrorKind::kMultipleMask: return "multiple-mask";
    case ErrorKind::kBadNumber: return "bad-number";
    case ErrorKind::kSpanOutOfBounds: return "span-out-of-bounds";
    case ErrorKind::kReconstruction: return "reconstruction-failure";
    case ErrorKind::kBadOrigin: return "bad-origin";
    case ErrorKind::kEmptyInput: return "empty-input";
    case ErrorKind::kUnsampleable: return "unsampleable";
    case ErrorKind::kScoreLengthMismatch: return "score-length-mismatch";
    case ErrorKind::kScoreRange: return "score-range";
    case ErrorKind::kSingleClass: return "single-class";
    case ErrorKind::kNotEnoughNegatives: return "not-enough-negatives";
    case ErrorKind::kLengthMismatch: return "length-mismatch";
    case ErrorKind::kBadFormat: return "bad-format";
    case ErrorKind::kConfig: return "config-error";
  }
  return "unknown-error";
}

}  // namespace tsgen

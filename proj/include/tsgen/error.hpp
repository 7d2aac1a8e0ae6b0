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

#ifndef TSGEN_ERROR_HPP
#define TSGEN_ERROR_HPP

#include <stdexcept>
#include <string>

namespace tsgen {

// Every failure the library can raise carries one of these kinds so callers
// (and tests) can tell malformed data apart from misuse or I/O trouble.
enum class ErrorKind {
  kIo,                  // file missing / unreadable / unwritable
  kEncoding,            // byte sequence is not valid UTF-8
  kLineCountMismatch,   // paired line files differ in length
  kReservedToken,       // input text contains [MASK] or [SEP] as a token
  kFieldCount,          // TSV line has the wrong number of fields
  kEmptyField,          // a field that must hold tokens is empty
  kBadToken,            // token is empty or contains whitespace
  kMissingMask,         // masked target has no [MASK] placeholder
  kMultipleMask,        // masked target has more than one [MASK]
  kBadNumber,           // span field is not a valid integer
  kSpanOutOfBounds,     // span inconsistent with the masked sentence
  kReconstruction,      // golden/pseudo suggestion cannot rebuild the target
  kBadOrigin,           // origin field is not golden/pseudo/qe
  kEmptyInput,          // operation needs a non-empty corpus / list
  kUnsampleable,        // no span length fits the sentence
  kScoreLengthMismatch, // external score line length != sentence length
  kScoreRange,          // external score outside [0,1]
  kSingleClass,         // discriminator training set has one label only
  kNotEnoughNegatives,  // synthetic corpus smaller than required subsample
  kLengthMismatch,      // paired lists differ in length (e.g. BLEU inputs)
  kBadFormat,           // persisted model/dist file is corrupt or wrong version
  kConfig,              // unknown or invalid configuration key/value
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + msg),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace tsgen

#endif  // TSGEN_ERROR_HPP

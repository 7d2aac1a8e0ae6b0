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

#ifndef TSGEN_RECORD_HPP
#define TSGEN_RECORD_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tsgen {

inline constexpr std::string_view kMaskToken = "[MASK]";
inline constexpr std::string_view kSepToken = "[SEP]";

enum class Origin { kGolden, kPseudo, kQe };

const char* origin_name(Origin origin);
Origin origin_from_name(std::string_view name);  // throws Error(kBadOrigin)

// Inclusive token index range into the unmasked target sentence.
struct Span {
  int64_t start = 0;
  int64_t end = 0;

  int64_t length() const { return end - start + 1; }
  bool operator==(const Span&) const = default;
};

// One training example: a source sentence, a target sentence with exactly one
// [MASK] covering the span, and the suggestion that belongs in the mask. For
// golden/pseudo origins the suggestion is the masked-out segment itself, so
// splicing it back reproduces the original target; for qe origin the
// suggestion comes from the reference and its length may differ from the
// span's.
struct TSRecord {
  std::vector<std::string> src_tokens;
  std::vector<std::string> masked_tgt_tokens;
  std::vector<std::string> suggestion_tokens;
  Span span;
  Origin origin = Origin::kGolden;

  // Length of the target sentence the mask was cut from.
  int64_t original_target_length() const {
    return static_cast<int64_t>(masked_tgt_tokens.size()) - 1 + span_length();
  }

  int64_t span_length() const { return span.length(); }

  // Masked target with the suggestion spliced into the [MASK] slot.
  std::vector<std::string> reconstruct_target() const;

  // Checks every invariant; throws Error with the specific kind on failure.
  void validate() const;

  bool operator==(const TSRecord&) const = default;
};

// Tab-separated single line: source, masked target, suggestion, span start,
// span end, origin. Tokens joined by single spaces. The record is validated
// first.
std::string serialize_record(const TSRecord& record);

// Inverse of serialize_record; validates all invariants. Error kinds:
// kFieldCount, kEmptyField, kBadToken, kMissingMask, kMultipleMask,
// kBadNumber, kSpanOutOfBounds, kReconstruction, kBadOrigin, kReservedToken.
TSRecord parse_record(std::string_view line);

// The spliced seq2seq pair: (src + [SEP] + masked target, suggestion).
std::pair<std::vector<std::string>, std::vector<std::string>>
build_model_input(const TSRecord& record);

}  // namespace tsgen

#endif  // TSGEN_RECORD_HPP

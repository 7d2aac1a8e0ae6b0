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

#include "tsgen/record.hpp"

#include <charconv>

#include "tsgen/error.hpp"
#include "tsgen/text.hpp"

namespace tsgen {

namespace {

// Tokens travel through space- and tab-delimited formats, so they may not
// contain either, and the mask/separator literals are reserved for their
// structural slots.
void check_token(const std::string& tok, const char* field, bool allow_mask) {
  if (tok.empty())
    throw Error(ErrorKind::kBadToken, std::string(field) + ": empty token");
  for (char c : tok) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r')
      throw Error(ErrorKind::kBadToken,
                  std::string(field) + ": token contains whitespace");
  }
  if (tok == kSepToken)
    throw Error(ErrorKind::kReservedToken,
                std::string(field) + ": contains reserved token " + tok);
  if (!allow_mask && tok == kMaskToken)
    throw Error(ErrorKind::kReservedToken,
                std::string(field) + ": contains reserved token " + tok);
}

int64_t parse_int_field(std::string_view field, const char* name) {
  int64_t value = 0;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw Error(ErrorKind::kBadNumber, std::string(name) + ": not an integer: '" +
                                           std::string(field) + "'");
  return value;
}

}  // namespace

const char* origin_name(Origin origin) {
  switch (origin) {
    case Origin::kGolden: return "golden";
    case Origin::kPseudo: return "pseudo";
    case Origin::kQe: return "qe";
  }
  return "?";
}

Origin origin_from_name(std::string_view name) {
  if (name == "golden") return Origin::kGolden;
  if (name == "pseudo") return Origin::kPseudo;
  if (name == "qe") return Origin::kQe;
  throw Error(ErrorKind::kBadOrigin, "unknown origin '" + std::string(name) + "'");
}

std::vector<std::string> TSRecord::reconstruct_target() const {
  std::vector<std::string> out;
  out.reserve(original_target_length());
  for (const auto& tok : masked_tgt_tokens) {
    if (tok == kMaskToken) {
      out.insert(out.end(), suggestion_tokens.begin(), suggestion_tokens.end());
    } else {
      out.push_back(tok);
    }
  }
  return out;
}

void TSRecord::validate() const {
  if (src_tokens.empty())
    throw Error(ErrorKind::kEmptyField, "source is empty");
  if (masked_tgt_tokens.empty())
    throw Error(ErrorKind::kEmptyField, "masked target is empty");
  if (suggestion_tokens.empty())
    throw Error(ErrorKind::kEmptyField, "suggestion is empty");

  for (const auto& tok : src_tokens) check_token(tok, "source", false);
  for (const auto& tok : masked_tgt_tokens)
    check_token(tok, "masked target", true);
  for (const auto& tok : suggestion_tokens)
    check_token(tok, "suggestion", false);

  int64_t mask_index = -1;
  for (size_t i = 0; i < masked_tgt_tokens.size(); ++i) {
    if (masked_tgt_tokens[i] == kMaskToken) {
      if (mask_index >= 0)
        throw Error(ErrorKind::kMultipleMask,
                    "masked target contains more than one " +
                        std::string(kMaskToken));
      mask_index = static_cast<int64_t>(i);
    }
  }
  if (mask_index < 0)
    throw Error(ErrorKind::kMissingMask,
                "masked target contains no " + std::string(kMaskToken));

  if (span.start < 0 || span.end < span.start)
    throw Error(ErrorKind::kSpanOutOfBounds,
                "span (" + std::to_string(span.start) + "," +
                    std::to_string(span.end) + ") is not a valid range");
  // The tokens before the mask are exactly target[0..start), so the mask
  // must sit at index start.
  if (mask_index != span.start)
    throw Error(ErrorKind::kSpanOutOfBounds,
                "span start " + std::to_string(span.start) +
                    " disagrees with mask position " +
                    std::to_string(mask_index));
  if (span.end >= original_target_length())
    throw Error(ErrorKind::kSpanOutOfBounds,
                "span end " + std::to_string(span.end) +
                    " exceeds target length " +
                    std::to_string(original_target_length()));

  if (origin != Origin::kQe &&
      static_cast<int64_t>(suggestion_tokens.size()) != span_length())
    throw Error(ErrorKind::kReconstruction,
                std::string(origin_name(origin)) + " record: span covers " +
                    std::to_string(span_length()) + " tokens but suggestion has " +
                    std::to_string(suggestion_tokens.size()));
}

std::string serialize_record(const TSRecord& record) {
  record.validate();
  std::string line = join_tokens(record.src_tokens);
  line.push_back('\t');
  line += join_tokens(record.masked_tgt_tokens);
  line.push_back('\t');
  line += join_tokens(record.suggestion_tokens);
  line.push_back('\t');
  line += std::to_string(record.span.start);
  line.push_back('\t');
  line += std::to_string(record.span.end);
  line.push_back('\t');
  line += origin_name(record.origin);
  return line;
}

TSRecord parse_record(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t pos = 0;
  for (;;) {
    const size_t tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      break;
    }
    fields.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
  if (fields.size() != 6)
    throw Error(ErrorKind::kFieldCount, "expected 6 tab-separated fields, got " +
                                            std::to_string(fields.size()));

  TSRecord record;
  record.src_tokens = split_tokens(fields[0]);
  record.masked_tgt_tokens = split_tokens(fields[1]);
  record.suggestion_tokens = split_tokens(fields[2]);
  record.span.start = parse_int_field(fields[3], "span start");
  record.span.end = parse_int_field(fields[4], "span end");
  record.origin = origin_from_name(fields[5]);
  record.validate();
  return record;
}

std::pair<std::vector<std::string>, std::vector<std::string>>
build_model_input(const TSRecord& record) {
  std::vector<std::string> input;
  input.reserve(record.src_tokens.size() + 1 + record.masked_tgt_tokens.size());
  input.insert(input.end(), record.src_tokens.begin(), record.src_tokens.end());
  input.emplace_back(kSepToken);
  input.insert(input.end(), record.masked_tgt_tokens.begin(),
               record.masked_tgt_tokens.end());
  return {std::move(input), record.suggestion_tokens};
}

}  // namespace tsgen

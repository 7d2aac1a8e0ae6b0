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

#ifndef TSGEN_TEXT_HPP
#define TSGEN_TEXT_HPP

#include <string>
#include <string_view>
#include <vector>

namespace tsgen {

// True for code points in the Unicode general categories Pc Pd Pe Pf Pi Po Ps.
bool is_punct_codepoint(char32_t cp);

// True for code points with the Unicode White_Space property.
bool is_space_codepoint(char32_t cp);

// Splits on whitespace and breaks punctuation code points out as standalone
// tokens. Deterministic; no characters other than whitespace are dropped.
// Throws Error(kEncoding) on malformed UTF-8.
std::vector<std::string> tokenize(std::string_view text);

// Joins tokens with single spaces.
std::string join_tokens(const std::vector<std::string>& tokens);

// Splits a pre-tokenized field on single spaces. Unlike tokenize(), no
// punctuation handling; an empty input yields an empty list. Throws
// Error(kBadToken) if a double space implies an empty token.
std::vector<std::string> split_tokens(std::string_view field);

}  // namespace tsgen

#endif  // TSGEN_TEXT_HPP

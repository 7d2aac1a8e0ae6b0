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

#include "tsgen/corpus.hpp"

#include "tsgen/error.hpp"
#include "tsgen/record.hpp"
#include "tsgen/text.hpp"

namespace tsgen {

ParallelReader::ParallelReader(const std::string& src_path,
                               const std::string& tgt_path)
    : src_(src_path), tgt_(tgt_path) {}

std::vector<std::string> ParallelReader::tokenize_line(
    const std::string& line, const std::string& path, int64_t line_no) const {
  std::vector<std::string> tokens;
  try {
    tokens = tokenize(line);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kEncoding) throw;
    throw Error(ErrorKind::kEncoding,
                path + ":" + std::to_string(line_no) + ": " + e.what());
  }
  for (const auto& tok : tokens) {
    if (tok == kMaskToken || tok == kSepToken)
      throw Error(ErrorKind::kReservedToken,
                  path + ":" + std::to_string(line_no) +
                      ": input contains reserved token " + tok);
  }
  return tokens;
}

std::optional<ParallelPair> ParallelReader::next() {
  for (;;) {
    auto src_line = src_.next();
    auto tgt_line = tgt_.next();
    if (!src_line && !tgt_line) return std::nullopt;
    if (!src_line || !tgt_line) {
      // Drain the longer file so the error can name both totals.
      int64_t src_count = src_.line_no();
      int64_t tgt_count = tgt_.line_no();
      while (src_.next()) src_count = src_.line_no();
      while (tgt_.next()) tgt_count = tgt_.line_no();
      throw Error(ErrorKind::kLineCountMismatch,
                  src_.path() + " has " + std::to_string(src_count) +
                      " lines but " + tgt_.path() + " has " +
                      std::to_string(tgt_count));
    }
    ParallelPair pair;
    pair.src_tokens = tokenize_line(*src_line, src_.path(), src_.line_no());
    pair.tgt_tokens = tokenize_line(*tgt_line, tgt_.path(), tgt_.line_no());
    if (pair.src_tokens.empty() || pair.tgt_tokens.empty()) {
      ++skipped_;
      continue;
    }
    pair.id = next_id_++;
    return pair;
  }
}

std::vector<ParallelPair> read_parallel(const std::string& src_path,
                                        const std::string& tgt_path,
                                        int64_t* skipped) {
  ParallelReader reader(src_path, tgt_path);
  std::vector<ParallelPair> pairs;
  while (auto pair = reader.next()) pairs.push_back(std::move(*pair));
  if (skipped) *skipped = reader.skipped();
  return pairs;
}

}  // namespace tsgen

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

#ifndef TSGEN_CORPUS_HPP
#define TSGEN_CORPUS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsgen/io_util.hpp"

namespace tsgen {

// One sentence pair from an aligned line-file corpus. The target side is a
// reference or an MT output depending on the corpus role.
struct ParallelPair {
  int64_t id = 0;
  std::vector<std::string> src_tokens;
  std::vector<std::string> tgt_tokens;

  bool operator==(const ParallelPair&) const = default;
};

// Streams tokenized pairs from two aligned one-sentence-per-line files.
// Pairs where either side tokenizes to empty are skipped and counted; ids
// are sequential over the yielded pairs. A line-count mismatch raises
// Error(kLineCountMismatch) naming both counts; a line that is not valid
// UTF-8 raises Error(kEncoding) with its line number; a line containing the
// reserved [MASK]/[SEP] literals as tokens raises Error(kReservedToken).
class ParallelReader {
 public:
  ParallelReader(const std::string& src_path, const std::string& tgt_path);

  std::optional<ParallelPair> next();

  int64_t skipped() const { return skipped_; }

 private:
  std::vector<std::string> tokenize_line(const std::string& line,
                                         const std::string& path,
                                         int64_t line_no) const;

  LineReader src_;
  LineReader tgt_;
  int64_t next_id_ = 0;
  int64_t skipped_ = 0;
};

std::vector<ParallelPair> read_parallel(const std::string& src_path,
                                        const std::string& tgt_path,
                                        int64_t* skipped = nullptr);

}  // namespace tsgen

#endif  // TSGEN_CORPUS_HPP

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

#ifndef TSGEN_BLEU_HPP
#define TSGEN_BLEU_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace tsgen {

struct BleuResult {
  double score = 0.0;  // in [0, 100]
  std::array<double, 4> precisions{};
  double brevity_penalty = 1.0;
  int64_t hyp_len = 0;
  int64_t ref_len = 0;
  std::array<int64_t, 4> matches{};
  std::array<int64_t, 4> totals{};
  bool smoothed = false;

  std::string to_json() const;
};

// Corpus BLEU over pre-tokenized segments, one reference per hypothesis:
// clipped n-gram precisions p1..p4 pooled over segments, geometric mean,
// brevity penalty exp(1 - r/c) when c < r. With smoothing off, an empty
// match pool at any order gives score 0; add-one smoothing uses
// (matches+1)/(totals+1) instead.
BleuResult corpus_bleu(const std::vector<std::vector<std::string>>& hyps,
                       const std::vector<std::vector<std::string>>& refs,
                       bool add_one_smoothing = false);

}  // namespace tsgen

#endif  // TSGEN_BLEU_HPP

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

#ifndef TSGEN_LEXICON_HPP
#define TSGEN_LEXICON_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tsgen/corpus.hpp"
#include "tsgen/vocab.hpp"

namespace tsgen {

struct TrainLexiconOptions;
struct TrainLexiconResult;
TrainLexiconResult train_lexicon(const std::vector<ParallelPair>& pairs,
                                 const TrainLexiconOptions& opts);

// Word-translation probabilities p(t|s) from IBM Model 1 EM, with a
// distinguished NULL source token at id 0. Rows renormalize to 1 after every
// EM iteration (and after pruning).
class LexiconTable {
 public:
  static constexpr uint32_t kNullId = 0;
  static constexpr std::string_view kNullWord = "<NULL>";

  LexiconTable();

  double prob(std::string_view src, std::string_view tgt) const;
  double null_prob(std::string_view tgt) const;

  // Fast id-based access. prob_by_id(kNullId, t) is the NULL row.
  double prob_by_id(uint32_t src_id, uint32_t tgt_id) const;
  std::optional<uint32_t> source_id(std::string_view src) const;
  std::optional<uint32_t> target_id(std::string_view tgt) const;

  // Drops entries below min_prob, then renormalizes each surviving row.
  void prune(double min_prob);

  // TSV rows "s \t t \t p" sorted by (s, descending p, t); NULL spelled
  // <NULL> (a literal our tokenizer can never produce).
  void save_tsv(const std::string& path) const;
  static LexiconTable load_tsv(const std::string& path);

  double row_sum(uint32_t src_id) const;
  uint32_t source_vocab_size() const { return src_vocab_.size(); }
  uint32_t target_vocab_size() const { return tgt_vocab_.size(); }

 private:
  friend struct LexiconBuilder;
  friend TrainLexiconResult train_lexicon(const std::vector<ParallelPair>&,
                                          const TrainLexiconOptions&);

  Vocab src_vocab_;  // id 0 is <NULL>
  Vocab tgt_vocab_;
  std::vector<std::unordered_map<uint32_t, double>> rows_;
};

struct TrainLexiconOptions {
  int iterations = 5;
  double prune_threshold = 1e-6;
  int threads = 1;
};

struct TrainLexiconResult {
  LexiconTable lexicon;
  // Corpus log-likelihood under the parameters entering each iteration;
  // EM makes this non-decreasing.
  std::vector<double> log_likelihood;
};

// IBM Model 1 expectation maximization over p(tgt|src). Initialization is
// uniform per row over co-occurring targets (NULL co-occurs with every
// target token). Throws Error(kEmptyInput) on an empty corpus.
TrainLexiconResult train_lexicon(const std::vector<ParallelPair>& pairs,
                                 const TrainLexiconOptions& opts);

inline TrainLexiconResult train_lexicon(const std::vector<ParallelPair>& pairs) {
  return train_lexicon(pairs, TrainLexiconOptions{});
}

// Builds a table from explicit (source, target, p) entries; rows must sum
// to 1. Source <NULL> addresses the NULL row.
LexiconTable make_lexicon(
    const std::vector<std::tuple<std::string, std::string, double>>& entries);

// Word alignment links (i = MT index, j = reference index); each MT index
// appears at most once, links sorted by i.
struct AlignmentLinks {
  std::vector<std::pair<int32_t, int32_t>> links;

  bool operator==(const AlignmentLinks&) const = default;
};

// Links each MT token i to argmax_j p(ref_j | mt_i). The token stays
// unlinked when it is unseen, when every candidate has zero probability, or
// when the NULL row explains the chosen reference token at least as well.
// Ties between reference positions break toward the smallest j.
AlignmentLinks align(const std::vector<std::string>& mt_tokens,
                     const std::vector<std::string>& ref_tokens,
                     const LexiconTable& lexicon);

// Keeps pairs whose sides both have length in [min_len, max_len]; if cap > 0
// uniformly subsamples to at most cap pairs (fixed seed, input order kept).
std::vector<ParallelPair> filter_for_alignment(
    const std::vector<ParallelPair>& pairs, int64_t min_len = 5,
    int64_t max_len = 100, int64_t cap = 0, uint64_t seed = 0);

// Pharaoh text format: links "i-j" separated by single spaces.
std::string links_to_pharaoh(const AlignmentLinks& links);
AlignmentLinks pharaoh_to_links(std::string_view line);  // validates format

}  // namespace tsgen

#endif  // TSGEN_LEXICON_HPP

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

#include <doctest.h>

#include <algorithm>

#include "support/bleu_oracle.hpp"
#include "support/toygen.hpp"
#include "tsgen/bleu.hpp"
#include "tsgen/error.hpp"
#include "tsgen/stats.hpp"

using namespace tsgen;

namespace {
using Segs = std::vector<std::vector<std::string>>;
}

TEST_CASE("identity corpus scores exactly 100") {
  Segs hyps = {{"a", "b", "c"}, {"d", "e"}, {"f", "g", "h", "i", "j"}};
  auto result = corpus_bleu(hyps, hyps);
  CHECK(result.score == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(result.brevity_penalty == 1.0);
  for (double p : result.precisions) CHECK(p == 1.0);
}

TEST_CASE("clipping: the the the the vs the cat") {
  Segs hyps = {{"the", "the", "the", "the"}};
  Segs refs = {{"the", "cat"}};
  auto result = corpus_bleu(hyps, refs);
  CHECK(result.precisions[0] == doctest::Approx(0.25));
  CHECK(result.precisions[1] == 0.0);
  CHECK(result.score == 0.0);
  CHECK(result.brevity_penalty == 1.0);  // hyp longer than ref

  auto smoothed = corpus_bleu(hyps, refs, true);
  CHECK(smoothed.score > 0.0);
}

TEST_CASE("mixed mini-corpora match the brute-force oracle within 0.01") {
  const Segs hyps1 = {{"the", "cat", "sat", "on", "the", "mat"},
                      {"a", "quick", "brown", "fox"},
                      {"hello", "world", "again"}};
  const Segs refs1 = {{"the", "cat", "sat", "on", "a", "mat"},
                      {"the", "quick", "brown", "fox", "jumps"},
                      {"hello", "there", "world"}};
  CHECK(corpus_bleu(hyps1, refs1).score ==
        doctest::Approx(oracles::bleu_oracle(hyps1, refs1)).epsilon(1e-4));

  // Generated corpora with partial overlaps.
  Rng rng(99);
  for (int corpus_idx = 0; corpus_idx < 2; ++corpus_idx) {
    Segs hyps, refs;
    for (int seg = 0; seg < 20; ++seg) {
      const int n = 4 + static_cast<int>(rng.bounded(8));
      std::vector<std::string> ref;
      for (int k = 0; k < n; ++k)
        ref.push_back(toygen::index_word("w", static_cast<int>(rng.bounded(12))));
      std::vector<std::string> hyp = ref;
      const int edits = static_cast<int>(rng.bounded(3));
      for (int e = 0; e < edits; ++e)
        hyp[rng.bounded(hyp.size())] =
            toygen::index_word("w", static_cast<int>(rng.bounded(12)));
      if (rng.bounded(2)) hyp.pop_back();
      refs.push_back(std::move(ref));
      hyps.push_back(std::move(hyp));
    }
    const double mine = corpus_bleu(hyps, refs).score;
    const double oracle = oracles::bleu_oracle(hyps, refs);
    CHECK(std::abs(mine - oracle) < 0.01);
  }
}

TEST_CASE("joint segment permutation leaves corpus BLEU unchanged") {
  Segs hyps = {{"a", "b"}, {"c", "d", "e"}, {"f"}, {"g", "h", "a", "b"}};
  Segs refs = {{"a", "x"}, {"c", "d"}, {"f", "f"}, {"g", "h", "a"}};
  const double base = corpus_bleu(hyps, refs, true).score;
  std::vector<size_t> perm = {2, 0, 3, 1};
  Segs hyps2, refs2;
  for (size_t i : perm) {
    hyps2.push_back(hyps[i]);
    refs2.push_back(refs[i]);
  }
  CHECK(corpus_bleu(hyps2, refs2, true).score == doctest::Approx(base));
}

TEST_CASE("brevity penalty is 1 when hyp length >= ref length") {
  Segs hyps = {{"a", "b", "c", "d"}};
  Segs refs = {{"a", "b"}};
  CHECK(corpus_bleu(hyps, refs, true).brevity_penalty == 1.0);
  Segs short_hyps = {{"a"}};
  Segs long_refs = {{"a", "b", "c"}};
  const auto result = corpus_bleu(short_hyps, long_refs, true);
  CHECK(result.brevity_penalty == doctest::Approx(std::exp(1.0 - 3.0)));
}

TEST_CASE("BLEU input validation") {
  try {
    corpus_bleu({{"a"}}, {});
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kLengthMismatch);
  }
  try {
    corpus_bleu({}, {});
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kEmptyInput);
  }
}

TEST_CASE("BLEU stays in [0,100] on random inputs") {
  Rng rng(1234);
  for (int trial = 0; trial < 100; ++trial) {
    Segs hyps, refs;
    const int segs = 1 + static_cast<int>(rng.bounded(5));
    for (int s = 0; s < segs; ++s) {
      auto make = [&] {
        std::vector<std::string> v;
        const int n = 1 + static_cast<int>(rng.bounded(6));
        for (int k = 0; k < n; ++k)
          v.push_back(toygen::index_word("z", static_cast<int>(rng.bounded(4))));
        return v;
      };
      hyps.push_back(make());
      refs.push_back(make());
    }
    const auto result = corpus_bleu(hyps, refs, rng.bounded(2) == 0);
    CHECK(result.score >= 0.0);
    CHECK(result.score <= 100.0);
  }
}

TEST_CASE("dataset_stats counts and histograms") {
  CHECK(dataset_stats({}).total == 0);
  CHECK(dataset_stats({}).mean_src_len() == 0.0);

  std::vector<TSRecord> records;
  auto push = [&](Origin origin, int src_len, int span_len, int sugg_len) {
    TSRecord r;
    for (int k = 0; k < src_len; ++k) r.src_tokens.push_back("s");
    r.span = {0, span_len - 1};
    r.masked_tgt_tokens = {"[MASK]", "tail"};
    for (int k = 0; k < sugg_len; ++k) r.suggestion_tokens.push_back("y");
    r.origin = origin;
    records.push_back(std::move(r));
  };
  push(Origin::kGolden, 4, 1, 1);
  push(Origin::kGolden, 6, 1, 1);
  push(Origin::kGolden, 2, 2, 2);
  push(Origin::kQe, 8, 2, 3);
  push(Origin::kQe, 10, 1, 1);

  auto stats = dataset_stats(records);
  CHECK(stats.total == 5);
  CHECK(stats.by_origin.at("golden") == 3);
  CHECK(stats.by_origin.at("qe") == 2);
  CHECK(stats.by_origin.count("pseudo") == 0);
  CHECK(stats.span_len_hist.at(1) == 3);
  CHECK(stats.span_len_hist.at(2) == 2);
  CHECK(stats.sugg_len_hist.at(3) == 1);
  CHECK(stats.mean_src_len() == doctest::Approx(6.0));
  // Report renders all three origin columns.
  const std::string table = stats.to_table();
  CHECK(table.find("golden") != std::string::npos);
  CHECK(table.find("pseudo") != std::string::npos);
  CHECK(table.find("qe") != std::string::npos);
}

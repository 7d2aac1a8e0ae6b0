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

#include <cstdio>
#include <map>

#include "support/em_oracle.hpp"
#include "support/stat_oracles.hpp"
#include "support/toygen.hpp"
#include "tsgen/error.hpp"
#include "tsgen/lexicon.hpp"

using namespace tsgen;

namespace {

ParallelPair make_pair(int64_t id, std::vector<std::string> src,
                       std::vector<std::string> tgt) {
  ParallelPair p;
  p.id = id;
  p.src_tokens = std::move(src);
  p.tgt_tokens = std::move(tgt);
  return p;
}

// The classic three-pair corpus.
std::vector<ParallelPair> koehn_corpus() {
  return {
      make_pair(0, {"das", "haus"}, {"the", "house"}),
      make_pair(1, {"das", "buch"}, {"the", "book"}),
      make_pair(2, {"ein", "buch"}, {"a", "book"}),
  };
}

}  // namespace

TEST_CASE("single repeated co-occurrence drives p(x|a) toward 1") {
  std::vector<ParallelPair> pairs;
  for (int i = 0; i < 20; ++i) pairs.push_back(make_pair(i, {"a"}, {"x"}));
  TrainLexiconOptions opts;
  opts.iterations = 20;
  auto result = train_lexicon(pairs, opts);
  CHECK(result.lexicon.prob("a", "x") > 0.95);
}

TEST_CASE("EM matches the brute-force oracle on the Koehn corpus") {
  const auto pairs = koehn_corpus();
  std::vector<std::pair<std::vector<std::string>, std::vector<std::string>>>
      oracle_pairs;
  for (const auto& p : pairs) oracle_pairs.push_back({p.src_tokens, p.tgt_tokens});

  for (int iters : {1, 3, 10, 50}) {
    TrainLexiconOptions opts;
    opts.iterations = iters;
    opts.prune_threshold = 0.0;  // compare raw EM output
    auto mine = train_lexicon(pairs, opts);
    auto oracle = oracles::ibm1_em_oracle(oracle_pairs, iters);
    for (const auto& [key, p_oracle] : oracle.probs) {
      const double p_mine = mine.lexicon.prob(key.first, key.second);
      CHECK(p_mine == doctest::Approx(p_oracle).epsilon(1e-9));
    }
    REQUIRE(mine.log_likelihood.size() == static_cast<size_t>(iters));
    for (int k = 0; k < iters; ++k)
      CHECK(mine.log_likelihood[k] ==
            doctest::Approx(oracle.log_likelihood[k]).epsilon(1e-9));
  }
}

TEST_CASE("p(the|das) increases strictly over the first 10 iterations") {
  const auto pairs = koehn_corpus();
  double prev = 0.0;
  for (int iters = 1; iters <= 10; ++iters) {
    TrainLexiconOptions opts;
    opts.iterations = iters;
    opts.prune_threshold = 0.0;
    auto result = train_lexicon(pairs, opts);
    const double p = result.lexicon.prob("das", "the");
    CHECK(p > prev);
    prev = p;
  }
  CHECK(prev > 0.5);  // heading toward 1
}

TEST_CASE("log-likelihood is non-decreasing and rows stay normalized") {
  auto pairs = toygen::bilingual_corpus(400, 60, 3);
  TrainLexiconOptions opts;
  opts.iterations = 10;
  opts.prune_threshold = 0.0;
  auto result = train_lexicon(pairs, opts);
  REQUIRE(result.log_likelihood.size() == 10);
  for (size_t k = 1; k < result.log_likelihood.size(); ++k)
    CHECK(result.log_likelihood[k] >=
          result.log_likelihood[k - 1] - 1e-9 * std::abs(result.log_likelihood[k - 1]));
  for (uint32_t s = 0; s < result.lexicon.source_vocab_size(); ++s)
    CHECK(result.lexicon.row_sum(s) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("rows stay normalized after pruning") {
  auto pairs = toygen::bilingual_corpus(400, 60, 4);
  TrainLexiconOptions opts;
  opts.iterations = 5;
  opts.prune_threshold = 1e-3;  // aggressive to force real pruning
  auto result = train_lexicon(pairs, opts);
  for (uint32_t s = 0; s < result.lexicon.source_vocab_size(); ++s) {
    if (result.lexicon.row_sum(s) == 0.0) continue;
    CHECK(result.lexicon.row_sum(s) == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("copy-corpus training yields >=99% identity links on held-out pairs") {
  auto train_pairs = toygen::copy_corpus(1000, 300, 21);
  auto held_out = toygen::copy_corpus(200, 300, 22);
  auto result = train_lexicon(train_pairs);

  int64_t tokens = 0, errors = 0;
  for (const auto& pair : held_out) {
    auto links = align(pair.src_tokens, pair.tgt_tokens, result.lexicon);
    std::vector<int32_t> linked_to(pair.src_tokens.size(), -1);
    for (const auto& [i, j] : links.links) linked_to[i] = j;
    for (size_t i = 0; i < pair.src_tokens.size(); ++i) {
      ++tokens;
      if (linked_to[i] != static_cast<int32_t>(i)) ++errors;
    }
  }
  const double error_rate =
      static_cast<double>(errors) / static_cast<double>(tokens);
  CHECK(error_rate <= 0.01);
}

TEST_CASE("align contract: unseen tokens unlink, ties go leftmost") {
  // Hand-built lexicon: row sums are 1.
  auto lexicon = make_lexicon({
      {"m", "r1", 0.4},
      {"m", "r2", 0.4},
      {"m", "r3", 0.2},
      {"<NULL>", "r1", 0.1},
      {"<NULL>", "r2", 0.1},
      {"<NULL>", "r3", 0.8},
  });

  // Both r1 (j=1) and r1-equal r2... place equal-probability candidates at
  // j=1 and j=3: sentence r3 r1 r3 r2 -> p(r1|m)=p(r2|m)=0.4, tie -> j=1.
  auto links = align({"m"}, {"r3", "r1", "r3", "r2"}, lexicon);
  REQUIRE(links.links.size() == 1);
  CHECK(links.links[0] == std::pair<int32_t, int32_t>{0, 1});

  // Unseen MT token: unlinked.
  auto none = align({"zzz"}, {"r1"}, lexicon);
  CHECK(none.links.empty());

  // NULL explains r3 better than m does: unlinked.
  auto null_wins = align({"m"}, {"r3"}, lexicon);
  CHECK(null_wins.links.empty());
}

TEST_CASE("filter_for_alignment keeps [5,100] and caps deterministically") {
  std::vector<ParallelPair> pairs;
  auto tokens = [](int n, const char* w) {
    return std::vector<std::string>(n, w);
  };
  pairs.push_back(make_pair(0, tokens(4, "a"), tokens(10, "b")));    // src too short
  pairs.push_back(make_pair(1, tokens(100, "a"), tokens(50, "b")));  // boundary ok
  pairs.push_back(make_pair(2, tokens(101, "a"), tokens(50, "b")));  // src too long
  pairs.push_back(make_pair(3, tokens(5, "a"), tokens(5, "b")));     // boundary ok
  pairs.push_back(make_pair(4, tokens(10, "a"), tokens(4, "b")));    // tgt too short

  auto kept = filter_for_alignment(pairs);
  REQUIRE(kept.size() == 2);
  CHECK(kept[0].id == 1);
  CHECK(kept[1].id == 3);

  // Cap: exactly 2 of 10, identical across reruns, ids ascending.
  auto many = toygen::bilingual_corpus(10, 20, 8);
  auto once = filter_for_alignment(many, 1, 100, 2, 42);
  auto twice = filter_for_alignment(many, 1, 100, 2, 42);
  REQUIRE(once.size() == 2);
  CHECK(once == twice);
  CHECK(once[0].id < once[1].id);
}

TEST_CASE("subsampling cap is uniform over the stream") {
  // 2 of 8 kept per draw; over many seeds every pair should be kept with
  // probability ~1/4.
  auto pairs = toygen::bilingual_corpus(8, 20, 3);
  std::map<int64_t, int64_t> kept_counts;
  const int kSeeds = 20000;
  for (int seed = 0; seed < kSeeds; ++seed) {
    for (const auto& pair : filter_for_alignment(pairs, 1, 100, 2, seed))
      ++kept_counts[pair.id];
  }
  std::map<int64_t, double> expected;
  for (int64_t id = 0; id < 8; ++id) expected[id] = 1.0 / 8.0;
  const double p =
      oracles::chi_square_gof_p(kept_counts, expected, 2 * kSeeds);
  CHECK(p > 0.01);
}

TEST_CASE("pharaoh round trip and validation") {
  AlignmentLinks links;
  links.links = {{0, 2}, {1, 0}, {3, 3}};
  const std::string text = links_to_pharaoh(links);
  CHECK(text == "0-2 1-0 3-3");
  CHECK(pharaoh_to_links(text) == links);
  CHECK(pharaoh_to_links("").links.empty());
  CHECK_THROWS_AS(pharaoh_to_links("1-2 1-3"), Error);  // duplicate MT index
  CHECK_THROWS_AS(pharaoh_to_links("a-2"), Error);
  CHECK_THROWS_AS(pharaoh_to_links("12"), Error);
}

TEST_CASE("lexicon TSV persistence round trips bit-exactly") {
  auto pairs = toygen::bilingual_corpus(200, 40, 77);
  auto result = train_lexicon(pairs);
  const std::string path = "/tmp/tsgen_test_lexicon.tsv";
  result.lexicon.save_tsv(path);
  auto loaded = LexiconTable::load_tsv(path);

  // Same probabilities for every surviving entry, bit for bit.
  for (const auto& pair : pairs) {
    for (const auto& t : pair.tgt_tokens)
      CHECK(loaded.null_prob(t) == result.lexicon.null_prob(t));
    for (const auto& s : pair.src_tokens)
      for (const auto& t : pair.tgt_tokens)
        CHECK(loaded.prob(s, t) == result.lexicon.prob(s, t));
  }
  // Saving the loaded table reproduces the file byte for byte.
  const std::string path2 = "/tmp/tsgen_test_lexicon2.tsv";
  loaded.save_tsv(path2);
  CHECK(read_lines(path) == read_lines(path2));
  std::remove(path.c_str());
  std::remove(path2.c_str());
}

TEST_CASE("train_lexicon rejects an empty corpus") {
  try {
    train_lexicon({});
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kEmptyInput);
  }
}

TEST_CASE("EM is thread-count invariant") {
  auto pairs = toygen::bilingual_corpus(1500, 50, 31);
  TrainLexiconOptions one;
  one.threads = 1;
  TrainLexiconOptions eight;
  eight.threads = 8;
  auto a = train_lexicon(pairs, one);
  auto b = train_lexicon(pairs, eight);
  REQUIRE(a.log_likelihood.size() == b.log_likelihood.size());
  for (size_t k = 0; k < a.log_likelihood.size(); ++k)
    CHECK(a.log_likelihood[k] == b.log_likelihood[k]);  // bit-identical
  const std::string pa = "/tmp/tsgen_test_lex_a.tsv";
  const std::string pb = "/tmp/tsgen_test_lex_b.tsv";
  a.lexicon.save_tsv(pa);
  b.lexicon.save_tsv(pb);
  CHECK(read_lines(pa) == read_lines(pb));
  std::remove(pa.c_str());
  std::remove(pb.c_str());
}

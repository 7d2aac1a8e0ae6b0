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

#include "tsgen/span_sampler.hpp"

#include "tsgen/error.hpp"
#include "tsgen/parallel.hpp"

namespace tsgen {

std::optional<Span> try_sample_span(int64_t tgt_len,
                                    const LengthDistribution& dist, Rng& rng) {
  if (tgt_len < 1) return std::nullopt;
  // Length first, start second.
  const int64_t len = dist.sample_length_at_most(tgt_len, rng);
  if (len == 0) return std::nullopt;
  const int64_t start =
      static_cast<int64_t>(rng.bounded(static_cast<uint64_t>(tgt_len - len + 1)));
  return Span{start, start + len - 1};
}

Span sample_span(int64_t tgt_len, const LengthDistribution& dist, Rng& rng) {
  if (tgt_len < 1)
    throw Error(ErrorKind::kUnsampleable, "sentence length must be >= 1");
  auto span = try_sample_span(tgt_len, dist, rng);
  if (!span)
    throw Error(ErrorKind::kUnsampleable,
                "no span length fits a sentence of " + std::to_string(tgt_len) +
                    " tokens");
  return *span;
}

std::pair<std::vector<std::string>, std::vector<std::string>> mask_span(
    const std::vector<std::string>& tokens, Span span) {
  const int64_t n = static_cast<int64_t>(tokens.size());
  if (span.start < 0 || span.end < span.start || span.end >= n)
    throw Error(ErrorKind::kSpanOutOfBounds,
                "span (" + std::to_string(span.start) + "," +
                    std::to_string(span.end) + ") out of bounds for " +
                    std::to_string(n) + " tokens");
  std::vector<std::string> masked;
  masked.reserve(tokens.size() - span.length() + 1);
  masked.insert(masked.end(), tokens.begin(), tokens.begin() + span.start);
  masked.emplace_back(kMaskToken);
  masked.insert(masked.end(), tokens.begin() + span.end + 1, tokens.end());
  std::vector<std::string> suggestion(tokens.begin() + span.start,
                                      tokens.begin() + span.end + 1);
  return {std::move(masked), std::move(suggestion)};
}

namespace {

std::optional<TSRecord> build_one(const ParallelPair& pair,
                                  const LengthDistribution& dist,
                                  Origin origin, uint64_t seed) {
  Rng rng(Rng::derive(seed, static_cast<uint64_t>(pair.id)));
  auto span = try_sample_span(static_cast<int64_t>(pair.tgt_tokens.size()),
                              dist, rng);
  if (!span) return std::nullopt;
  auto [masked, suggestion] = mask_span(pair.tgt_tokens, *span);
  TSRecord record;
  record.src_tokens = pair.src_tokens;
  record.masked_tgt_tokens = std::move(masked);
  record.suggestion_tokens = std::move(suggestion);
  record.span = *span;
  record.origin = origin;
  return record;
}

}  // namespace

MaskedCorpusStats build_masked_corpus(
    const std::vector<ParallelPair>& pairs, const LengthDistribution& dist,
    Origin origin, uint64_t seed,
    const std::function<void(const TSRecord&)>& emit, int threads) {
  if (origin == Origin::kQe)
    throw Error(ErrorKind::kBadOrigin,
                "masked-corpus construction covers golden/pseudo only");
  MaskedCorpusStats stats;
  auto results = parallel_map<std::optional<TSRecord>>(
      pairs.size(), threads,
      [&](size_t i) { return build_one(pairs[i], dist, origin, seed); });
  for (auto& rec : results) {
    if (rec) {
      emit(*rec);
      ++stats.records;
    } else {
      ++stats.unsampleable;
    }
  }
  return stats;
}

MaskedCorpusStats build_masked_corpus(
    ParallelReader& reader, const LengthDistribution& dist, Origin origin,
    uint64_t seed, const std::function<void(const TSRecord&)>& emit,
    int threads) {
  if (origin == Origin::kQe)
    throw Error(ErrorKind::kBadOrigin,
                "masked-corpus construction covers golden/pseudo only");
  MaskedCorpusStats stats;
  std::vector<ParallelPair> batch;
  const size_t kBatch = 4096;
  for (;;) {
    batch.clear();
    while (batch.size() < kBatch) {
      auto pair = reader.next();
      if (!pair) break;
      batch.push_back(std::move(*pair));
    }
    if (batch.empty()) break;
    auto partial = build_masked_corpus(batch, dist, origin, seed, emit, threads);
    stats.records += partial.records;
    stats.unsampleable += partial.unsampleable;
    if (batch.size() < kBatch) break;
  }
  return stats;
}

}  // namespace tsgen

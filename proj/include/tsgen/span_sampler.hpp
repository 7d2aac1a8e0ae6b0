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

#ifndef TSGEN_SPAN_SAMPLER_HPP
#define TSGEN_SPAN_SAMPLER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "tsgen/corpus.hpp"
#include "tsgen/length_dist.hpp"
#include "tsgen/record.hpp"
#include "tsgen/rng.hpp"

namespace tsgen {

// Draws the span length from the distribution (renormalized to lengths that
// fit), then the start uniformly. Throws Error(kUnsampleable) when no
// supported length fits the sentence.
Span sample_span(int64_t tgt_len, const LengthDistribution& dist, Rng& rng);

// Non-throwing variant for bulk use; nullopt means unsampleable.
std::optional<Span> try_sample_span(int64_t tgt_len,
                                    const LengthDistribution& dist, Rng& rng);

// Replaces tokens[start..end] with one [MASK]; returns (masked, suggestion).
std::pair<std::vector<std::string>, std::vector<std::string>> mask_span(
    const std::vector<std::string>& tokens, Span span);

struct MaskedCorpusStats {
  int64_t records = 0;
  int64_t unsampleable = 0;
};

// Strategy 1 (golden) / strategy 2 (pseudo): one masked record per
// sampleable pair, in input order. Each pair draws from an RNG seeded by
// Rng::derive(seed, pair.id), so sharded and sequential runs emit identical
// streams. origin must be golden or pseudo.
MaskedCorpusStats build_masked_corpus(
    const std::vector<ParallelPair>& pairs, const LengthDistribution& dist,
    Origin origin, uint64_t seed, const std::function<void(const TSRecord&)>& emit,
    int threads = 1);

// Streaming variant over a reader; same record stream as the vector form.
MaskedCorpusStats build_masked_corpus(
    ParallelReader& reader, const LengthDistribution& dist, Origin origin,
    uint64_t seed, const std::function<void(const TSRecord&)>& emit,
    int threads = 1);

}  // namespace tsgen

#endif  // TSGEN_SPAN_SAMPLER_HPP

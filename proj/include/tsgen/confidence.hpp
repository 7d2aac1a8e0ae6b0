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

#ifndef TSGEN_CONFIDENCE_HPP
#define TSGEN_CONFIDENCE_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "tsgen/length_dist.hpp"
#include "tsgen/lexicon.hpp"
#include "tsgen/ngram_lm.hpp"
#include "tsgen/record.hpp"
#include "tsgen/rng.hpp"

namespace tsgen {

// Per-token recovery-confidence scores in [0,1]; one entry per MT token,
// higher = more confident.
struct ConfidenceVector {
  std::vector<double> scores;

  bool operator==(const ConfidenceVector&) const = default;
};

// Word confidence as fluency fused with adequacy:
//   fluency(j)  = sqrt(p_fwd(t_j | before) * p_bwd(t_j | after))
//   adequacy(j) = max over s in {NULL} + src of p(t_j | s)
//   score(j)    = fluency^alpha * adequacy^(1-alpha)
// The lexicon direction is source language -> translation language.
ConfidenceVector score_words(const std::vector<std::string>& src_tokens,
                             const std::vector<std::string>& mt_tokens,
                             const NGramLM& lm, const LexiconTable& lexicon,
                             double alpha = 0.5);

// Reads one line of space-separated floats per sentence. Validates length
// against the matching MT sentence and the [0,1] range; errors name the
// line number. mt_lengths[i] == 0 admits only an empty line.
std::vector<ConfidenceVector> load_external_scores(
    const std::string& path, const std::vector<size_t>& mt_lengths);

// Draws a window length from the distribution (renormalized to the sentence)
// and returns the window with the lowest mean confidence, leftmost on ties.
// Returns nothing when the best window's mean exceeds tau (sentence is fine)
// or when no length fits.
std::optional<Span> select_low_confidence_span(const ConfidenceVector& conf,
                                               const LengthDistribution& dist,
                                               double tau, Rng& rng);

}  // namespace tsgen

#endif  // TSGEN_CONFIDENCE_HPP

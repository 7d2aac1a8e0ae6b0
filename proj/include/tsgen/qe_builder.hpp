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

#ifndef TSGEN_QE_BUILDER_HPP
#define TSGEN_QE_BUILDER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsgen/confidence.hpp"
#include "tsgen/length_dist.hpp"
#include "tsgen/lexicon.hpp"
#include "tsgen/ngram_lm.hpp"
#include "tsgen/record.hpp"
#include "tsgen/rng.hpp"

namespace tsgen {

// Why a triple produced no record. Stages run in the fixed order
// score -> select -> align -> project.
enum class QeSkip {
  kEmpty,          // a side of the triple is empty
  kUnsampleable,   // no window length fits the MT sentence
  kConfident,      // best window's mean confidence above tau
  kUnaligned,      // span projects to an empty reference hull
  kContaminated,   // hull holds reference tokens linked from outside the span
  kOverlong,       // hull longer than the suggestion cap allows
};

struct QeCounters {
  int64_t emitted = 0;
  int64_t empty = 0;
  int64_t unsampleable = 0;
  int64_t confident = 0;
  int64_t unaligned = 0;
  int64_t contaminated = 0;
  int64_t overlong = 0;

  void add(QeSkip reason);
  int64_t total() const {
    return emitted + empty + unsampleable + confident + unaligned +
           contaminated + overlong;
  }
};

// Projects an MT-side span through alignment links onto the reference:
// the hull (min, max) of all reference indices linked from inside the span.
// Returns nothing if no span token is linked, or if any reference index
// inside the hull is also linked from an MT position outside the span
// (contamination guard: reject rather than expand). The optional flag
// reports which of the two happened.
std::optional<Span> project_span(Span mt_span, const AlignmentLinks& links,
                                 int64_t ref_len,
                                 bool* contaminated = nullptr);

struct QeOptions {
  double tau = 0.5;
  double alpha = 0.5;
  // Reject projections whose hull exceeds this multiple of the span length.
  int64_t max_suggestion_ratio = 4;
};

struct QeModels {
  const NGramLM* lm = nullptr;                // translation-language LM
  const LexiconTable* adequacy_lexicon = nullptr;  // source -> translation
  const LexiconTable* align_lexicon = nullptr;     // MT -> reference
};

// Strategy 3: score the MT sentence, select the low-confidence span, align
// MT to the reference, project, and emit a qe-origin record whose suggestion
// is the reference sub-segment. external_scores / external_links, when
// given, replace the statistical scorer / aligner for this triple.
std::optional<TSRecord> build_qe_record(
    const std::vector<std::string>& src_tokens,
    const std::vector<std::string>& mt_tokens,
    const std::vector<std::string>& ref_tokens, const QeModels& models,
    const LengthDistribution& dist, const QeOptions& opts, Rng& rng,
    QeCounters& counters, const ConfidenceVector* external_scores = nullptr,
    const AlignmentLinks* external_links = nullptr);

}  // namespace tsgen

#endif  // TSGEN_QE_BUILDER_HPP

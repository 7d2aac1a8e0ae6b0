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

#include "tsgen/qe_builder.hpp"

#include <algorithm>

#include "tsgen/error.hpp"
#include "tsgen/span_sampler.hpp"

namespace tsgen {

void QeCounters::add(QeSkip reason) {
  switch (reason) {
    case QeSkip::kEmpty: ++empty; break;
    case QeSkip::kUnsampleable: ++unsampleable; break;
    case QeSkip::kConfident: ++confident; break;
    case QeSkip::kUnaligned: ++unaligned; break;
    case QeSkip::kContaminated: ++contaminated; break;
    case QeSkip::kOverlong: ++overlong; break;
  }
}

std::optional<Span> project_span(Span mt_span, const AlignmentLinks& links,
                                 int64_t ref_len, bool* contaminated) {
  if (contaminated) *contaminated = false;
  int64_t lo = -1, hi = -1;
  for (const auto& [i, j] : links.links) {
    if (i < mt_span.start || i > mt_span.end) continue;
    if (lo < 0 || j < lo) lo = j;
    if (hi < 0 || j > hi) hi = j;
  }
  if (lo < 0) return std::nullopt;
  if (hi >= ref_len)
    throw Error(ErrorKind::kSpanOutOfBounds,
                "alignment link outside the reference sentence");
  // Contamination guard: any hull index fed from outside the span kills the
  // projection.
  for (const auto& [i, j] : links.links) {
    if (j < lo || j > hi) continue;
    if (i < mt_span.start || i > mt_span.end) {
      if (contaminated) *contaminated = true;
      return std::nullopt;
    }
  }
  return Span{lo, hi};
}

std::optional<TSRecord> build_qe_record(
    const std::vector<std::string>& src_tokens,
    const std::vector<std::string>& mt_tokens,
    const std::vector<std::string>& ref_tokens, const QeModels& models,
    const LengthDistribution& dist, const QeOptions& opts, Rng& rng,
    QeCounters& counters, const ConfidenceVector* external_scores,
    const AlignmentLinks* external_links) {
  if (src_tokens.empty() || mt_tokens.empty() || ref_tokens.empty()) {
    counters.add(QeSkip::kEmpty);
    return std::nullopt;
  }

  // Stage 1: word confidence.
  ConfidenceVector conf;
  if (external_scores) {
    if (external_scores->scores.size() != mt_tokens.size())
      throw Error(ErrorKind::kScoreLengthMismatch,
                  "external scores do not match the MT sentence length");
    conf = *external_scores;
  } else {
    if (!models.lm || !models.adequacy_lexicon)
      throw Error(ErrorKind::kConfig,
                  "qe construction needs an LM and an adequacy lexicon "
                  "unless external scores are given");
    conf = score_words(src_tokens, mt_tokens, *models.lm,
                       *models.adequacy_lexicon, opts.alpha);
  }

  // Stage 2: low-confidence window.
  if (!dist.can_sample(static_cast<int64_t>(mt_tokens.size()))) {
    counters.add(QeSkip::kUnsampleable);
    return std::nullopt;
  }
  auto span = select_low_confidence_span(conf, dist, opts.tau, rng);
  if (!span) {
    counters.add(QeSkip::kConfident);
    return std::nullopt;
  }

  // Stage 3: alignment.
  AlignmentLinks links;
  if (external_links) {
    links = *external_links;
  } else {
    if (!models.align_lexicon)
      throw Error(ErrorKind::kConfig,
                  "qe construction needs an alignment lexicon unless "
                  "external alignments are given");
    links = align(mt_tokens, ref_tokens, *models.align_lexicon);
  }
  for (const auto& [i, j] : links.links) {
    if (i < 0 || i >= static_cast<int32_t>(mt_tokens.size()) || j < 0 ||
        j >= static_cast<int32_t>(ref_tokens.size()))
      throw Error(ErrorKind::kSpanOutOfBounds,
                  "alignment link (" + std::to_string(i) + "," +
                      std::to_string(j) + ") outside sentence bounds");
  }

  // Stage 4: projection onto the reference.
  bool contaminated = false;
  auto hull = project_span(*span, links,
                           static_cast<int64_t>(ref_tokens.size()),
                           &contaminated);
  if (!hull) {
    counters.add(contaminated ? QeSkip::kContaminated : QeSkip::kUnaligned);
    return std::nullopt;
  }
  if (hull->length() > opts.max_suggestion_ratio * span->length()) {
    counters.add(QeSkip::kOverlong);
    return std::nullopt;
  }

  auto masked = mask_span(mt_tokens, *span).first;
  TSRecord record;
  record.src_tokens = src_tokens;
  record.masked_tgt_tokens = std::move(masked);
  record.suggestion_tokens.assign(ref_tokens.begin() + hull->start,
                                  ref_tokens.begin() + hull->end + 1);
  record.span = *span;
  record.origin = Origin::kQe;
  record.validate();
  ++counters.emitted;
  return record;
}

}  // namespace tsgen

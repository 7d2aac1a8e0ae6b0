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

#include "tsgen/confidence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "tsgen/error.hpp"
#include "tsgen/io_util.hpp"

namespace tsgen {

ConfidenceVector score_words(const std::vector<std::string>& src_tokens,
                             const std::vector<std::string>& mt_tokens,
                             const NGramLM& lm, const LexiconTable& lexicon,
                             double alpha) {
  if (mt_tokens.empty())
    throw Error(ErrorKind::kEmptyInput, "cannot score an empty MT sentence");
  if (alpha < 0.0 || alpha > 1.0)
    throw Error(ErrorKind::kConfig, "alpha must be in [0,1]");

  std::vector<std::optional<uint32_t>> src_ids;
  src_ids.reserve(src_tokens.size());
  for (const auto& tok : src_tokens) src_ids.push_back(lexicon.source_id(tok));

  ConfidenceVector conf;
  conf.scores.reserve(mt_tokens.size());
  for (size_t j = 0; j < mt_tokens.size(); ++j) {
    const double fwd = lm.prob_forward(mt_tokens, j);
    const double bwd = lm.prob_backward(mt_tokens, j);
    const double fluency = std::sqrt(fwd * bwd);

    const auto tgt_id = lexicon.target_id(mt_tokens[j]);
    double adequacy = 0.0;
    if (tgt_id) {
      adequacy = lexicon.prob_by_id(LexiconTable::kNullId, *tgt_id);
      for (const auto& sid : src_ids) {
        if (!sid) continue;
        adequacy = std::max(adequacy, lexicon.prob_by_id(*sid, *tgt_id));
      }
    }

    double score = std::pow(fluency, alpha) * std::pow(adequacy, 1.0 - alpha);
    score = std::clamp(score, 0.0, 1.0);
    conf.scores.push_back(score);
  }
  return conf;
}

std::vector<ConfidenceVector> load_external_scores(
    const std::string& path, const std::vector<size_t>& mt_lengths) {
  LineReader reader(path);
  std::vector<ConfidenceVector> out;
  out.reserve(mt_lengths.size());
  while (auto line = reader.next()) {
    const size_t index = out.size();
    if (index >= mt_lengths.size())
      throw Error(ErrorKind::kScoreLengthMismatch,
                  path + ": more score lines than sentences (" +
                      std::to_string(mt_lengths.size()) + ")");
    ConfidenceVector conf;
    size_t pos = 0;
    const std::string& text = *line;
    while (pos < text.size()) {
      while (pos < text.size() && text[pos] == ' ') ++pos;
      if (pos >= text.size()) break;
      size_t end = text.find(' ', pos);
      if (end == std::string::npos) end = text.size();
      const std::string field = text.substr(pos, end - pos);
      char* endp = nullptr;
      const double v = std::strtod(field.c_str(), &endp);
      if (endp != field.c_str() + field.size())
        throw Error(ErrorKind::kBadNumber,
                    path + ":" + std::to_string(reader.line_no()) +
                        ": bad score '" + field + "'");
      if (v < 0.0 || v > 1.0)
        throw Error(ErrorKind::kScoreRange,
                    path + ":" + std::to_string(reader.line_no()) +
                        ": score " + fmt_double(v) + " outside [0,1]");
      conf.scores.push_back(v);
      pos = end;
    }
    if (conf.scores.size() != mt_lengths[index])
      throw Error(ErrorKind::kScoreLengthMismatch,
                  path + ":" + std::to_string(reader.line_no()) + ": " +
                      std::to_string(conf.scores.size()) +
                      " scores for a sentence of " +
                      std::to_string(mt_lengths[index]) + " tokens");
    out.push_back(std::move(conf));
  }
  if (out.size() != mt_lengths.size())
    throw Error(ErrorKind::kScoreLengthMismatch,
                path + ": " + std::to_string(out.size()) +
                    " score lines for " + std::to_string(mt_lengths.size()) +
                    " sentences");
  return out;
}

std::optional<Span> select_low_confidence_span(const ConfidenceVector& conf,
                                               const LengthDistribution& dist,
                                               double tau, Rng& rng) {
  if (conf.scores.empty())
    throw Error(ErrorKind::kEmptyInput, "empty confidence vector");
  const int64_t n = static_cast<int64_t>(conf.scores.size());
  const int64_t len = dist.sample_length_at_most(n, rng);
  if (len == 0) return std::nullopt;

  // Each window sum is computed fresh (no incremental update), so windows
  // with identical content compare exactly equal and the strict argmin
  // breaks ties leftmost.
  double best = 0.0;
  int64_t best_start = -1;
  for (int64_t start = 0; start + len <= n; ++start) {
    double window = 0.0;
    for (int64_t k = start; k < start + len; ++k) window += conf.scores[k];
    if (best_start < 0 || window < best) {
      best = window;
      best_start = start;
    }
  }
  if (best / static_cast<double>(len) > tau) return std::nullopt;
  return Span{best_start, best_start + len - 1};
}

}  // namespace tsgen

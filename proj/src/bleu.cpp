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

#include "tsgen/bleu.hpp"

#include <cmath>
#include <unordered_map>

#include <json.hpp>

#include "tsgen/error.hpp"

namespace tsgen {

namespace {

// n-grams keyed by tokens joined with an unprintable separator.
void count_ngrams(const std::vector<std::string>& tokens, int n,
                  std::unordered_map<std::string, int64_t>& counts) {
  if (static_cast<int>(tokens.size()) < n) return;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (int k = 0; k < n; ++k) {
      if (k) key.push_back('\x01');
      key += tokens[i + k];
    }
    ++counts[key];
  }
}

}  // namespace

BleuResult corpus_bleu(const std::vector<std::vector<std::string>>& hyps,
                       const std::vector<std::vector<std::string>>& refs,
                       bool add_one_smoothing) {
  if (hyps.size() != refs.size())
    throw Error(ErrorKind::kLengthMismatch,
                std::to_string(hyps.size()) + " hypotheses vs " +
                    std::to_string(refs.size()) + " references");
  if (hyps.empty())
    throw Error(ErrorKind::kEmptyInput, "BLEU needs at least one segment");

  BleuResult result;
  result.smoothed = add_one_smoothing;

  std::unordered_map<std::string, int64_t> hyp_counts, ref_counts;
  for (size_t seg = 0; seg < hyps.size(); ++seg) {
    result.hyp_len += static_cast<int64_t>(hyps[seg].size());
    result.ref_len += static_cast<int64_t>(refs[seg].size());
    for (int n = 1; n <= 4; ++n) {
      hyp_counts.clear();
      ref_counts.clear();
      count_ngrams(hyps[seg], n, hyp_counts);
      count_ngrams(refs[seg], n, ref_counts);
      for (const auto& [gram, count] : hyp_counts) {
        result.totals[n - 1] += count;
        auto it = ref_counts.find(gram);
        if (it != ref_counts.end())
          result.matches[n - 1] += std::min(count, it->second);
      }
    }
  }

  double log_precision_sum = 0.0;
  bool zero_pool = false;
  for (int n = 1; n <= 4; ++n) {
    double p;
    if (add_one_smoothing) {
      p = static_cast<double>(result.matches[n - 1] + 1) /
          static_cast<double>(result.totals[n - 1] + 1);
    } else if (result.totals[n - 1] == 0 || result.matches[n - 1] == 0) {
      p = 0.0;
      zero_pool = true;
    } else {
      p = static_cast<double>(result.matches[n - 1]) /
          static_cast<double>(result.totals[n - 1]);
    }
    result.precisions[n - 1] = p;
    if (p > 0.0) log_precision_sum += 0.25 * std::log(p);
  }

  if (result.hyp_len == 0) {
    result.brevity_penalty = 0.0;
  } else if (result.hyp_len >= result.ref_len) {
    result.brevity_penalty = 1.0;
  } else {
    result.brevity_penalty = std::exp(
        1.0 - static_cast<double>(result.ref_len) /
                  static_cast<double>(result.hyp_len));
  }

  if (!add_one_smoothing && zero_pool) {
    result.score = 0.0;
  } else {
    result.score =
        100.0 * result.brevity_penalty * std::exp(log_precision_sum);
  }
  return result;
}

std::string BleuResult::to_json() const {
  nlohmann::json j;
  j["bleu"] = score;
  j["precisions"] = precisions;
  j["brevity_penalty"] = brevity_penalty;
  j["hyp_len"] = hyp_len;
  j["ref_len"] = ref_len;
  j["matches"] = matches;
  j["totals"] = totals;
  j["smoothing"] = smoothed ? "add-one" : "none";
  return j.dump(2) + "\n";
}

}  // namespace tsgen

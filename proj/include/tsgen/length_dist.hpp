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

#ifndef TSGEN_LENGTH_DIST_HPP
#define TSGEN_LENGTH_DIST_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tsgen/rng.hpp"

namespace tsgen {

// Empirical probability table over masked-span lengths, fitted from golden
// TS data so that sampled spans follow the golden length profile.
class LengthDistribution {
 public:
  // probs[k] = count(k) / total. Throws Error(kEmptyInput) on an empty list
  // with a message pointing at the fallback distribution.
  static LengthDistribution fit(const std::vector<int64_t>& lengths);

  // Geometric(0.5) truncated at length 10, for when no golden data exists.
  static LengthDistribution fallback_geometric();

  static LengthDistribution from_probs(std::map<int64_t, double> probs);

  double prob(int64_t length) const;
  int64_t max_len() const { return max_len_; }
  const std::map<int64_t, double>& probs() const { return probs_; }

  // Draws a length conditioned on L <= limit by renormalizing the mass at or
  // below the limit. Returns 0 when no supported length fits.
  int64_t sample_length_at_most(int64_t limit, Rng& rng) const;

  // True iff some supported length is <= limit.
  bool can_sample(int64_t limit) const;

  // Sum-to-one (within 1e-9), non-negativity, non-empty support.
  void validate() const;

  std::string to_json() const;
  static LengthDistribution from_json_text(const std::string& text);
  static LengthDistribution load(const std::string& path);
  void save(const std::string& path) const;

 private:
  std::map<int64_t, double> probs_;
  int64_t max_len_ = 0;
};

}  // namespace tsgen

#endif  // TSGEN_LENGTH_DIST_HPP

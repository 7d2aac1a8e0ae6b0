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

#ifndef TSGEN_STATS_HPP
#define TSGEN_STATS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tsgen/record.hpp"

namespace tsgen {

// Table-style accounting of a TS dataset: counts per origin, span/suggestion
// length histograms, mean source length.
struct DatasetStats {
  int64_t total = 0;
  std::map<std::string, int64_t> by_origin;
  std::map<int64_t, int64_t> span_len_hist;
  std::map<int64_t, int64_t> sugg_len_hist;
  int64_t src_token_sum = 0;

  double mean_src_len() const {
    return total == 0 ? 0.0
                      : static_cast<double>(src_token_sum) /
                            static_cast<double>(total);
  }

  void add(const TSRecord& record);

  std::string to_json() const;
  std::string to_table() const;
};

DatasetStats dataset_stats(const std::vector<TSRecord>& records);

}  // namespace tsgen

#endif  // TSGEN_STATS_HPP

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

#include "tsgen/stats.hpp"

#include <cstdio>

#include <json.hpp>

namespace tsgen {

void DatasetStats::add(const TSRecord& record) {
  ++total;
  ++by_origin[origin_name(record.origin)];
  ++span_len_hist[record.span_length()];
  ++sugg_len_hist[static_cast<int64_t>(record.suggestion_tokens.size())];
  src_token_sum += static_cast<int64_t>(record.src_tokens.size());
}

DatasetStats dataset_stats(const std::vector<TSRecord>& records) {
  DatasetStats stats;
  for (const auto& record : records) stats.add(record);
  return stats;
}

std::string DatasetStats::to_json() const {
  nlohmann::json j;
  j["total"] = total;
  j["by_origin"] = by_origin;
  nlohmann::json span = nlohmann::json::object();
  for (const auto& [len, count] : span_len_hist)
    span[std::to_string(len)] = count;
  j["span_length_histogram"] = span;
  nlohmann::json sugg = nlohmann::json::object();
  for (const auto& [len, count] : sugg_len_hist)
    sugg[std::to_string(len)] = count;
  j["suggestion_length_histogram"] = sugg;
  j["mean_source_length"] = mean_src_len();
  return j.dump(2) + "\n";
}

std::string DatasetStats::to_table() const {
  char buf[128];
  std::string out;
  out += "records total          " + std::to_string(total) + "\n";
  for (const char* origin : {"golden", "pseudo", "qe"}) {
    auto it = by_origin.find(origin);
    const int64_t count = it == by_origin.end() ? 0 : it->second;
    std::snprintf(buf, sizeof(buf), "records %-14s %lld\n", origin,
                  static_cast<long long>(count));
    out += buf;
  }
  std::snprintf(buf, sizeof(buf), "mean source length     %.2f\n",
                mean_src_len());
  out += buf;
  out += "span lengths          ";
  for (const auto& [len, count] : span_len_hist)
    out += " " + std::to_string(len) + ":" + std::to_string(count);
  out += "\nsuggestion lengths    ";
  for (const auto& [len, count] : sugg_len_hist)
    out += " " + std::to_string(len) + ":" + std::to_string(count);
  out += "\n";
  return out;
}

}  // namespace tsgen

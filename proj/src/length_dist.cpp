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

#include "tsgen/length_dist.hpp"

#include <cmath>

#include <json.hpp>

#include "tsgen/error.hpp"
#include "tsgen/io_util.hpp"

namespace tsgen {

LengthDistribution LengthDistribution::fit(
    const std::vector<int64_t>& lengths) {
  if (lengths.empty())
    throw Error(ErrorKind::kEmptyInput,
                "no span lengths to fit; use the fallback distribution");
  std::map<int64_t, int64_t> counts;
  for (int64_t len : lengths) {
    if (len < 1)
      throw Error(ErrorKind::kSpanOutOfBounds,
                  "span length must be >= 1, got " + std::to_string(len));
    ++counts[len];
  }
  std::map<int64_t, double> probs;
  const double total = static_cast<double>(lengths.size());
  for (const auto& [len, count] : counts)
    probs[len] = static_cast<double>(count) / total;
  return from_probs(std::move(probs));
}

LengthDistribution LengthDistribution::fallback_geometric() {
  constexpr int64_t kMaxLen = 10;
  constexpr double kSuccess = 0.5;
  std::map<int64_t, double> probs;
  double mass = 0.0;
  double p = kSuccess;
  for (int64_t len = 1; len <= kMaxLen; ++len) {
    probs[len] = p;
    mass += p;
    p *= (1.0 - kSuccess);
  }
  for (auto& [len, prob] : probs) prob /= mass;
  return from_probs(std::move(probs));
}

LengthDistribution LengthDistribution::from_probs(
    std::map<int64_t, double> probs) {
  LengthDistribution dist;
  dist.probs_ = std::move(probs);
  dist.max_len_ = dist.probs_.empty() ? 0 : dist.probs_.rbegin()->first;
  dist.validate();
  return dist;
}

double LengthDistribution::prob(int64_t length) const {
  auto it = probs_.find(length);
  return it == probs_.end() ? 0.0 : it->second;
}

bool LengthDistribution::can_sample(int64_t limit) const {
  for (const auto& [len, p] : probs_) {
    if (len > limit) break;
    if (p > 0.0) return true;
  }
  return false;
}

int64_t LengthDistribution::sample_length_at_most(int64_t limit,
                                                  Rng& rng) const {
  double mass = 0.0;
  for (const auto& [len, p] : probs_) {
    if (len > limit) break;
    mass += p;
  }
  if (mass <= 0.0) return 0;
  const double u = rng.next_double() * mass;
  double cum = 0.0;
  int64_t last = 0;
  for (const auto& [len, p] : probs_) {
    if (len > limit) break;
    if (p <= 0.0) continue;
    cum += p;
    last = len;
    if (u < cum) return len;
  }
  return last;  // guards against accumulated rounding at u ~= mass
}

void LengthDistribution::validate() const {
  if (probs_.empty())
    throw Error(ErrorKind::kEmptyInput, "length distribution has no support");
  double sum = 0.0;
  for (const auto& [len, p] : probs_) {
    if (len < 1)
      throw Error(ErrorKind::kBadFormat,
                  "length distribution key must be >= 1");
    if (p < 0.0)
      throw Error(ErrorKind::kBadFormat,
                  "negative probability at length " + std::to_string(len));
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw Error(ErrorKind::kBadFormat,
                "length distribution sums to " + fmt_double(sum));
}

std::string LengthDistribution::to_json() const {
  nlohmann::json j;
  j["type"] = "length_distribution";
  j["version"] = 1;
  j["max_len"] = max_len_;
  nlohmann::json probs = nlohmann::json::object();
  for (const auto& [len, p] : probs_) probs[std::to_string(len)] = p;
  j["probs"] = probs;
  return j.dump(2) + "\n";
}

LengthDistribution LengthDistribution::from_json_text(
    const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains("probs") ||
      j.value("type", "") != "length_distribution")
    throw Error(ErrorKind::kBadFormat, "not a length distribution file");
  std::map<int64_t, double> probs;
  for (const auto& [key, value] : j["probs"].items()) {
    try {
      probs[std::stoll(key)] = value.get<double>();
    } catch (const std::exception&) {
      throw Error(ErrorKind::kBadFormat,
                  "bad length distribution entry '" + key + "'");
    }
  }
  return from_probs(std::move(probs));
}

LengthDistribution LengthDistribution::load(const std::string& path) {
  LineReader reader(path);
  std::string text;
  while (auto line = reader.next()) {
    text += *line;
    text.push_back('\n');
  }
  return from_json_text(text);
}

void LengthDistribution::save(const std::string& path) const {
  write_file(path, to_json());
}

}  // namespace tsgen

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

#ifndef TSGEN_DOMAIN_HPP
#define TSGEN_DOMAIN_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "tsgen/record.hpp"

namespace tsgen {

struct LabeledSentence {
  std::string text;
  int label = 0;  // 1 = in-domain (golden), 0 = out-of-domain (synthetic)

  bool operator==(const LabeledSentence&) const = default;
};

// Positives: golden sentences upsampled 10x. Negatives: a uniform random
// subsample of the synthetic sentences of exactly the same count. The
// combined list is shuffled deterministically by seed. Throws
// Error(kNotEnoughNegatives) naming both counts when the synthetic corpus
// is too small.
std::vector<LabeledSentence> build_discriminator_training_set(
    const std::vector<std::string>& golden_srcs,
    const std::vector<std::string>& synth_srcs, uint64_t seed,
    int upsample = 10);

struct DomainTrainOptions;
struct DomainTrainResult;
DomainTrainResult train_discriminator(const std::vector<LabeledSentence>&,
                                      const DomainTrainOptions&);

// Binary in-domain scorer: logistic regression over hashed character
// n-grams (n = 3..5, 2^20 buckets) of the whitespace-normalized sentence.
// Scores are deterministic: features accumulate in sorted bucket order.
class DomainModel {
 public:
  static constexpr int kHashBits = 20;
  static constexpr int kNgramMin = 3;
  static constexpr int kNgramMax = 5;

  // sigmoid(w . features + bias), always in (0,1).
  double score(std::string_view sentence) const;

  // Sparse L2-normalized character-n-gram counts, sorted by bucket.
  static std::vector<std::pair<uint32_t, double>> featurize(
      std::string_view sentence);

  void save(const std::string& path) const;
  static DomainModel load(const std::string& path);

  double bias() const { return bias_; }
  size_t nonzero_weights() const { return weights_.size(); }
  const std::string& config_echo() const { return config_echo_; }

 private:
  friend DomainTrainResult train_discriminator(
      const std::vector<LabeledSentence>&, const DomainTrainOptions&);

  std::unordered_map<uint32_t, double> weights_;
  double bias_ = 0.0;
  std::string config_echo_;  // JSON echo of the training configuration
};

struct DomainTrainOptions {
  int epochs = 5;
  double learning_rate = 0.1;
  uint64_t seed = 1;
};

struct DomainTrainResult {
  DomainModel model;
  std::vector<double> epoch_loss;  // mean log-loss per epoch
};

// Sequential SGD on logistic loss; example order is reshuffled each epoch
// from the seed. Throws Error(kSingleClass) unless both labels appear.
DomainTrainResult train_discriminator(
    const std::vector<LabeledSentence>& examples,
    const DomainTrainOptions& opts);

inline DomainTrainResult train_discriminator(
    const std::vector<LabeledSentence>& examples) {
  return train_discriminator(examples, DomainTrainOptions{});
}

struct FilterReport {
  int64_t kept = 0;
  int64_t total = 0;
  double threshold = 0.5;
};

// Keeps records whose source-sentence score exceeds theta, preserving order.
std::vector<TSRecord> filter_in_domain(const std::vector<TSRecord>& records,
                                       const DomainModel& model, double theta,
                                       FilterReport* report = nullptr);

// Threshold whose strict filter keeps ~fraction of the given scores.
double calibrate_threshold(std::vector<double> scores, double fraction);

}  // namespace tsgen

#endif  // TSGEN_DOMAIN_HPP

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

#ifndef TSGEN_NGRAM_LM_HPP
#define TSGEN_NGRAM_LM_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "tsgen/vocab.hpp"

namespace tsgen {

// Interpolated absolute-discount n-gram model over target tokens, trained in
// both directions (forward and on reversed sentences) so a token can be
// scored by the context before it and after it. For any context the
// conditional distribution over vocabulary + unknown sums to 1, and every
// token gets probability > 0.
class NGramLM {
 public:
  static constexpr double kDefaultDiscount = 0.75;

  // Throws Error(kEmptyInput) if no sentence has a token; order >= 1.
  static NGramLM train(const std::vector<std::vector<std::string>>& sentences,
                       int order, double discount = kDefaultDiscount);

  int order() const { return order_; }
  double discount() const { return discount_; }
  uint32_t vocab_size() const { return vocab_.size(); }

  // p(token | preceding context) with BOS padding; unknown tokens map to a
  // shared unknown event.
  double prob_forward(const std::vector<std::string>& sentence,
                      size_t pos) const;
  // p(token | following context), from the reversed-direction model.
  double prob_backward(const std::vector<std::string>& sentence,
                       size_t pos) const;

  // Conditional against an explicit preceding context (forward direction);
  // exposed for normalization checks.
  double cond_prob(const std::vector<std::string>& context,
                   const std::string& token) const;

  // Forward per-token perplexity over a corpus.
  double perplexity(const std::vector<std::vector<std::string>>& sentences) const;

  // Versioned text dump of the raw counts; loading rebuilds the exact model.
  void save(const std::string& path) const;
  static NGramLM load(const std::string& path);

 private:
  static NGramLM load_checked(const std::string& path);

  // Sentinel ids outside the vocabulary.
  static constexpr uint32_t kBos = 0xFFFFFFFFu;
  static constexpr uint32_t kUnk = 0xFFFFFFFEu;

  struct ContextCell {
    uint64_t total = 0;
    std::unordered_map<uint32_t, uint64_t> cont;
  };

  struct ContextKey {
    std::vector<uint32_t> ids;
    bool operator==(const ContextKey&) const = default;
  };
  struct ContextKeyHash {
    size_t operator()(const ContextKey& key) const {
      uint64_t h = 1469598103934665603ull;
      for (uint32_t id : key.ids) {
        for (int b = 0; b < 4; ++b) {
          h ^= (id >> (8 * b)) & 0xFF;
          h *= 1099511628211ull;
        }
      }
      return static_cast<size_t>(h);
    }
  };

  // tables[k-1]: context of k-1 ids -> continuation counts.
  using Direction = std::vector<
      std::unordered_map<ContextKey, ContextCell, ContextKeyHash>>;

  void count_sentence(Direction& dir, const std::vector<uint32_t>& ids);
  double prob_ids(const Direction& dir, const std::vector<uint32_t>& context,
                  uint32_t word) const;
  std::vector<uint32_t> to_ids(const std::vector<std::string>& sentence) const;

  int order_ = 3;
  double discount_ = kDefaultDiscount;
  Vocab vocab_;
  Direction forward_;
  Direction backward_;
};

}  // namespace tsgen

#endif  // TSGEN_NGRAM_LM_HPP

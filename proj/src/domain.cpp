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

#include "tsgen/domain.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include <json.hpp>

#include "tsgen/error.hpp"
#include "tsgen/io_util.hpp"
#include "tsgen/rng.hpp"
#include "tsgen/text.hpp"

namespace tsgen {

namespace {

constexpr uint32_t kBucketMask = (1u << DomainModel::kHashBits) - 1;

uint32_t fnv1a_bucket(const char* data, size_t len) {
  uint64_t h = 1469598103934665603ull;
  for (size_t i = 0; i < len; ++i) {
    h ^= static_cast<uint8_t>(data[i]);
    h *= 1099511628211ull;
  }
  return static_cast<uint32_t>(h) & kBucketMask;
}

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Byte offsets of the code point starts, so n-grams run over characters,
// not bytes.
std::vector<size_t> codepoint_starts(std::string_view s) {
  std::vector<size_t> starts;
  starts.reserve(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if ((static_cast<uint8_t>(s[i]) & 0xC0) != 0x80) starts.push_back(i);
  }
  starts.push_back(s.size());
  return starts;
}

}  // namespace

std::vector<LabeledSentence> build_discriminator_training_set(
    const std::vector<std::string>& golden_srcs,
    const std::vector<std::string>& synth_srcs, uint64_t seed, int upsample) {
  if (golden_srcs.empty() || synth_srcs.empty())
    throw Error(ErrorKind::kEmptyInput,
                "both golden and synthetic sentence streams must be non-empty");
  if (upsample < 1)
    throw Error(ErrorKind::kConfig, "upsample factor must be >= 1");

  const size_t n_positive = golden_srcs.size() * static_cast<size_t>(upsample);
  if (synth_srcs.size() < n_positive)
    throw Error(ErrorKind::kNotEnoughNegatives,
                "need " + std::to_string(n_positive) +
                    " negatives but the synthetic corpus has " +
                    std::to_string(synth_srcs.size()) + " sentences");

  std::vector<LabeledSentence> out;
  out.reserve(2 * n_positive);
  for (int rep = 0; rep < upsample; ++rep)
    for (const auto& s : golden_srcs) out.push_back({s, 1});

  // Uniform subsample without replacement: partial Fisher-Yates over the
  // synthetic indices.
  Rng rng(seed);
  std::vector<size_t> indices(synth_srcs.size());
  for (size_t i = 0; i < indices.size(); ++i) indices[i] = i;
  for (size_t k = 0; k < n_positive; ++k) {
    const size_t j = k + static_cast<size_t>(rng.bounded(indices.size() - k));
    std::swap(indices[k], indices[j]);
    out.push_back({synth_srcs[indices[k]], 0});
  }

  // Deterministic shuffle of the combined list.
  for (size_t i = out.size(); i > 1; --i) {
    const size_t j = static_cast<size_t>(rng.bounded(i));
    std::swap(out[i - 1], out[j]);
  }
  return out;
}

std::vector<std::pair<uint32_t, double>> DomainModel::featurize(
    std::string_view sentence) {
  const std::string canon = join_tokens(tokenize(sentence));
  const auto starts = codepoint_starts(canon);
  const size_t n_chars = starts.size() - 1;

  std::unordered_map<uint32_t, double> counts;
  for (int n = kNgramMin; n <= kNgramMax; ++n) {
    if (n_chars < static_cast<size_t>(n)) break;
    for (size_t i = 0; i + n <= n_chars; ++i) {
      const size_t from = starts[i];
      const size_t to = starts[i + n];
      counts[fnv1a_bucket(canon.data() + from, to - from)] += 1.0;
    }
  }

  std::vector<std::pair<uint32_t, double>> features(counts.begin(),
                                                    counts.end());
  std::sort(features.begin(), features.end());
  double norm = 0.0;
  for (const auto& [b, c] : features) norm += c * c;
  if (norm > 0.0) {
    norm = std::sqrt(norm);
    for (auto& [b, c] : features) c /= norm;
  }
  return features;
}

double DomainModel::score(std::string_view sentence) const {
  double z = bias_;
  for (const auto& [bucket, value] : featurize(sentence)) {
    auto it = weights_.find(bucket);
    if (it != weights_.end()) z += it->second * value;
  }
  return sigmoid(z);
}

DomainTrainResult train_discriminator(
    const std::vector<LabeledSentence>& examples,
    const DomainTrainOptions& opts) {
  if (examples.empty())
    throw Error(ErrorKind::kEmptyInput, "discriminator training set is empty");
  bool has_pos = false, has_neg = false;
  for (const auto& ex : examples) (ex.label ? has_pos : has_neg) = true;
  if (!has_pos || !has_neg)
    throw Error(ErrorKind::kSingleClass,
                "discriminator training needs both labels; got only " +
                    std::string(has_pos ? "positives" : "negatives"));
  if (opts.epochs < 1)
    throw Error(ErrorKind::kConfig, "epochs must be >= 1");
  if (opts.learning_rate <= 0.0)
    throw Error(ErrorKind::kConfig, "learning rate must be > 0");

  std::vector<std::vector<std::pair<uint32_t, double>>> features;
  features.reserve(examples.size());
  for (const auto& ex : examples)
    features.push_back(DomainModel::featurize(ex.text));

  DomainTrainResult result;
  auto& model = result.model;
  Rng rng(opts.seed);
  std::vector<size_t> order(examples.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;

  for (int epoch = 0; epoch < opts.epochs; ++epoch) {
    for (size_t i = order.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(rng.bounded(i));
      std::swap(order[i - 1], order[j]);
    }
    double loss = 0.0;
    for (size_t idx : order) {
      double z = model.bias_;
      for (const auto& [bucket, value] : features[idx]) {
        auto it = model.weights_.find(bucket);
        if (it != model.weights_.end()) z += it->second * value;
      }
      const double p = sigmoid(z);
      const double y = examples[idx].label ? 1.0 : 0.0;
      const double eps = 1e-12;
      loss += -(y * std::log(std::max(p, eps)) +
                (1.0 - y) * std::log(std::max(1.0 - p, eps)));
      const double g = opts.learning_rate * (y - p);
      for (const auto& [bucket, value] : features[idx])
        model.weights_[bucket] += g * value;
      model.bias_ += g;
    }
    result.epoch_loss.push_back(loss / static_cast<double>(examples.size()));
  }

  nlohmann::json echo;
  echo["epochs"] = opts.epochs;
  echo["learning_rate"] = opts.learning_rate;
  echo["seed"] = opts.seed;
  echo["examples"] = examples.size();
  echo["ngram_min"] = DomainModel::kNgramMin;
  echo["ngram_max"] = DomainModel::kNgramMax;
  echo["hash_bits"] = DomainModel::kHashBits;
  model.config_echo_ = echo.dump();
  return result;
}

std::vector<TSRecord> filter_in_domain(const std::vector<TSRecord>& records,
                                       const DomainModel& model, double theta,
                                       FilterReport* report) {
  std::vector<TSRecord> kept;
  for (const auto& record : records) {
    if (model.score(join_tokens(record.src_tokens)) > theta)
      kept.push_back(record);
  }
  if (report) {
    report->kept = static_cast<int64_t>(kept.size());
    report->total = static_cast<int64_t>(records.size());
    report->threshold = theta;
  }
  return kept;
}

double calibrate_threshold(std::vector<double> scores, double fraction) {
  if (scores.empty())
    throw Error(ErrorKind::kEmptyInput, "no scores to calibrate against");
  if (fraction < 0.0 || fraction > 1.0)
    throw Error(ErrorKind::kConfig, "target fraction must be in [0,1]");
  std::sort(scores.begin(), scores.end(), std::greater<double>());
  const auto n = static_cast<int64_t>(scores.size());
  const int64_t keep = std::llround(fraction * static_cast<double>(n));
  if (keep <= 0) return 1.0;   // sigmoid never reaches 1: keeps nothing
  if (keep >= n) return 0.0;   // sigmoid never reaches 0: keeps everything
  return scores[keep];         // strictly-greater filter keeps ~keep scores
}

namespace {
constexpr char kDomainMagic[8] = {'t', 's', 'g', 'e', 'n', 'd', 'm', '1'};
}

void DomainModel::save(const std::string& path) const {
  auto out = open_output(path);
  out.write(kDomainMagic, sizeof(kDomainMagic));
  auto put_u32 = [&](uint32_t v) {
    unsigned char b[4];
    for (int i = 0; i < 4; ++i) b[i] = (v >> (8 * i)) & 0xFF;
    out.write(reinterpret_cast<char*>(b), 4);
  };
  auto put_u64 = [&](uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = (v >> (8 * i)) & 0xFF;
    out.write(reinterpret_cast<char*>(b), 8);
  };
  auto put_f64 = [&](double v) {
    uint64_t bits;
    std::memcpy(&bits, &v, sizeof(bits));
    put_u64(bits);
  };
  put_u32(kHashBits);
  put_u32(kNgramMin);
  put_u32(kNgramMax);
  put_f64(bias_);

  std::vector<std::pair<uint32_t, double>> entries(weights_.begin(),
                                                   weights_.end());
  std::sort(entries.begin(), entries.end());
  put_u64(entries.size());
  for (const auto& [bucket, w] : entries) {
    put_u32(bucket);
    put_f64(w);
  }
  put_u64(config_echo_.size());
  out.write(config_echo_.data(),
            static_cast<std::streamsize>(config_echo_.size()));
  if (!out) throw Error(ErrorKind::kIo, "write failed: " + path);
}

DomainModel DomainModel::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.is_open()) throw Error(ErrorKind::kIo, "cannot open file: " + path);
  auto fail = [&]() -> Error {
    return Error(ErrorKind::kBadFormat, path + ": not a tsgen domain model");
  };
  char magic[8];
  if (!in.read(magic, sizeof(magic)) ||
      std::memcmp(magic, kDomainMagic, sizeof(magic)) != 0)
    throw fail();
  auto get_u32 = [&]() -> uint32_t {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) throw fail();
    uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(b[i]) << (8 * i);
    return v;
  };
  auto get_u64 = [&]() -> uint64_t {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8)) throw fail();
    uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
    return v;
  };
  auto get_f64 = [&]() -> double {
    const uint64_t bits = get_u64();
    double v;
    std::memcpy(&v, &bits, sizeof(v));
    return v;
  };
  if (get_u32() != kHashBits || get_u32() != kNgramMin ||
      get_u32() != kNgramMax)
    throw Error(ErrorKind::kBadFormat,
                path + ": model hashing parameters do not match this build");
  DomainModel model;
  model.bias_ = get_f64();
  const uint64_t nnz = get_u64();
  for (uint64_t k = 0; k < nnz; ++k) {
    const uint32_t bucket = get_u32();
    model.weights_[bucket] = get_f64();
  }
  const uint64_t echo_len = get_u64();
  model.config_echo_.resize(echo_len);
  if (echo_len &&
      !in.read(model.config_echo_.data(),
               static_cast<std::streamsize>(echo_len)))
    throw fail();
  return model;
}

}  // namespace tsgen

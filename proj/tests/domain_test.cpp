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

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "support/toygen.hpp"
#include "tsgen/domain.hpp"
#include "tsgen/error.hpp"
#include "tsgen/text.hpp"

using namespace tsgen;

TEST_CASE("training-set builder follows the 10x upsample protocol") {
  auto golden = toygen::domain_sentences("g", 100, 50, 1);
  auto synth = toygen::domain_sentences("o", 10000, 50, 2);
  auto set = build_discriminator_training_set(golden, synth, 9);
  int64_t positives = 0, negatives = 0;
  for (const auto& ex : set) (ex.label ? positives : negatives)++;
  CHECK(positives == 1000);
  CHECK(negatives == 1000);

  // Same seed twice: identical shuffled list.
  auto again = build_discriminator_training_set(golden, synth, 9);
  CHECK(set == again);
  auto different = build_discriminator_training_set(golden, synth, 10);
  CHECK(set != different);
}

TEST_CASE("builder errors when the synthetic corpus is too small") {
  const std::vector<std::string> golden = {"a b c"};
  const std::vector<std::string> synth = {"q", "r", "s", "t", "u"};
  try {
    build_discriminator_training_set(golden, synth, 1);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNotEnoughNegatives);
    CHECK(std::string(e.what()).find("10") != std::string::npos);
    CHECK(std::string(e.what()).find("5") != std::string::npos);
  }
}

TEST_CASE("a separable two-sentence set trains to accuracy 1 in 10 epochs") {
  std::vector<LabeledSentence> set = {{"aaaa", 1}, {"zzzz", 0}};
  DomainTrainOptions opts;
  opts.epochs = 10;
  auto result = train_discriminator(set, opts);
  CHECK(result.model.score("aaaa") > 0.5);
  CHECK(result.model.score("zzzz") < 0.5);
  // Loss decreases over epochs on separable data.
  CHECK(result.epoch_loss.back() < result.epoch_loss.front());
}

TEST_CASE("a sentence carrying both labels equally lands near 0.5") {
  std::vector<LabeledSentence> set;
  for (int i = 0; i < 50; ++i) {
    set.push_back({"same sentence here", 1});
    set.push_back({"same sentence here", 0});
  }
  DomainTrainOptions opts;
  opts.epochs = 20;
  opts.learning_rate = 0.05;
  auto result = train_discriminator(set, opts);
  CHECK(result.model.score("same sentence here") ==
        doctest::Approx(0.5).epsilon(0.1));
}

TEST_CASE("held-out accuracy >= 0.95 on disjoint-vocabulary domains") {
  auto in_train = toygen::domain_sentences("ind", 1000, 80, 11);
  auto out_train = toygen::domain_sentences("ood", 1000, 80, 12);
  std::vector<LabeledSentence> set;
  for (const auto& s : in_train) set.push_back({s, 1});
  for (const auto& s : out_train) set.push_back({s, 0});
  auto result = train_discriminator(set);

  auto in_test = toygen::domain_sentences("ind", 500, 80, 13);
  auto out_test = toygen::domain_sentences("ood", 500, 80, 14);
  int64_t correct = 0;
  for (const auto& s : in_test)
    if (result.model.score(s) > 0.5) ++correct;
  for (const auto& s : out_test)
    if (result.model.score(s) <= 0.5) ++correct;
  CHECK(static_cast<double>(correct) / 1000.0 >= 0.95);
}

TEST_CASE("single-class training is rejected") {
  std::vector<LabeledSentence> set = {{"a", 1}, {"b", 1}};
  try {
    train_discriminator(set);
    FAIL("expected error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kSingleClass);
  }
}

TEST_CASE("scores are pure, in (0,1); empty sentence scores sigmoid(bias)") {
  std::vector<LabeledSentence> set = {{"aaaa bbbb", 1}, {"zzzz yyyy", 0}};
  auto result = train_discriminator(set);
  const double s1 = result.model.score("aaaa bbbb");
  const double s2 = result.model.score("aaaa bbbb");
  CHECK(s1 == s2);
  CHECK(s1 > 0.0);
  CHECK(s1 < 1.0);
  const double empty = result.model.score("");
  CHECK(empty ==
        doctest::Approx(1.0 / (1.0 + std::exp(-result.model.bias()))));
}

TEST_CASE("filter_in_domain: range extremes, monotonicity, order") {
  auto in_domain = toygen::domain_sentences("ind", 400, 50, 21);
  auto out_domain = toygen::domain_sentences("ood", 4000, 50, 22);
  auto set = build_discriminator_training_set(in_domain, out_domain, 5);
  auto model = train_discriminator(set).model;

  // Records: half in-domain sources, half out-of-domain.
  std::vector<TSRecord> records;
  auto push_record = [&](const std::string& sentence) {
    TSRecord r;
    r.src_tokens = tsgen::tokenize(sentence);
    r.masked_tgt_tokens = {"x", "[MASK]"};
    r.suggestion_tokens = {"y"};
    r.span = {1, 1};
    r.origin = Origin::kGolden;
    records.push_back(std::move(r));
  };
  for (int i = 0; i < 200; ++i) {
    push_record(in_domain[i]);
    push_record(out_domain[i]);
  }

  FilterReport report;
  auto none = filter_in_domain(records, model, 1.0, &report);
  CHECK(none.empty());  // sigmoid never reaches 1.0
  CHECK(report.total == 400);

  auto all = filter_in_domain(records, model, 0.0);
  CHECK(all.size() == records.size());

  // Monotone: theta1 <= theta2 => kept(theta1) superset of kept(theta2).
  auto at_03 = filter_in_domain(records, model, 0.3);
  auto at_07 = filter_in_domain(records, model, 0.7);
  CHECK(at_03.size() >= at_07.size());
  size_t cursor = 0;
  for (const auto& r : at_03) {  // kept(0.7) is a subsequence of kept(0.3)
    if (cursor < at_07.size() && at_07[cursor] == r) ++cursor;
  }
  CHECK(cursor == at_07.size());

  // Output order is a subsequence of input order.
  cursor = 0;
  for (const auto& r : records) {
    if (cursor < at_03.size() && at_03[cursor] == r) ++cursor;
  }
  CHECK(cursor == at_03.size());
}

TEST_CASE("calibrate_threshold hits the requested kept fraction") {
  auto in_domain = toygen::domain_sentences("ind", 300, 50, 31);
  auto out_domain = toygen::domain_sentences("ood", 3000, 50, 32);
  auto set = build_discriminator_training_set(in_domain, out_domain, 6);
  auto model = train_discriminator(set).model;

  // A 10k mixed stream, 10% in-domain.
  std::vector<std::string> stream;
  auto more_in = toygen::domain_sentences("ind", 1000, 50, 33);
  auto more_out = toygen::domain_sentences("ood", 9000, 50, 34);
  stream.insert(stream.end(), more_in.begin(), more_in.end());
  stream.insert(stream.end(), more_out.begin(), more_out.end());

  std::vector<double> scores;
  scores.reserve(stream.size());
  for (const auto& s : stream) scores.push_back(model.score(s));
  const double theta = calibrate_threshold(scores, 0.08);
  int64_t kept = 0;
  for (double s : scores)
    if (s > theta) ++kept;
  const double fraction = static_cast<double>(kept) / 10000.0;
  CHECK(fraction == doctest::Approx(0.08).epsilon(0.07));  // within 0.5% abs
}

TEST_CASE("domain model persistence round trips scores exactly") {
  auto in_domain = toygen::domain_sentences("ind", 100, 30, 41);
  auto out_domain = toygen::domain_sentences("ood", 1000, 30, 42);
  auto set = build_discriminator_training_set(in_domain, out_domain, 7);
  auto model = train_discriminator(set).model;

  const std::string path = "/tmp/tsgen_test_domain.bin";
  model.save(path);
  auto loaded = DomainModel::load(path);
  CHECK(loaded.bias() == model.bias());
  CHECK(loaded.nonzero_weights() == model.nonzero_weights());
  CHECK(loaded.config_echo() == model.config_echo());
  for (const auto& s : in_domain) CHECK(loaded.score(s) == model.score(s));

  // Corrupt magic: rejected.
  {
    std::ofstream out(path, std::ios::binary);
    out << "not a model";
  }
  CHECK_THROWS_AS(DomainModel::load(path), Error);
  std::remove(path.c_str());
}

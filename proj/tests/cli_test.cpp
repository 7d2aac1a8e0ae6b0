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
//
// End-to-end checks of the tsgen binary against the bundled toy corpus.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "tsgen/length_dist.hpp"

#ifndef TSGEN_BINARY
#error "TSGEN_BINARY must be defined by the build"
#endif
#ifndef TSGEN_DATA_DIR
#error "TSGEN_DATA_DIR must be defined by the build"
#endif

namespace {

const std::string kBin = TSGEN_BINARY;
const std::string kData = TSGEN_DATA_DIR;
const std::string kWork = "/tmp/tsgen_cli_test";

int run(const std::string& args) {
  const std::string cmd = kBin + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.is_open());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

struct Workspace {
  Workspace() {
    const int rc =
        std::system(("rm -rf " + kWork + " && mkdir -p " + kWork).c_str());
    REQUIRE(rc == 0);
  }
};

}  // namespace

TEST_CASE("build-golden is byte-identical across reruns and thread counts") {
  Workspace ws;
  REQUIRE(run("fit-lengths --records " + kData + "/golden_ts.tsv --out " +
              kWork + "/dist.json") == 0);

  const std::string base = "build-golden --src " + kData +
                           "/train.src --tgt " + kData +
                           "/train.tgt --dist " + kWork + "/dist.json";
  REQUIRE(run(base + " --seed 7 --out " + kWork + "/a.tsv") == 0);
  const std::string first = slurp(kWork + "/a.tsv");
  const std::string first_manifest = slurp(kWork + "/a.tsv.manifest.json");
  // Rerun into the same path: bytes and manifest both come back identical.
  REQUIRE(run(base + " --seed 7 --out " + kWork + "/a.tsv") == 0);
  CHECK(first == slurp(kWork + "/a.tsv"));
  CHECK(first_manifest == slurp(kWork + "/a.tsv.manifest.json"));

  REQUIRE(run(base + " --seed 7 --threads 8 --out " + kWork + "/c.tsv") == 0);
  REQUIRE(run(base + " --seed 8 --out " + kWork + "/d.tsv") == 0);
  CHECK(first == slurp(kWork + "/c.tsv"));
  CHECK(first != slurp(kWork + "/d.tsv"));
}

TEST_CASE("fit-lengths on a 3-record file writes a normalized sidecar") {
  Workspace ws;
  write(kWork + "/three.tsv",
        "a\tx [MASK]\ty\t1\t1\tgolden\n"
        "b\t[MASK] z\tu v\t0\t1\tgolden\n"
        "c\t[MASK]\tw\t0\t0\tgolden\n");
  REQUIRE(run("fit-lengths --records " + kWork + "/three.tsv --out " + kWork +
              "/dist.json") == 0);
  const std::string text = slurp(kWork + "/dist.json");
  // 2 spans of length 1, 1 of length 2.
  CHECK(text.find("\"max_len\": 2") != std::string::npos);
  auto dist = tsgen::LengthDistribution::load(kWork + "/dist.json");
  double sum = 0.0;
  for (const auto& [len, p] : dist.probs()) sum += p;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(dist.prob(1) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("distinct failure modes produce nonzero exits") {
  Workspace ws;
  CHECK(run("no-such-subcommand") != 0);
  CHECK(run("stats --in /no/such/file.tsv") != 0);

  write(kWork + "/bad.cfg", "not_a_key = 3\n");
  CHECK(run("fit-lengths --fallback --out " + kWork + "/d.json --config " +
            kWork + "/bad.cfg") != 0);

  write(kWork + "/badval.cfg", "tau = banana\n");
  CHECK(run("build-qe --src x --mt y --ref z --dist d --out o --config " +
            kWork + "/badval.cfg") != 0);

  // fit-lengths input modes are mutually exclusive.
  CHECK(run("fit-lengths --fallback --records " + kData +
            "/golden_ts.tsv --out " + kWork + "/d.json") != 0);
  // emit-model-input validates the phase name.
  CHECK(run("emit-model-input --phase bogus --in " + kData +
            "/golden_ts.tsv --out " + kWork + "/x.tsv") != 0);
}

TEST_CASE("config file values apply and CLI flags override them") {
  Workspace ws;
  write(kWork + "/cfg", "seed = 99\ntau = 0.5\n");
  REQUIRE(run("fit-lengths --fallback --out " + kWork + "/dist.json") == 0);

  const std::string base = "build-golden --src " + kData +
                           "/train.src --tgt " + kData +
                           "/train.tgt --dist " + kWork + "/dist.json";
  REQUIRE(run(base + " --config " + kWork + "/cfg --out " + kWork +
              "/from_cfg.tsv") == 0);
  REQUIRE(run(base + " --seed 99 --out " + kWork + "/explicit.tsv") == 0);
  REQUIRE(run(base + " --config " + kWork + "/cfg --seed 7 --out " + kWork +
              "/override.tsv") == 0);
  REQUIRE(run(base + " --seed 7 --out " + kWork + "/seed7.tsv") == 0);

  CHECK(slurp(kWork + "/from_cfg.tsv") == slurp(kWork + "/explicit.tsv"));
  CHECK(slurp(kWork + "/override.tsv") == slurp(kWork + "/seed7.tsv"));
  CHECK(slurp(kWork + "/from_cfg.tsv") != slurp(kWork + "/seed7.tsv"));
}

TEST_CASE("score-qe output feeds build-qe --scores with identical results") {
  Workspace ws;
  REQUIRE(run("fit-lengths --records " + kData + "/golden_ts.tsv --out " +
              kWork + "/dist.json") == 0);
  REQUIRE(run("train-aligner --src " + kData + "/train.src --tgt " + kData +
              "/train.tgt --out " + kWork + "/adequacy.tsv") == 0);
  REQUIRE(run("train-aligner --src " + kData + "/train.mt --tgt " + kData +
              "/train.tgt --out " + kWork + "/align.tsv") == 0);
  REQUIRE(run("train-lm --corpus " + kData + "/train.tgt --out " + kWork +
              "/lm.txt") == 0);

  const std::string inputs = " --src " + kData + "/train.src --mt " + kData +
                             "/train.mt --ref " + kData + "/train.tgt";
  REQUIRE(run("score-qe --src " + kData + "/train.src --mt " + kData +
              "/train.mt --lm " + kWork + "/lm.txt --lexicon " + kWork +
              "/adequacy.tsv --out " + kWork + "/scores.txt") == 0);
  REQUIRE(run("build-qe" + inputs + " --dist " + kWork +
              "/dist.json --lm " + kWork + "/lm.txt --lexicon " + kWork +
              "/adequacy.tsv --align-lexicon " + kWork +
              "/align.tsv --seed 3 --out " + kWork + "/internal.tsv") == 0);
  REQUIRE(run("build-qe" + inputs + " --dist " + kWork +
              "/dist.json --scores " + kWork + "/scores.txt --align-lexicon " +
              kWork + "/align.tsv --seed 3 --out " + kWork +
              "/external.tsv") == 0);

  // The score file round-trips exactly (shortest round-trip decimals), so
  // both routes pick the same spans and records.
  CHECK(slurp(kWork + "/internal.tsv") == slurp(kWork + "/external.tsv"));
}

TEST_CASE("align emits pharaoh lines consumable by build-qe --alignments") {
  Workspace ws;
  REQUIRE(run("fit-lengths --fallback --out " + kWork + "/dist.json") == 0);
  REQUIRE(run("train-aligner --src " + kData + "/train.mt --tgt " + kData +
              "/train.tgt --out " + kWork + "/align.tsv") == 0);
  REQUIRE(run("train-aligner --src " + kData + "/train.src --tgt " + kData +
              "/train.tgt --out " + kWork + "/adequacy.tsv") == 0);
  REQUIRE(run("train-lm --corpus " + kData + "/train.tgt --out " + kWork +
              "/lm.txt") == 0);
  REQUIRE(run("align --mt " + kData + "/train.mt --ref " + kData +
              "/train.tgt --lexicon " + kWork + "/align.tsv --out " + kWork +
              "/links.txt") == 0);

  const std::string inputs = " --src " + kData + "/train.src --mt " + kData +
                             "/train.mt --ref " + kData + "/train.tgt";
  REQUIRE(run("build-qe" + inputs + " --dist " + kWork + "/dist.json --lm " +
              kWork + "/lm.txt --lexicon " + kWork +
              "/adequacy.tsv --align-lexicon " + kWork +
              "/align.tsv --seed 5 --out " + kWork + "/lex_route.tsv") == 0);
  REQUIRE(run("build-qe" + inputs + " --dist " + kWork + "/dist.json --lm " +
              kWork + "/lm.txt --lexicon " + kWork +
              "/adequacy.tsv --alignments " + kWork +
              "/links.txt --seed 5 --out " + kWork + "/file_route.tsv") == 0);
  CHECK(slurp(kWork + "/lex_route.tsv") == slurp(kWork + "/file_route.tsv"));
}

TEST_CASE("filter-indomain hits a requested target fraction") {
  Workspace ws;
  REQUIRE(run("fit-lengths --records " + kData + "/golden_ts.tsv --out " +
              kWork + "/dist.json") == 0);
  REQUIRE(run("build-golden --src " + kData + "/train.src --tgt " + kData +
              "/train.tgt --dist " + kWork + "/dist.json --seed 7 --out " +
              kWork + "/golden.tsv") == 0);
  REQUIRE(run("build-pseudo --src " + kData + "/train.src --tgt " + kData +
              "/train.mt --dist " + kWork + "/dist.json --seed 7 --out " +
              kWork + "/pseudo.tsv") == 0);
  REQUIRE(run("train-discriminator --golden " + kData +
              "/golden.src --synth-records " + kWork +
              "/golden.tsv --synth-records " + kWork + "/pseudo.tsv --out " +
              kWork + "/dm.bin") == 0);
  REQUIRE(run("filter-indomain --in " + kWork + "/golden.tsv --model " +
              kWork + "/dm.bin --target-fraction 0.10 --out " + kWork +
              "/ind.tsv") == 0);

  std::ifstream in(kWork + "/ind.tsv");
  int64_t kept = 0;
  std::string line;
  while (std::getline(in, line)) ++kept;
  CHECK(kept >= 180);  // 10% of 2000 within +-1%
  CHECK(kept <= 220);
}

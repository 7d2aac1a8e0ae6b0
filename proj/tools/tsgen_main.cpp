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
// tsgen: synthesize translation-suggestion training data from parallel
// corpora, filter it for domain closeness, and score suggestion outputs.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tsgen/bleu.hpp"
#include "tsgen/confidence.hpp"
#include "tsgen/corpus.hpp"
#include "tsgen/domain.hpp"
#include "tsgen/error.hpp"
#include "tsgen/io_util.hpp"
#include "tsgen/length_dist.hpp"
#include "tsgen/lexicon.hpp"
#include "tsgen/ngram_lm.hpp"
#include "tsgen/parallel.hpp"
#include "tsgen/qe_builder.hpp"
#include "tsgen/record.hpp"
#include "tsgen/span_sampler.hpp"
#include "tsgen/stats.hpp"
#include "tsgen/text.hpp"
#include "tsgen/version.hpp"

namespace {

using nlohmann::json;
using namespace tsgen;

// ---------------------------------------------------------------------------
// Flat key=value configuration file; every key is overridable by a CLI flag.

const std::set<std::string>& known_config_keys() {
  static const std::set<std::string> keys = {
      "seed",    "threads", "iterations", "min_len", "max_len",
      "cap",     "order",   "discount",   "prune",   "alpha",
      "tau",     "theta",   "epochs",     "learning_rate",
      "target_fraction",    "smooth",     "max_suggestion_ratio",
  };
  return keys;
}

class Config {
 public:
  Config() = default;

  static Config load(const std::string& path) {
    Config cfg;
    LineReader reader(path);
    while (auto line = reader.next()) {
      std::string text = *line;
      const size_t hash = text.find('#');
      if (hash != std::string::npos) text.resize(hash);
      size_t first = text.find_first_not_of(" \t");
      if (first == std::string::npos) continue;
      const size_t eq = text.find('=');
      if (eq == std::string::npos)
        throw Error(ErrorKind::kConfig,
                    path + ":" + std::to_string(reader.line_no()) +
                        ": expected 'key = value'");
      auto trim = [](std::string s) {
        const size_t a = s.find_first_not_of(" \t");
        if (a == std::string::npos) return std::string();
        const size_t b = s.find_last_not_of(" \t");
        return s.substr(a, b - a + 1);
      };
      const std::string key = trim(text.substr(0, eq));
      const std::string value = trim(text.substr(eq + 1));
      if (!known_config_keys().count(key))
        throw Error(ErrorKind::kConfig,
                    path + ":" + std::to_string(reader.line_no()) +
                        ": unknown config key '" + key + "'");
      if (value.empty())
        throw Error(ErrorKind::kConfig,
                    path + ":" + std::to_string(reader.line_no()) +
                        ": empty value for '" + key + "'");
      cfg.values_[key] = value;
    }
    return cfg;
  }

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const std::string& raw(const std::string& key) const {
    return values_.at(key);
  }

 private:
  std::map<std::string, std::string> values_;
};

template <typename T>
T parse_config_value(const std::string& key, const std::string& text);

template <>
int64_t parse_config_value<int64_t>(const std::string& key,
                                    const std::string& text) {
  try {
    size_t used = 0;
    const int64_t v = std::stoll(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::kConfig,
                "config key '" + key + "': not an integer: '" + text + "'");
  }
}

template <>
uint64_t parse_config_value<uint64_t>(const std::string& key,
                                      const std::string& text) {
  try {
    size_t used = 0;
    const uint64_t v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::kConfig,
                "config key '" + key + "': not an integer: '" + text + "'");
  }
}

template <>
int parse_config_value<int>(const std::string& key, const std::string& text) {
  return static_cast<int>(parse_config_value<int64_t>(key, text));
}

template <>
double parse_config_value<double>(const std::string& key,
                                  const std::string& text) {
  try {
    size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorKind::kConfig,
                "config key '" + key + "': not a number: '" + text + "'");
  }
}

template <>
bool parse_config_value<bool>(const std::string& key,
                              const std::string& text) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw Error(ErrorKind::kConfig,
              "config key '" + key + "': not a boolean: '" + text + "'");
}

// CLI flag wins over config file wins over the built-in default. Keys whose
// flag the active subcommand does not register are ignored for it.
template <typename T>
void apply_config(const CLI::App* cmd, const Config& cfg,
                  const std::string& flag, const std::string& key, T& var) {
  const CLI::Option* opt = cmd->get_option_no_throw(flag);
  if (opt == nullptr) return;
  if (opt->count() > 0) return;
  if (!cfg.has(key)) return;
  var = parse_config_value<T>(key, cfg.raw(key));
}

// ---------------------------------------------------------------------------
// Manifest sidecar: enough to reproduce the output bit for bit.

uint64_t fnv1a64(std::string_view data) {
  uint64_t h = 1469598103934665603ull;
  for (char c : data) {
    h ^= static_cast<uint8_t>(c);
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(v));
  return buf;
}

struct Manifest {
  std::string subcommand;
  json inputs = json::object();
  json outputs = json::object();
  json config = json::object();
  json counts = json::object();
  json extra = json::object();

  void write(const std::string& primary_output) const {
    json j;
    j["tool"] = "tsgen";
    j["version"] = kVersion;
    j["subcommand"] = subcommand;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["config"] = config;
    j["config_hash"] = hex64(fnv1a64(config.dump()));
    j["counts"] = counts;
    for (const auto& [key, value] : extra.items()) j[key] = value;
    write_file(primary_output + ".manifest.json", j.dump(2) + "\n");
  }
};

// ---------------------------------------------------------------------------
// Shared file helpers.

std::vector<TSRecord> read_records(const std::string& path) {
  LineReader reader(path);
  std::vector<TSRecord> records;
  while (auto line = reader.next()) {
    try {
      records.push_back(parse_record(*line));
    } catch (const Error& e) {
      throw Error(e.kind(), path + ":" + std::to_string(reader.line_no()) +
                                ": " + e.what());
    }
  }
  return records;
}

void require_same_line_count(const std::string& a_path, size_t a,
                             const std::string& b_path, size_t b) {
  if (a != b)
    throw Error(ErrorKind::kLineCountMismatch,
                a_path + " has " + std::to_string(a) + " lines but " +
                    b_path + " has " + std::to_string(b));
}

std::vector<std::vector<std::string>> tokenize_lines(
    const std::string& path, const std::vector<std::string>& lines) {
  std::vector<std::vector<std::string>> out;
  out.reserve(lines.size());
  for (size_t i = 0; i < lines.size(); ++i) {
    try {
      out.push_back(tokenize(lines[i]));
    } catch (const Error& e) {
      throw Error(e.kind(),
                  path + ":" + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return out;
}

// Whitespace-only split for pre-tokenized files (no punctuation handling).
std::vector<std::string> split_pretokenized(const std::string& line) {
  std::vector<std::string> tokens;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

// ---------------------------------------------------------------------------
// Subcommands.

int cmd_fit_lengths(const std::string& records_path,
                    const std::string& lengths_path, bool fallback,
                    const std::string& out_path) {
  const int given = (!records_path.empty() ? 1 : 0) +
                    (!lengths_path.empty() ? 1 : 0) + (fallback ? 1 : 0);
  if (given != 1)
    throw Error(ErrorKind::kConfig,
                "fit-lengths needs exactly one of --records, --lengths, "
                "--fallback");

  LengthDistribution dist = LengthDistribution::fallback_geometric();
  Manifest manifest;
  manifest.subcommand = "fit-lengths";
  if (!records_path.empty()) {
    auto records = read_records(records_path);
    std::vector<int64_t> lengths;
    lengths.reserve(records.size());
    for (const auto& r : records) lengths.push_back(r.span_length());
    dist = LengthDistribution::fit(lengths);
    manifest.inputs["records"] = records_path;
    manifest.counts["records"] = records.size();
  } else if (!lengths_path.empty()) {
    LineReader reader(lengths_path);
    std::vector<int64_t> lengths;
    while (auto line = reader.next()) {
      if (line->empty()) continue;
      lengths.push_back(parse_config_value<int64_t>("lengths", *line));
    }
    dist = LengthDistribution::fit(lengths);
    manifest.inputs["lengths"] = lengths_path;
    manifest.counts["lengths"] = lengths.size();
  } else {
    manifest.counts["fallback"] = true;
  }

  dist.save(out_path);
  manifest.outputs["distribution"] = out_path;
  manifest.extra["length_distribution"] = json::parse(dist.to_json());
  manifest.write(out_path);
  std::cerr << "fit-lengths: wrote " << out_path << " (max_len "
            << dist.max_len() << ")\n";
  return 0;
}

int cmd_build_masked(const std::string& name, Origin origin,
                     const std::string& src_path, const std::string& tgt_path,
                     const std::string& dist_path, const std::string& out_path,
                     uint64_t seed, int threads) {
  auto dist = LengthDistribution::load(dist_path);
  int64_t skipped_empty = 0;
  auto pairs = read_parallel(src_path, tgt_path, &skipped_empty);

  auto out = open_output(out_path);
  auto stats = build_masked_corpus(
      pairs, dist, origin, seed,
      [&](const TSRecord& r) { out << serialize_record(r) << '\n'; }, threads);
  out.close();

  Manifest manifest;
  manifest.subcommand = name;
  manifest.inputs["src"] = src_path;
  manifest.inputs["tgt"] = tgt_path;
  manifest.inputs["distribution"] = dist_path;
  manifest.outputs["records"] = out_path;
  manifest.config["seed"] = seed;
  manifest.config["threads"] = threads;
  manifest.counts["input_pairs"] = pairs.size();
  manifest.counts["skipped_empty"] = skipped_empty;
  manifest.counts["records"] = stats.records;
  manifest.counts["unsampleable"] = stats.unsampleable;
  manifest.extra["length_distribution"] = json::parse(dist.to_json());
  manifest.write(out_path);
  std::cerr << name << ": " << stats.records << " records ("
            << stats.unsampleable << " unsampleable) -> " << out_path << "\n";
  return 0;
}

int cmd_train_aligner(const std::string& src_path, const std::string& tgt_path,
                      const std::string& out_path, int iterations,
                      int64_t min_len, int64_t max_len, int64_t cap,
                      double prune, uint64_t seed, int threads) {
  int64_t skipped_empty = 0;
  auto pairs = read_parallel(src_path, tgt_path, &skipped_empty);
  auto kept = filter_for_alignment(pairs, min_len, max_len, cap, seed);
  if (kept.empty())
    throw Error(ErrorKind::kEmptyInput,
                "no pairs survive the [" + std::to_string(min_len) + "," +
                    std::to_string(max_len) + "] length filter");

  TrainLexiconOptions opts;
  opts.iterations = iterations;
  opts.prune_threshold = prune;
  opts.threads = threads;
  auto result = train_lexicon(kept, opts);
  result.lexicon.save_tsv(out_path);

  Manifest manifest;
  manifest.subcommand = "train-aligner";
  manifest.inputs["src"] = src_path;
  manifest.inputs["tgt"] = tgt_path;
  manifest.outputs["lexicon"] = out_path;
  manifest.config["iterations"] = iterations;
  manifest.config["min_len"] = min_len;
  manifest.config["max_len"] = max_len;
  manifest.config["cap"] = cap;
  manifest.config["prune"] = prune;
  manifest.config["seed"] = seed;
  manifest.config["threads"] = threads;
  manifest.counts["input_pairs"] = pairs.size();
  manifest.counts["skipped_empty"] = skipped_empty;
  manifest.counts["trained_pairs"] = kept.size();
  manifest.extra["log_likelihood"] = result.log_likelihood;
  manifest.write(out_path);
  std::cerr << "train-aligner: " << kept.size() << " pairs, " << iterations
            << " iterations -> " << out_path << "\n";
  return 0;
}

int cmd_align(const std::string& mt_path, const std::string& ref_path,
              const std::string& lexicon_path, const std::string& out_path,
              int threads) {
  auto mt_lines = read_lines(mt_path);
  auto ref_lines = read_lines(ref_path);
  require_same_line_count(mt_path, mt_lines.size(), ref_path,
                          ref_lines.size());
  auto mt = tokenize_lines(mt_path, mt_lines);
  auto ref = tokenize_lines(ref_path, ref_lines);
  auto lexicon = LexiconTable::load_tsv(lexicon_path);

  auto lines = parallel_map<std::string>(mt.size(), threads, [&](size_t i) {
    return links_to_pharaoh(align(mt[i], ref[i], lexicon));
  });
  auto out = open_output(out_path);
  for (const auto& line : lines) out << line << '\n';
  out.close();

  Manifest manifest;
  manifest.subcommand = "align";
  manifest.inputs["mt"] = mt_path;
  manifest.inputs["ref"] = ref_path;
  manifest.inputs["lexicon"] = lexicon_path;
  manifest.outputs["alignments"] = out_path;
  manifest.config["threads"] = threads;
  manifest.counts["sentences"] = mt.size();
  manifest.write(out_path);
  std::cerr << "align: " << mt.size() << " sentences -> " << out_path << "\n";
  return 0;
}

int cmd_train_lm(const std::string& corpus_path, const std::string& out_path,
                 int order, double discount) {
  auto lines = read_lines(corpus_path);
  auto sentences = tokenize_lines(corpus_path, lines);
  auto lm = NGramLM::train(sentences, order, discount);
  lm.save(out_path);

  int64_t tokens = 0;
  for (const auto& s : sentences) tokens += static_cast<int64_t>(s.size());
  Manifest manifest;
  manifest.subcommand = "train-lm";
  manifest.inputs["corpus"] = corpus_path;
  manifest.outputs["lm"] = out_path;
  manifest.config["order"] = order;
  manifest.config["discount"] = discount;
  manifest.counts["sentences"] = sentences.size();
  manifest.counts["tokens"] = tokens;
  manifest.counts["vocabulary"] = lm.vocab_size();
  manifest.write(out_path);
  std::cerr << "train-lm: order " << order << ", vocab " << lm.vocab_size()
            << " -> " << out_path << "\n";
  return 0;
}

int cmd_score_qe(const std::string& src_path, const std::string& mt_path,
                 const std::string& lm_path, const std::string& lexicon_path,
                 const std::string& out_path, double alpha, int threads) {
  auto src_lines = read_lines(src_path);
  auto mt_lines = read_lines(mt_path);
  require_same_line_count(src_path, src_lines.size(), mt_path,
                          mt_lines.size());
  auto src = tokenize_lines(src_path, src_lines);
  auto mt = tokenize_lines(mt_path, mt_lines);
  auto lm = NGramLM::load(lm_path);
  auto lexicon = LexiconTable::load_tsv(lexicon_path);

  auto lines = parallel_map<std::string>(mt.size(), threads, [&](size_t i) {
    if (mt[i].empty()) return std::string();
    auto conf = score_words(src[i], mt[i], lm, lexicon, alpha);
    std::string line;
    for (size_t j = 0; j < conf.scores.size(); ++j) {
      if (j) line.push_back(' ');
      line += fmt_double(conf.scores[j]);
    }
    return line;
  });
  auto out = open_output(out_path);
  for (const auto& line : lines) out << line << '\n';
  out.close();

  Manifest manifest;
  manifest.subcommand = "score-qe";
  manifest.inputs["src"] = src_path;
  manifest.inputs["mt"] = mt_path;
  manifest.inputs["lm"] = lm_path;
  manifest.inputs["lexicon"] = lexicon_path;
  manifest.outputs["scores"] = out_path;
  manifest.config["alpha"] = alpha;
  manifest.config["threads"] = threads;
  manifest.counts["sentences"] = mt.size();
  manifest.write(out_path);
  std::cerr << "score-qe: " << mt.size() << " sentences -> " << out_path
            << "\n";
  return 0;
}

int cmd_build_qe(const std::string& src_path, const std::string& mt_path,
                 const std::string& ref_path, const std::string& dist_path,
                 const std::string& lm_path, const std::string& lexicon_path,
                 const std::string& align_lexicon_path,
                 const std::string& scores_path,
                 const std::string& alignments_path,
                 const std::string& out_path, double tau, double alpha,
                 int64_t max_suggestion_ratio, uint64_t seed, int threads) {
  auto src_lines = read_lines(src_path);
  auto mt_lines = read_lines(mt_path);
  auto ref_lines = read_lines(ref_path);
  require_same_line_count(src_path, src_lines.size(), mt_path,
                          mt_lines.size());
  require_same_line_count(mt_path, mt_lines.size(), ref_path,
                          ref_lines.size());
  auto src = tokenize_lines(src_path, src_lines);
  auto mt = tokenize_lines(mt_path, mt_lines);
  auto ref = tokenize_lines(ref_path, ref_lines);
  auto dist = LengthDistribution::load(dist_path);

  std::optional<NGramLM> lm;
  std::optional<LexiconTable> lexicon;
  std::optional<LexiconTable> align_lexicon;
  std::vector<ConfidenceVector> external_scores;
  std::vector<AlignmentLinks> external_links;
  const bool use_external_scores = !scores_path.empty();
  const bool use_external_links = !alignments_path.empty();

  if (use_external_scores) {
    std::vector<size_t> mt_lengths;
    mt_lengths.reserve(mt.size());
    for (const auto& s : mt) mt_lengths.push_back(s.size());
    external_scores = load_external_scores(scores_path, mt_lengths);
  } else {
    if (lm_path.empty() || lexicon_path.empty())
      throw Error(ErrorKind::kConfig,
                  "build-qe needs --lm and --lexicon (or --scores)");
    lm = NGramLM::load(lm_path);
    lexicon = LexiconTable::load_tsv(lexicon_path);
  }
  if (use_external_links) {
    auto lines = read_lines(alignments_path);
    require_same_line_count(alignments_path, lines.size(), mt_path,
                            mt_lines.size());
    external_links.reserve(lines.size());
    for (size_t i = 0; i < lines.size(); ++i) {
      try {
        external_links.push_back(pharaoh_to_links(lines[i]));
      } catch (const Error& e) {
        throw Error(e.kind(), alignments_path + ":" + std::to_string(i + 1) +
                                  ": " + e.what());
      }
    }
  } else {
    if (align_lexicon_path.empty())
      throw Error(ErrorKind::kConfig,
                  "build-qe needs --align-lexicon (or --alignments)");
    align_lexicon = LexiconTable::load_tsv(align_lexicon_path);
  }

  QeModels models;
  if (lm) models.lm = &*lm;
  if (lexicon) models.adequacy_lexicon = &*lexicon;
  if (align_lexicon) models.align_lexicon = &*align_lexicon;
  QeOptions opts;
  opts.tau = tau;
  opts.alpha = alpha;
  opts.max_suggestion_ratio = max_suggestion_ratio;

  struct ItemResult {
    std::optional<TSRecord> record;
    QeCounters counters;
  };
  auto results = parallel_map<ItemResult>(mt.size(), threads, [&](size_t i) {
    ItemResult item;
    Rng rng(Rng::derive(seed, static_cast<uint64_t>(i)));
    item.record = build_qe_record(
        src[i], mt[i], ref[i], models, dist, opts, rng, item.counters,
        use_external_scores ? &external_scores[i] : nullptr,
        use_external_links ? &external_links[i] : nullptr);
    return item;
  });

  QeCounters counters;
  auto out = open_output(out_path);
  for (const auto& item : results) {
    counters.emitted += item.counters.emitted;
    counters.empty += item.counters.empty;
    counters.unsampleable += item.counters.unsampleable;
    counters.confident += item.counters.confident;
    counters.unaligned += item.counters.unaligned;
    counters.contaminated += item.counters.contaminated;
    counters.overlong += item.counters.overlong;
    if (item.record) out << serialize_record(*item.record) << '\n';
  }
  out.close();

  Manifest manifest;
  manifest.subcommand = "build-qe";
  manifest.inputs["src"] = src_path;
  manifest.inputs["mt"] = mt_path;
  manifest.inputs["ref"] = ref_path;
  manifest.inputs["distribution"] = dist_path;
  if (!lm_path.empty()) manifest.inputs["lm"] = lm_path;
  if (!lexicon_path.empty()) manifest.inputs["lexicon"] = lexicon_path;
  if (!align_lexicon_path.empty())
    manifest.inputs["align_lexicon"] = align_lexicon_path;
  if (use_external_scores) manifest.inputs["scores"] = scores_path;
  if (use_external_links) manifest.inputs["alignments"] = alignments_path;
  manifest.outputs["records"] = out_path;
  manifest.config["tau"] = tau;
  manifest.config["alpha"] = alpha;
  manifest.config["max_suggestion_ratio"] = max_suggestion_ratio;
  manifest.config["seed"] = seed;
  manifest.config["threads"] = threads;
  manifest.counts["input_triples"] = mt.size();
  manifest.counts["records"] = counters.emitted;
  manifest.counts["skip_empty"] = counters.empty;
  manifest.counts["skip_unsampleable"] = counters.unsampleable;
  manifest.counts["skip_confident"] = counters.confident;
  manifest.counts["skip_unaligned"] = counters.unaligned;
  manifest.counts["skip_contaminated"] = counters.contaminated;
  manifest.counts["skip_overlong"] = counters.overlong;
  manifest.write(out_path);
  std::cerr << "build-qe: " << counters.emitted << " records from "
            << mt.size() << " triples -> " << out_path << "\n";
  return 0;
}

// Sentence sources for the discriminator: either a plain line file or the
// source column of one or more TS datasets.
std::vector<std::string> read_discriminator_side(
    const std::string& line_path,
    const std::vector<std::string>& records_paths, const char* side,
    int64_t* dropped) {
  if (line_path.empty() == records_paths.empty())
    throw Error(ErrorKind::kConfig,
                std::string("train-discriminator needs exactly one of --") +
                    side + " and --" + side + "-records");
  std::vector<std::string> kept;
  if (!records_paths.empty()) {
    for (const auto& path : records_paths)
      for (const auto& r : read_records(path))
        kept.push_back(join_tokens(r.src_tokens));
    return kept;
  }
  auto lines = read_lines(line_path);
  kept.reserve(lines.size());
  for (const auto& line : lines) {
    if (line.find_first_not_of(" \t") == std::string::npos) {
      ++*dropped;
      continue;
    }
    kept.push_back(line);
  }
  return kept;
}

int cmd_train_discriminator(const std::string& golden_path,
                            const std::vector<std::string>& golden_records,
                            const std::string& synth_path,
                            const std::vector<std::string>& synth_records,
                            const std::string& out_path, int epochs,
                            double learning_rate, uint64_t seed) {
  int64_t dropped_golden = 0, dropped_synth = 0;
  auto golden = read_discriminator_side(golden_path, golden_records, "golden",
                                        &dropped_golden);
  auto synth = read_discriminator_side(synth_path, synth_records, "synth",
                                       &dropped_synth);

  auto set = build_discriminator_training_set(golden, synth, seed);
  DomainTrainOptions opts;
  opts.epochs = epochs;
  opts.learning_rate = learning_rate;
  opts.seed = seed;
  auto result = train_discriminator(set, opts);
  result.model.save(out_path);

  Manifest manifest;
  manifest.subcommand = "train-discriminator";
  if (golden_path.empty())
    manifest.inputs["golden"] = golden_records;
  else
    manifest.inputs["golden"] = golden_path;
  if (synth_path.empty())
    manifest.inputs["synth"] = synth_records;
  else
    manifest.inputs["synth"] = synth_path;
  manifest.outputs["model"] = out_path;
  manifest.config["epochs"] = epochs;
  manifest.config["learning_rate"] = learning_rate;
  manifest.config["seed"] = seed;
  manifest.counts["golden_sentences"] = golden.size();
  manifest.counts["synthetic_sentences"] = synth.size();
  manifest.counts["dropped_blank"] = dropped_golden + dropped_synth;
  manifest.counts["training_examples"] = set.size();
  manifest.extra["epoch_loss"] = result.epoch_loss;
  manifest.write(out_path);
  std::cerr << "train-discriminator: " << set.size() << " examples, "
            << epochs << " epochs -> " << out_path << "\n";
  return 0;
}

int cmd_filter_indomain(const std::vector<std::string>& in_paths,
                        const std::string& model_path,
                        const std::string& out_path, double theta,
                        double target_fraction, bool has_target_fraction) {
  std::vector<TSRecord> records;
  for (const auto& path : in_paths) {
    auto part = read_records(path);
    records.insert(records.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
  }
  auto model = DomainModel::load(model_path);

  double theta_used = theta;
  if (has_target_fraction) {
    std::vector<double> scores;
    scores.reserve(records.size());
    for (const auto& r : records)
      scores.push_back(model.score(join_tokens(r.src_tokens)));
    theta_used = calibrate_threshold(scores, target_fraction);
  }

  FilterReport report;
  auto kept = filter_in_domain(records, model, theta_used, &report);
  auto out = open_output(out_path);
  for (const auto& r : kept) out << serialize_record(r) << '\n';
  out.close();

  Manifest manifest;
  manifest.subcommand = "filter-indomain";
  manifest.inputs["records"] = in_paths;
  manifest.inputs["model"] = model_path;
  manifest.outputs["records"] = out_path;
  manifest.config["theta"] = theta_used;
  if (has_target_fraction)
    manifest.config["target_fraction"] = target_fraction;
  manifest.counts["total"] = report.total;
  manifest.counts["kept"] = report.kept;
  manifest.write(out_path);
  std::cerr << "filter-indomain: kept " << report.kept << "/" << report.total
            << " at theta " << theta_used << " -> " << out_path << "\n";
  return 0;
}

int cmd_emit_model_input(const std::string& phase,
                         const std::vector<std::string>& in_paths,
                         const std::string& out_path) {
  if (phase != "ls" && phase != "ind" && phase != "finetune")
    throw Error(ErrorKind::kConfig,
                "--phase must be ls, ind, or finetune; got '" + phase + "'");
  auto out = open_output(out_path);
  Manifest manifest;
  manifest.subcommand = "emit-model-input";
  json inputs = json::array();
  int64_t total = 0;
  for (const auto& path : in_paths) {
    auto records = read_records(path);
    for (const auto& r : records) {
      auto [input, output] = build_model_input(r);
      out << join_tokens(input) << '\t' << join_tokens(output) << '\n';
    }
    total += static_cast<int64_t>(records.size());
    inputs.push_back(path);
  }
  out.close();
  manifest.inputs["records"] = inputs;
  manifest.outputs["model_input"] = out_path;
  manifest.config["phase"] = phase;
  manifest.counts["examples"] = total;
  manifest.write(out_path);
  std::cerr << "emit-model-input: phase " << phase << ", " << total
            << " examples -> " << out_path << "\n";
  return 0;
}

int cmd_eval_bleu(const std::string& hyp_path, const std::string& ref_path,
                  bool smooth, const std::string& json_path) {
  auto hyp_lines = read_lines(hyp_path);
  auto ref_lines = read_lines(ref_path);
  require_same_line_count(hyp_path, hyp_lines.size(), ref_path,
                          ref_lines.size());
  std::vector<std::vector<std::string>> hyps, refs;
  hyps.reserve(hyp_lines.size());
  refs.reserve(ref_lines.size());
  for (const auto& line : hyp_lines) hyps.push_back(split_pretokenized(line));
  for (const auto& line : ref_lines) refs.push_back(split_pretokenized(line));

  auto result = corpus_bleu(hyps, refs, smooth);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "BLEU = %.2f\n", result.score);
  std::cout << buf;
  if (!json_path.empty()) {
    write_file(json_path, result.to_json());
    Manifest manifest;
    manifest.subcommand = "eval-bleu";
    manifest.inputs["hyp"] = hyp_path;
    manifest.inputs["ref"] = ref_path;
    manifest.outputs["report"] = json_path;
    manifest.config["smooth"] = smooth;
    manifest.counts["segments"] = hyps.size();
    manifest.write(json_path);
  } else {
    std::cout << result.to_json();
  }
  return 0;
}

int cmd_stats(const std::vector<std::string>& in_paths,
              const std::string& json_path) {
  DatasetStats stats;
  for (const auto& path : in_paths)
    for (const auto& r : read_records(path)) stats.add(r);
  std::cout << stats.to_table();
  if (!json_path.empty()) {
    write_file(json_path, stats.to_json());
    Manifest manifest;
    manifest.subcommand = "stats";
    manifest.inputs["records"] = in_paths;
    manifest.outputs["report"] = json_path;
    manifest.counts["records"] = stats.total;
    manifest.write(json_path);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tsgen: translation-suggestion data synthesis toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  // Shared tunables; each subcommand registers only the flags it honors.
  uint64_t seed = 1;
  int threads = 1;
  int iterations = 5;
  int64_t min_len = 5, max_len = 100, cap = 0;
  int order = 3;
  double discount = NGramLM::kDefaultDiscount;
  double prune = 1e-6;
  double alpha = 0.5, tau = 0.5, theta = 0.5;
  int epochs = 5;
  double learning_rate = 0.1;
  double target_fraction = 0.0;
  int64_t max_suggestion_ratio = 4;
  bool smooth = false;

  std::string config_path;
  std::string src_path, tgt_path, mt_path, ref_path;
  std::string dist_path, lm_path, lexicon_path, align_lexicon_path;
  std::string scores_path, alignments_path, model_path;
  std::string records_path, lengths_path, hyp_path;
  std::string out_path, json_path, phase;
  std::vector<std::string> in_paths;
  std::vector<std::string> golden_records_paths, synth_records_paths;
  bool fallback = false;

  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path,
                    "Flat key=value config file; CLI flags override it");
  };

  auto* fit =
      app.add_subcommand("fit-lengths", "Fit the span-length distribution");
  fit->add_option("--records", records_path, "Golden TS dataset (6-col TSV)");
  fit->add_option("--lengths", lengths_path,
                  "File of span lengths, one per line");
  fit->add_flag("--fallback", fallback, "Write the fallback distribution");
  fit->add_option("--out", out_path, "Output distribution JSON")->required();
  add_config(fit);

  auto* golden = app.add_subcommand("build-golden",
                                    "Mask golden parallel data (strategy 1)");
  auto* pseudo = app.add_subcommand(
      "build-pseudo", "Mask pseudo-parallel (MT) data (strategy 2)");
  for (auto* cmd : {golden, pseudo}) {
    cmd->add_option("--src", src_path, "Source-side line file")->required();
    cmd->add_option("--tgt", tgt_path,
                    "Target-side line file (reference or MT output)")
        ->required();
    cmd->add_option("--dist", dist_path, "Span-length distribution JSON")
        ->required();
    cmd->add_option("--out", out_path, "Output TS dataset (6-col TSV)")
        ->required();
    cmd->add_option("--seed", seed, "RNG seed");
    cmd->add_option("--threads", threads, "Worker threads");
    add_config(cmd);
  }

  auto* aligner = app.add_subcommand("train-aligner",
                                     "Train the EM word-translation lexicon");
  aligner->add_option("--src", src_path, "Conditioning-side line file")
      ->required();
  aligner->add_option("--tgt", tgt_path, "Generated-side line file")
      ->required();
  aligner->add_option("--out", out_path, "Output lexicon TSV")->required();
  aligner->add_option("--iterations", iterations, "EM iterations");
  aligner->add_option("--min-len", min_len, "Minimum sentence length");
  aligner->add_option("--max-len", max_len, "Maximum sentence length");
  aligner->add_option("--cap", cap, "Subsample to at most this many pairs");
  aligner->add_option("--prune", prune, "Drop entries below this probability");
  aligner->add_option("--seed", seed, "RNG seed (subsampling)");
  aligner->add_option("--threads", threads, "Worker threads");
  add_config(aligner);

  auto* align_cmd = app.add_subcommand(
      "align", "Align MT to reference (Pharaoh output)");
  align_cmd->add_option("--mt", mt_path, "MT-side line file")->required();
  align_cmd->add_option("--ref", ref_path, "Reference-side line file")
      ->required();
  align_cmd->add_option("--lexicon", lexicon_path, "Lexicon TSV (MT -> ref)")
      ->required();
  align_cmd->add_option("--out", out_path, "Output Pharaoh alignments")
      ->required();
  align_cmd->add_option("--threads", threads, "Worker threads");
  add_config(align_cmd);

  auto* lm_cmd =
      app.add_subcommand("train-lm", "Train the n-gram language model");
  lm_cmd->add_option("--corpus", src_path,
                     "Training text, one sentence per line")
      ->required();
  lm_cmd->add_option("--out", out_path, "Output LM file")->required();
  lm_cmd->add_option("--order", order, "n-gram order");
  lm_cmd->add_option("--discount", discount, "Absolute discount in (0,1]");
  add_config(lm_cmd);

  auto* score = app.add_subcommand("score-qe",
                                   "Write word confidence scores per line");
  score->add_option("--src", src_path, "Source line file")->required();
  score->add_option("--mt", mt_path, "MT line file")->required();
  score->add_option("--lm", lm_path, "LM file from train-lm")->required();
  score->add_option("--lexicon", lexicon_path,
                    "Adequacy lexicon TSV (source -> translation)")
      ->required();
  score->add_option("--out", out_path, "Output score file")->required();
  score->add_option("--alpha", alpha, "Fluency/adequacy fusion weight");
  score->add_option("--threads", threads, "Worker threads");
  add_config(score);

  auto* qe =
      app.add_subcommand("build-qe", "Build qe-origin records (strategy 3)");
  qe->add_option("--src", src_path, "Source line file")->required();
  qe->add_option("--mt", mt_path, "MT line file")->required();
  qe->add_option("--ref", ref_path, "Reference line file")->required();
  qe->add_option("--dist", dist_path, "Span-length distribution JSON")
      ->required();
  qe->add_option("--lm", lm_path, "LM file (unless --scores)");
  qe->add_option("--lexicon", lexicon_path,
                 "Adequacy lexicon TSV (unless --scores)");
  qe->add_option("--align-lexicon", align_lexicon_path,
                 "Alignment lexicon TSV (unless --alignments)");
  qe->add_option("--scores", scores_path, "External confidence scores");
  qe->add_option("--alignments", alignments_path,
                 "External Pharaoh alignments");
  qe->add_option("--out", out_path, "Output TS dataset (6-col TSV)")
      ->required();
  qe->add_option("--tau", tau, "Confidence gate threshold");
  qe->add_option("--alpha", alpha, "Fluency/adequacy fusion weight");
  qe->add_option("--max-suggestion-ratio", max_suggestion_ratio,
                 "Reject hulls longer than ratio x span length");
  qe->add_option("--seed", seed, "RNG seed");
  qe->add_option("--threads", threads, "Worker threads");
  add_config(qe);

  auto* disc = app.add_subcommand("train-discriminator",
                                  "Train the in-domain discriminator");
  disc->add_option("--golden", src_path, "Golden source sentences");
  disc->add_option("--golden-records", golden_records_paths,
                   "Take golden sources from these TS dataset(s)");
  disc->add_option("--synth", tgt_path, "Synthetic source sentences");
  disc->add_option("--synth-records", synth_records_paths,
                   "Take synthetic sources from these TS dataset(s)");
  disc->add_option("--out", out_path, "Output model file")->required();
  disc->add_option("--epochs", epochs, "SGD epochs");
  disc->add_option("--learning-rate", learning_rate, "SGD step size");
  disc->add_option("--seed", seed, "RNG seed (sampling + shuffling)");
  add_config(disc);

  auto* filter = app.add_subcommand("filter-indomain",
                                    "Keep records the discriminator accepts");
  filter->add_option("--in", in_paths, "Input TS dataset(s), in order")
      ->required();
  filter->add_option("--model", model_path, "Discriminator model file")
      ->required();
  filter->add_option("--out", out_path, "Output TS dataset")->required();
  filter->add_option("--theta", theta, "Keep records with score > theta");
  auto* tf_opt = filter->add_option("--target-fraction", target_fraction,
                                    "Calibrate theta to keep this fraction");
  add_config(filter);

  auto* emit = app.add_subcommand("emit-model-input",
                                  "Write spliced seq2seq training pairs");
  emit->add_option("--phase", phase, "ls | ind | finetune")->required();
  emit->add_option("--in", in_paths, "TS dataset(s), concatenated in order")
      ->required();
  emit->add_option("--out", out_path, "Output 2-col TSV")->required();
  add_config(emit);

  auto* bleu = app.add_subcommand("eval-bleu",
                                  "Corpus BLEU of suggestions vs references");
  bleu->add_option("--hyp", hyp_path,
                   "Hypothesis file, one suggestion per line")
      ->required();
  bleu->add_option("--ref", ref_path,
                   "Reference file, one suggestion per line")
      ->required();
  bleu->add_flag("--smooth", smooth, "Add-one smoothing");
  bleu->add_option("--json", json_path, "Write the JSON report here");
  add_config(bleu);

  auto* stats_cmd = app.add_subcommand("stats", "Dataset statistics report");
  stats_cmd->add_option("--in", in_paths, "Input TS dataset(s), in order")
      ->required();
  stats_cmd->add_option("--json", json_path, "Write the JSON report here");
  add_config(stats_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    Config cfg;
    if (!config_path.empty()) cfg = Config::load(config_path);
    CLI::App* active = app.get_subcommands().front();
    apply_config(active, cfg, "--seed", "seed", seed);
    apply_config(active, cfg, "--threads", "threads", threads);
    apply_config(active, cfg, "--iterations", "iterations", iterations);
    apply_config(active, cfg, "--min-len", "min_len", min_len);
    apply_config(active, cfg, "--max-len", "max_len", max_len);
    apply_config(active, cfg, "--cap", "cap", cap);
    apply_config(active, cfg, "--order", "order", order);
    apply_config(active, cfg, "--discount", "discount", discount);
    apply_config(active, cfg, "--prune", "prune", prune);
    apply_config(active, cfg, "--alpha", "alpha", alpha);
    apply_config(active, cfg, "--tau", "tau", tau);
    apply_config(active, cfg, "--theta", "theta", theta);
    apply_config(active, cfg, "--epochs", "epochs", epochs);
    apply_config(active, cfg, "--learning-rate", "learning_rate",
                 learning_rate);
    apply_config(active, cfg, "--max-suggestion-ratio",
                 "max_suggestion_ratio", max_suggestion_ratio);
    apply_config(active, cfg, "--smooth", "smooth", smooth);
    bool has_target_fraction = tf_opt->count() > 0;
    if (active == filter && !has_target_fraction &&
        cfg.has("target_fraction")) {
      target_fraction = parse_config_value<double>(
          "target_fraction", cfg.raw("target_fraction"));
      has_target_fraction = true;
    }
    if (threads < 1)
      throw Error(ErrorKind::kConfig, "threads must be >= 1");

    if (app.got_subcommand(fit))
      return cmd_fit_lengths(records_path, lengths_path, fallback, out_path);
    if (app.got_subcommand(golden))
      return cmd_build_masked("build-golden", Origin::kGolden, src_path,
                              tgt_path, dist_path, out_path, seed, threads);
    if (app.got_subcommand(pseudo))
      return cmd_build_masked("build-pseudo", Origin::kPseudo, src_path,
                              tgt_path, dist_path, out_path, seed, threads);
    if (app.got_subcommand(aligner))
      return cmd_train_aligner(src_path, tgt_path, out_path, iterations,
                               min_len, max_len, cap, prune, seed, threads);
    if (app.got_subcommand(align_cmd))
      return cmd_align(mt_path, ref_path, lexicon_path, out_path, threads);
    if (app.got_subcommand(lm_cmd))
      return cmd_train_lm(src_path, out_path, order, discount);
    if (app.got_subcommand(score))
      return cmd_score_qe(src_path, mt_path, lm_path, lexicon_path, out_path,
                          alpha, threads);
    if (app.got_subcommand(qe))
      return cmd_build_qe(src_path, mt_path, ref_path, dist_path, lm_path,
                          lexicon_path, align_lexicon_path, scores_path,
                          alignments_path, out_path, tau, alpha,
                          max_suggestion_ratio, seed, threads);
    if (app.got_subcommand(disc))
      return cmd_train_discriminator(src_path, golden_records_paths, tgt_path,
                                     synth_records_paths, out_path, epochs,
                                     learning_rate, seed);
    if (app.got_subcommand(filter))
      return cmd_filter_indomain(in_paths, model_path, out_path, theta,
                                 target_fraction, has_target_fraction);
    if (app.got_subcommand(emit))
      return cmd_emit_model_input(phase, in_paths, out_path);
    if (app.got_subcommand(bleu))
      return cmd_eval_bleu(hyp_path, ref_path, smooth, json_path);
    if (app.got_subcommand(stats_cmd)) return cmd_stats(in_paths, json_path);
    std::cerr << "tsgen: no subcommand dispatched\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "tsgen: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "tsgen: unexpected error: " << e.what() << "\n";
    return 1;
  }
}

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

#include "tsgen/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>

#include "tsgen/error.hpp"
#include "tsgen/io_util.hpp"
#include "tsgen/parallel.hpp"
#include "tsgen/rng.hpp"

namespace tsgen {

LexiconTable::LexiconTable() {
  src_vocab_.add(kNullWord);
  rows_.emplace_back();
}

double LexiconTable::prob(std::string_view src, std::string_view tgt) const {
  auto s = src_vocab_.find(src);
  if (!s) return 0.0;
  auto t = tgt_vocab_.find(tgt);
  if (!t) return 0.0;
  return prob_by_id(*s, *t);
}

double LexiconTable::null_prob(std::string_view tgt) const {
  auto t = tgt_vocab_.find(tgt);
  if (!t) return 0.0;
  return prob_by_id(kNullId, *t);
}

double LexiconTable::prob_by_id(uint32_t src_id, uint32_t tgt_id) const {
  if (src_id >= rows_.size()) return 0.0;
  const auto& row = rows_[src_id];
  auto it = row.find(tgt_id);
  return it == row.end() ? 0.0 : it->second;
}

std::optional<uint32_t> LexiconTable::source_id(std::string_view src) const {
  return src_vocab_.find(src);
}

std::optional<uint32_t> LexiconTable::target_id(std::string_view tgt) const {
  return tgt_vocab_.find(tgt);
}

double LexiconTable::row_sum(uint32_t src_id) const {
  if (src_id >= rows_.size()) return 0.0;
  std::vector<uint32_t> keys;
  keys.reserve(rows_[src_id].size());
  for (const auto& [t, p] : rows_[src_id]) keys.push_back(t);
  std::sort(keys.begin(), keys.end());
  double sum = 0.0;
  for (uint32_t t : keys) sum += rows_[src_id].at(t);
  return sum;
}

void LexiconTable::prune(double min_prob) {
  for (auto& row : rows_) {
    for (auto it = row.begin(); it != row.end();) {
      if (it->second < min_prob)
        it = row.erase(it);
      else
        ++it;
    }
    if (row.empty()) continue;
    std::vector<uint32_t> keys;
    keys.reserve(row.size());
    for (const auto& [t, p] : row) keys.push_back(t);
    std::sort(keys.begin(), keys.end());
    double sum = 0.0;
    for (uint32_t t : keys) sum += row.at(t);
    if (sum <= 0.0) continue;
    for (uint32_t t : keys) row[t] /= sum;
  }
}

namespace {

struct IdPair {
  std::vector<uint32_t> src;
  std::vector<uint32_t> tgt;
};

}  // namespace

// Gives tests and loaders a way to assemble a table directly.
struct LexiconBuilder {
  static LexiconTable build(
      const std::vector<std::tuple<std::string, std::string, double>>& entries,
      bool check_rows) {
    LexiconTable table;
    for (const auto& [s, t, p] : entries) {
      const uint32_t sid = s == LexiconTable::kNullWord
                               ? LexiconTable::kNullId
                               : table.src_vocab_.add(s);
      if (sid >= table.rows_.size()) table.rows_.emplace_back();
      const uint32_t tid = table.tgt_vocab_.add(t);
      if (p < 0.0 || p > 1.0 + 1e-9)
        throw Error(ErrorKind::kBadFormat,
                    "lexicon probability out of range: " + fmt_double(p));
      table.rows_[sid][tid] += p;
    }
    if (check_rows) {
      for (uint32_t s = 0; s < table.rows_.size(); ++s) {
        if (table.rows_[s].empty()) continue;
        const double sum = table.row_sum(s);
        if (std::abs(sum - 1.0) > 1e-6)
          throw Error(ErrorKind::kBadFormat,
                      "lexicon row for '" + table.src_vocab_.word(s) +
                          "' sums to " + fmt_double(sum));
      }
    }
    return table;
  }
};

LexiconTable make_lexicon(
    const std::vector<std::tuple<std::string, std::string, double>>& entries) {
  return LexiconBuilder::build(entries, true);
}

TrainLexiconResult train_lexicon(const std::vector<ParallelPair>& pairs,
                                 const TrainLexiconOptions& opts) {
  if (pairs.empty())
    throw Error(ErrorKind::kEmptyInput, "alignment corpus is empty");
  if (opts.iterations < 1)
    throw Error(ErrorKind::kConfig, "EM iterations must be >= 1");

  LexiconTable table;
  auto& src_vocab = table.src_vocab_;
  auto& tgt_vocab = table.tgt_vocab_;

  std::vector<IdPair> corpus;
  corpus.reserve(pairs.size());
  for (const auto& pair : pairs) {
    IdPair ids;
    ids.src.reserve(pair.src_tokens.size());
    ids.tgt.reserve(pair.tgt_tokens.size());
    for (const auto& tok : pair.src_tokens) ids.src.push_back(src_vocab.add(tok));
    for (const auto& tok : pair.tgt_tokens) ids.tgt.push_back(tgt_vocab.add(tok));
    corpus.push_back(std::move(ids));
  }
  const uint32_t n_src = src_vocab.size();
  const uint32_t n_tgt = tgt_vocab.size();

  // Uniform init over each row's co-occurring targets; the NULL row spans
  // the whole target vocabulary.
  auto& rows = table.rows_;
  rows.assign(n_src, {});
  for (const auto& ids : corpus)
    for (uint32_t s : ids.src)
      for (uint32_t t : ids.tgt) rows[s].emplace(t, 0.0);
  for (uint32_t t = 0; t < n_tgt; ++t) rows[LexiconTable::kNullId].emplace(t, 0.0);
  for (auto& row : rows) {
    if (row.empty()) continue;
    const double uniform = 1.0 / static_cast<double>(row.size());
    for (auto& [t, p] : row) p = uniform;
  }

  struct BlockPartial {
    std::vector<std::unordered_map<uint32_t, double>> counts;
    double log_likelihood = 0.0;
  };

  TrainLexiconResult result;
  const size_t block_size = kDefaultBlockSize;
  const size_t blocks = num_blocks(corpus.size(), block_size);

  for (int iter = 0; iter < opts.iterations; ++iter) {
    std::vector<BlockPartial> partials(blocks);
    for_each_block(
        corpus.size(), opts.threads, block_size,
        [&](size_t b, size_t begin, size_t end) {
          auto& part = partials[b];
          part.counts.assign(n_src, {});
          std::vector<double> posterior;
          for (size_t k = begin; k < end; ++k) {
            const auto& ids = corpus[k];
            const double n_candidates =
                static_cast<double>(ids.src.size()) + 1.0;
            for (uint32_t t : ids.tgt) {
              posterior.clear();
              double denom = rows[LexiconTable::kNullId].at(t);
              posterior.push_back(denom);
              for (uint32_t s : ids.src) {
                const double p = rows[s].at(t);
                posterior.push_back(p);
                denom += p;
              }
              part.log_likelihood +=
                  std::log(denom) - std::log(n_candidates);
              // Fractional counts p(t|s) / sum_s' p(t|s').
              part.counts[LexiconTable::kNullId][t] += posterior[0] / denom;
              for (size_t i = 0; i < ids.src.size(); ++i)
                part.counts[ids.src[i]][t] += posterior[i + 1] / denom;
            }
          }
        });

    // Merge in block order: per-key sums see the same addition sequence no
    // matter how many threads ran.
    std::vector<std::unordered_map<uint32_t, double>> counts(n_src);
    double log_likelihood = 0.0;
    for (auto& part : partials) {
      log_likelihood += part.log_likelihood;
      for (uint32_t s = 0; s < n_src; ++s)
        for (const auto& [t, c] : part.counts[s]) counts[s][t] += c;
    }
    result.log_likelihood.push_back(log_likelihood);

    // M-step: renormalize rows (sorted-key summation).
    for (uint32_t s = 0; s < n_src; ++s) {
      auto& row = rows[s];
      const auto& count_row = counts[s];
      if (row.empty()) continue;
      std::vector<uint32_t> keys;
      keys.reserve(row.size());
      for (const auto& [t, p] : row) keys.push_back(t);
      std::sort(keys.begin(), keys.end());
      double total = 0.0;
      for (uint32_t t : keys) {
        auto it = count_row.find(t);
        total += it == count_row.end() ? 0.0 : it->second;
      }
      if (total <= 0.0) continue;
      for (uint32_t t : keys) {
        auto it = count_row.find(t);
        row[t] = (it == count_row.end() ? 0.0 : it->second) / total;
      }
    }
  }

  table.prune(opts.prune_threshold);
  result.lexicon = std::move(table);
  return result;
}

AlignmentLinks align(const std::vector<std::string>& mt_tokens,
                     const std::vector<std::string>& ref_tokens,
                     const LexiconTable& lexicon) {
  AlignmentLinks out;
  std::vector<std::optional<uint32_t>> ref_ids;
  ref_ids.reserve(ref_tokens.size());
  for (const auto& tok : ref_tokens) ref_ids.push_back(lexicon.target_id(tok));

  for (size_t i = 0; i < mt_tokens.size(); ++i) {
    const auto src_id = lexicon.source_id(mt_tokens[i]);
    if (!src_id) continue;  // unseen MT token
    double best_p = 0.0;
    int32_t best_j = -1;
    for (size_t j = 0; j < ref_tokens.size(); ++j) {
      if (!ref_ids[j]) continue;
      const double p = lexicon.prob_by_id(*src_id, *ref_ids[j]);
      if (p > best_p) {  // strict: ties keep the smallest j
        best_p = p;
        best_j = static_cast<int32_t>(j);
      }
    }
    if (best_j < 0) continue;
    // NULL wins ties: a link must beat the NULL explanation of that token.
    const double null_p =
        lexicon.prob_by_id(LexiconTable::kNullId, *ref_ids[best_j]);
    if (best_p <= null_p) continue;
    out.links.emplace_back(static_cast<int32_t>(i), best_j);
  }
  return out;
}

std::vector<ParallelPair> filter_for_alignment(
    const std::vector<ParallelPair>& pairs, int64_t min_len, int64_t max_len,
    int64_t cap, uint64_t seed) {
  std::vector<ParallelPair> kept;
  if (cap > 0) kept.reserve(static_cast<size_t>(cap));
  Rng rng(seed);
  int64_t seen = 0;
  for (const auto& pair : pairs) {
    const int64_t sl = static_cast<int64_t>(pair.src_tokens.size());
    const int64_t tl = static_cast<int64_t>(pair.tgt_tokens.size());
    if (sl < min_len || sl > max_len || tl < min_len || tl > max_len) continue;
    if (cap <= 0) {
      kept.push_back(pair);
      continue;
    }
    // Reservoir sampling keeps the subsample uniform over the stream.
    if (seen < cap) {
      kept.push_back(pair);
    } else {
      const uint64_t j = rng.bounded(static_cast<uint64_t>(seen) + 1);
      if (j < static_cast<uint64_t>(cap)) kept[j] = pair;
    }
    ++seen;
  }
  if (cap > 0)
    std::sort(kept.begin(), kept.end(),
              [](const ParallelPair& a, const ParallelPair& b) {
                return a.id < b.id;
              });
  return kept;
}

std::string links_to_pharaoh(const AlignmentLinks& links) {
  std::string out;
  for (size_t k = 0; k < links.links.size(); ++k) {
    if (k) out.push_back(' ');
    out += std::to_string(links.links[k].first);
    out.push_back('-');
    out += std::to_string(links.links[k].second);
  }
  return out;
}

AlignmentLinks pharaoh_to_links(std::string_view line) {
  AlignmentLinks out;
  size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    if (pos >= line.size()) break;
    const size_t end = std::min(line.find(' ', pos), line.size());
    std::string_view item = line.substr(pos, end - pos);
    const size_t dash = item.find('-');
    if (dash == std::string_view::npos || dash == 0 || dash + 1 >= item.size())
      throw Error(ErrorKind::kBadFormat,
                  "bad alignment link '" + std::string(item) + "'");
    int32_t i = 0, j = 0;
    auto [p1, e1] = std::from_chars(item.data(), item.data() + dash, i);
    auto [p2, e2] = std::from_chars(item.data() + dash + 1,
                                    item.data() + item.size(), j);
    if (e1 != std::errc() || p1 != item.data() + dash || e2 != std::errc() ||
        p2 != item.data() + item.size() || i < 0 || j < 0)
      throw Error(ErrorKind::kBadFormat,
                  "bad alignment link '" + std::string(item) + "'");
    out.links.emplace_back(i, j);
    pos = end;
  }
  std::sort(out.links.begin(), out.links.end());
  for (size_t k = 1; k < out.links.size(); ++k) {
    if (out.links[k].first == out.links[k - 1].first)
      throw Error(ErrorKind::kBadFormat,
                  "MT index " + std::to_string(out.links[k].first) +
                      " linked twice");
  }
  return out;
}

void LexiconTable::save_tsv(const std::string& path) const {
  auto out = open_output(path);
  // Source rows sorted by word; entries by descending p, then target word.
  std::vector<uint32_t> src_ids(rows_.size());
  for (uint32_t s = 0; s < rows_.size(); ++s) src_ids[s] = s;
  std::sort(src_ids.begin(), src_ids.end(), [&](uint32_t a, uint32_t b) {
    return src_vocab_.word(a) < src_vocab_.word(b);
  });
  for (uint32_t s : src_ids) {
    const auto& row = rows_[s];
    if (row.empty()) continue;
    std::vector<std::pair<uint32_t, double>> entries(row.begin(), row.end());
    std::sort(entries.begin(), entries.end(),
              [&](const auto& a, const auto& b) {
                if (a.second != b.second) return a.second > b.second;
                return tgt_vocab_.word(a.first) < tgt_vocab_.word(b.first);
              });
    for (const auto& [t, p] : entries) {
      out << src_vocab_.word(s) << '\t' << tgt_vocab_.word(t) << '\t'
          << fmt_double(p) << '\n';
    }
  }
  if (!out) throw Error(ErrorKind::kIo, "write failed: " + path);
}

LexiconTable LexiconTable::load_tsv(const std::string& path) {
  LineReader reader(path);
  std::vector<std::tuple<std::string, std::string, double>> entries;
  while (auto line = reader.next()) {
    if (line->empty()) continue;
    const size_t t1 = line->find('\t');
    const size_t t2 = t1 == std::string::npos ? std::string::npos
                                              : line->find('\t', t1 + 1);
    if (t1 == std::string::npos || t2 == std::string::npos)
      throw Error(ErrorKind::kBadFormat,
                  path + ":" + std::to_string(reader.line_no()) +
                      ": expected 3 tab-separated columns");
    const std::string s = line->substr(0, t1);
    const std::string t = line->substr(t1 + 1, t2 - t1 - 1);
    const std::string p_text = line->substr(t2 + 1);
    char* endp = nullptr;
    const double p = std::strtod(p_text.c_str(), &endp);
    if (endp != p_text.c_str() + p_text.size() || p_text.empty())
      throw Error(ErrorKind::kBadFormat,
                  path + ":" + std::to_string(reader.line_no()) +
                      ": bad probability '" + p_text + "'");
    entries.emplace_back(s, t, p);
  }
  return LexiconBuilder::build(entries, true);
}

}  // namespace tsgen

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

#include "tsgen/ngram_lm.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "tsgen/error.hpp"
#include "tsgen/io_util.hpp"

namespace tsgen {

namespace {
constexpr std::string_view kBosWord = "<s>";
constexpr std::string_view kUnkWord = "<unk>";
constexpr std::string_view kMagic = "tsgen-lm 1";
}  // namespace

std::vector<uint32_t> NGramLM::to_ids(
    const std::vector<std::string>& sentence) const {
  std::vector<uint32_t> ids;
  ids.reserve(sentence.size());
  for (const auto& tok : sentence) {
    auto id = vocab_.find(tok);
    ids.push_back(id ? *id : kUnk);
  }
  return ids;
}

void NGramLM::count_sentence(Direction& dir, const std::vector<uint32_t>& ids) {
  const int n = order_;
  for (size_t j = 0; j < ids.size(); ++j) {
    for (int k = 1; k <= n; ++k) {
      ContextKey ctx;
      ctx.ids.reserve(k - 1);
      for (int back = k - 1; back >= 1; --back) {
        const int64_t idx = static_cast<int64_t>(j) - back;
        ctx.ids.push_back(idx < 0 ? kBos : ids[idx]);
      }
      auto& cell = dir[k - 1][std::move(ctx)];
      ++cell.total;
      ++cell.cont[ids[j]];
    }
  }
}

NGramLM NGramLM::train(const std::vector<std::vector<std::string>>& sentences,
                       int order, double discount) {
  if (order < 1) throw Error(ErrorKind::kConfig, "LM order must be >= 1");
  if (discount <= 0.0 || discount > 1.0)
    throw Error(ErrorKind::kConfig, "LM discount must be in (0, 1]");
  NGramLM lm;
  lm.order_ = order;
  lm.discount_ = discount;
  lm.forward_.resize(order);
  lm.backward_.resize(order);

  bool any_token = false;
  for (const auto& sent : sentences) {
    for (const auto& tok : sent) {
      if (tok == kBosWord || tok == kUnkWord)
        throw Error(ErrorKind::kReservedToken,
                    "training token collides with LM sentinel " + tok);
      lm.vocab_.add(tok);
      any_token = true;
    }
  }
  if (!any_token)
    throw Error(ErrorKind::kEmptyInput, "LM training corpus is empty");

  for (const auto& sent : sentences) {
    if (sent.empty()) continue;
    auto ids = lm.to_ids(sent);
    lm.count_sentence(lm.forward_, ids);
    std::reverse(ids.begin(), ids.end());
    lm.count_sentence(lm.backward_, ids);
  }
  return lm;
}

// Interpolated absolute discounting:
//   p_k(w|h) = max(c(h,w) - D, 0)/c(h) + D*distinct(h)/c(h) * p_{k-1}(w|h')
// terminating in the uniform 1/(V+1) over vocabulary plus unknown. Unseen
// contexts back off with weight 1.
double NGramLM::prob_ids(const Direction& dir,
                         const std::vector<uint32_t>& context,
                         uint32_t word) const {
  double p = 1.0 / (static_cast<double>(vocab_.size()) + 1.0);
  const int max_k = order_;
  for (int k = 1; k <= max_k; ++k) {
    ContextKey ctx;
    if (k > 1) {
      ctx.ids.assign(context.end() - (k - 1), context.end());
    }
    const auto& table = dir[k - 1];
    auto it = table.find(ctx);
    if (it == table.end()) continue;
    const ContextCell& cell = it->second;
    const double total = static_cast<double>(cell.total);
    auto cit = cell.cont.find(word);
    const double count = cit == cell.cont.end()
                             ? 0.0
                             : static_cast<double>(cit->second);
    const double lambda =
        discount_ * static_cast<double>(cell.cont.size()) / total;
    const double base = count > 0.0 ? (count - discount_) / total : 0.0;
    p = base + lambda * p;
  }
  return p;
}

double NGramLM::prob_forward(const std::vector<std::string>& sentence,
                             size_t pos) const {
  std::vector<uint32_t> context(order_ - 1, kBos);
  for (int back = 1; back <= order_ - 1; ++back) {
    const int64_t idx = static_cast<int64_t>(pos) - back;
    if (idx < 0) break;
    auto id = vocab_.find(sentence[idx]);
    context[order_ - 1 - back] = id ? *id : kUnk;
  }
  auto id = vocab_.find(sentence[pos]);
  return prob_ids(forward_, context, id ? *id : kUnk);
}

double NGramLM::prob_backward(const std::vector<std::string>& sentence,
                              size_t pos) const {
  std::vector<uint32_t> context(order_ - 1, kBos);
  for (int ahead = 1; ahead <= order_ - 1; ++ahead) {
    const size_t idx = pos + ahead;
    if (idx >= sentence.size()) break;
    auto id = vocab_.find(sentence[idx]);
    context[order_ - 1 - ahead] = id ? *id : kUnk;
  }
  auto id = vocab_.find(sentence[pos]);
  return prob_ids(backward_, context, id ? *id : kUnk);
}

double NGramLM::cond_prob(const std::vector<std::string>& context,
                          const std::string& token) const {
  std::vector<uint32_t> ctx(order_ - 1, kBos);
  for (int back = 1; back <= order_ - 1; ++back) {
    const int64_t idx = static_cast<int64_t>(context.size()) - back;
    if (idx < 0) break;
    auto id = vocab_.find(context[idx]);
    ctx[order_ - 1 - back] = id ? *id : kUnk;
  }
  auto id = vocab_.find(token);
  return prob_ids(forward_, ctx, id ? *id : kUnk);
}

double NGramLM::perplexity(
    const std::vector<std::vector<std::string>>& sentences) const {
  double log_sum = 0.0;
  int64_t tokens = 0;
  for (const auto& sent : sentences) {
    for (size_t j = 0; j < sent.size(); ++j) {
      log_sum += std::log(prob_forward(sent, j));
      ++tokens;
    }
  }
  if (tokens == 0)
    throw Error(ErrorKind::kEmptyInput, "perplexity over an empty corpus");
  return std::exp(-log_sum / static_cast<double>(tokens));
}

void NGramLM::save(const std::string& path) const {
  auto out = open_output(path);
  out << kMagic << '\n';
  out << "order\t" << order_ << '\n';
  out << "discount\t" << fmt_double(discount_) << '\n';
  out << "vocab\t" << vocab_.size() << '\n';
  for (uint32_t i = 0; i < vocab_.size(); ++i) out << vocab_.word(i) << '\n';

  auto word_name = [&](uint32_t id) -> std::string {
    if (id == kBos) return std::string(kBosWord);
    if (id == kUnk) return std::string(kUnkWord);
    return vocab_.word(id);
  };

  auto dump = [&](const Direction& dir, const char* name) {
    // Deterministic dump: lines sorted per order.
    for (int k = 1; k <= order_; ++k) {
      std::vector<std::string> lines;
      for (const auto& [ctx, cell] : dir[k - 1]) {
        std::string prefix;
        for (uint32_t id : ctx.ids) {
          prefix += word_name(id);
          prefix.push_back(' ');
        }
        for (const auto& [w, c] : cell.cont) {
          lines.push_back(prefix + word_name(w) + '\t' + std::to_string(c));
        }
      }
      std::sort(lines.begin(), lines.end());
      out << name << '\t' << k << '\t' << lines.size() << '\n';
      for (const auto& line : lines) out << line << '\n';
    }
  };
  dump(forward_, "forward");
  dump(backward_, "backward");
  if (!out) throw Error(ErrorKind::kIo, "write failed: " + path);
}

NGramLM NGramLM::load(const std::string& path) {
  try {
    return load_checked(path);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    // stoi/stod on a corrupt numeric field
    throw Error(ErrorKind::kBadFormat, path + ": malformed LM file");
  }
}

NGramLM NGramLM::load_checked(const std::string& path) {
  LineReader reader(path);
  auto expect_line = [&]() -> std::string {
    auto line = reader.next();
    if (!line)
      throw Error(ErrorKind::kBadFormat, path + ": truncated LM file");
    return *line;
  };
  if (expect_line() != kMagic)
    throw Error(ErrorKind::kBadFormat, path + ": not a tsgen LM file");

  auto kv = [&](const std::string& key) -> std::string {
    const std::string line = expect_line();
    const size_t tab = line.find('\t');
    if (tab == std::string::npos || line.substr(0, tab) != key)
      throw Error(ErrorKind::kBadFormat, path + ": expected '" + key + "'");
    return line.substr(tab + 1);
  };

  NGramLM lm;
  lm.order_ = std::stoi(kv("order"));
  lm.discount_ = std::stod(kv("discount"));
  if (lm.order_ < 1 || lm.discount_ <= 0.0 || lm.discount_ > 1.0)
    throw Error(ErrorKind::kBadFormat, path + ": bad order/discount");
  const uint32_t vocab_size = static_cast<uint32_t>(std::stoul(kv("vocab")));
  for (uint32_t i = 0; i < vocab_size; ++i) lm.vocab_.add(expect_line());
  lm.forward_.resize(lm.order_);
  lm.backward_.resize(lm.order_);

  auto word_id = [&](const std::string& w) -> uint32_t {
    if (w == kBosWord) return kBos;
    if (w == kUnkWord) return kUnk;
    auto id = lm.vocab_.find(w);
    if (!id)
      throw Error(ErrorKind::kBadFormat, path + ": unknown vocab word " + w);
    return *id;
  };

  for (const char* name : {"forward", "backward"}) {
    Direction& dir = std::string(name) == "forward" ? lm.forward_ : lm.backward_;
    for (int k = 1; k <= lm.order_; ++k) {
      const std::string header = expect_line();
      const std::string want = std::string(name) + '\t' + std::to_string(k);
      if (header.rfind(want + '\t', 0) != 0)
        throw Error(ErrorKind::kBadFormat,
                    path + ": expected section '" + want + "'");
      const int64_t count = std::stoll(header.substr(want.size() + 1));
      for (int64_t line_idx = 0; line_idx < count; ++line_idx) {
        const std::string line = expect_line();
        const size_t tab = line.find('\t');
        if (tab == std::string::npos)
          throw Error(ErrorKind::kBadFormat, path + ": bad count line");
        const uint64_t c = std::stoull(line.substr(tab + 1));
        std::vector<std::string> words;
        size_t pos = 0;
        const std::string gram = line.substr(0, tab);
        for (;;) {
          const size_t sp = gram.find(' ', pos);
          words.push_back(gram.substr(
              pos, sp == std::string::npos ? std::string::npos : sp - pos));
          if (sp == std::string::npos) break;
          pos = sp + 1;
        }
        if (static_cast<int>(words.size()) != k)
          throw Error(ErrorKind::kBadFormat, path + ": bad n-gram arity");
        ContextKey ctx;
        for (int i = 0; i < k - 1; ++i) ctx.ids.push_back(word_id(words[i]));
        auto& cell = dir[k - 1][std::move(ctx)];
        cell.total += c;
        cell.cont[word_id(words.back())] += c;
      }
    }
  }
  return lm;
}

}  // namespace tsgen

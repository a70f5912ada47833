// Copyright (C) 2026 asrkit contributors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <sstream>

#include "asrkit/error.hpp"
#include "asrkit/ngram.hpp"

namespace asrkit {

NGramModel::NGramModel(int order, Vocabulary vocab) : order_(order), vocab_(std::move(vocab)) {
  if (order < 1 || order > kMaxOrder) {
    throw Error(ErrorCode::kInvalidArgument,
                "order must be in [1, " + std::to_string(kMaxOrder) + "]");
  }
  tables_.resize(static_cast<std::size_t>(order));
}

const NGramModel::Entry* NGramModel::find(std::span<const WordId> gram) const {
  if (gram.empty() || gram.size() > static_cast<std::size_t>(order_)) return nullptr;
  const auto& t = tables_[gram.size() - 1];
  auto it = t.find(NGramKey(gram));
  return it == t.end() ? nullptr : &it->second;
}

double NGramModel::score_word(std::span<const WordId> context, WordId word) const {
  std::array<WordId, kMaxOrder> gram{};
  const std::size_t max_ctx = static_cast<std::size_t>(order_ - 1);
  const std::size_t ctx_len = std::min(context.size(), max_ctx);
  const auto ctx = context.last(ctx_len);
  for (std::size_t i = 0; i < ctx_len; ++i) {
    gram[i] = ctx[i] < vocab_.size() ? ctx[i] : Vocabulary::kUnk;
  }
  const WordId w = word < vocab_.size() ? word : Vocabulary::kUnk;

  double backoff = 0.0;
  for (std::size_t len = ctx_len;; --len) {
    // gram[ctx_len - len .. ctx_len) is the current context.
    const std::size_t begin = ctx_len - len;
    std::array<WordId, kMaxOrder> probe{};
    std::copy(gram.begin() + static_cast<std::ptrdiff_t>(begin),
              gram.begin() + static_cast<std::ptrdiff_t>(ctx_len), probe.begin());
    probe[len] = w;
    if (const Entry* e = find(std::span<const WordId>(probe.data(), len + 1))) {
      return backoff + e->log10_prob;
    }
    if (len == 0) break;
    if (const Entry* c = find(std::span<const WordId>(probe.data(), len))) {
      backoff += c->log10_backoff;
    }
  }
  // Only reachable when the unigram table lacks the word entirely.
  const WordId unk = Vocabulary::kUnk;
  const Entry* e = find(std::span<const WordId>(&unk, 1));
  return backoff + (e ? e->log10_prob : kLog10Zero);
}

double NGramModel::score_word(std::span<const std::string> context, std::string_view word) const {
  std::vector<WordId> ids;
  ids.reserve(context.size());
  for (const auto& c : context) ids.push_back(vocab_.find(c));
  return score_word(ids, vocab_.find(word));
}

double NGramModel::score_sentence(std::span<const std::string> words) const {
  std::vector<WordId> history(static_cast<std::size_t>(order_ - 1), Vocabulary::kBos);
  double total = 0.0;
  for (const auto& w : words) {
    const WordId id = vocab_.find(w);
    total += score_word(history, id);
    history.push_back(id);
  }
  total += score_word(history, Vocabulary::kEos);
  return total;
}

double NGramModel::perplexity(std::span<const std::vector<std::string>> sentences) const {
  if (sentences.empty()) throw Error(ErrorCode::kInvalidArgument, "empty evaluation set");
  double total = 0.0;
  std::size_t tokens = 0;
  for (const auto& s : sentences) {
    total += score_sentence(s);
    tokens += s.size() + 1;
  }
  return std::pow(10.0, -total / static_cast<double>(tokens));
}

namespace {

using AdjustedTable = std::unordered_map<NGramKey, std::uint64_t, NGramKeyHash>;

struct ContextStats {
  std::uint64_t total = 0;
  std::uint64_t n1 = 0;
  std::uint64_t n2 = 0;
  std::uint64_t n3plus = 0;

  double gamma(const Discounts& d) const {
    return (d.d1 * static_cast<double>(n1) + d.d2 * static_cast<double>(n2) +
            d.d3plus * static_cast<double>(n3plus)) /
           static_cast<double>(total);
  }
};

int length(const NGramKey& k) {
  int n = 0;
  while (n < kMaxOrder && k.ids[static_cast<std::size_t>(n)] != kNoWord) ++n;
  return n;
}

WordId last_word(const NGramKey& k) { return k.ids[static_cast<std::size_t>(length(k) - 1)]; }

NGramKey drop_first(const NGramKey& k) {
  NGramKey out;
  std::copy(k.ids.begin() + 1, k.ids.end(), out.ids.begin());
  return out;
}

NGramKey drop_last(const NGramKey& k) {
  NGramKey out = k;
  out.ids[static_cast<std::size_t>(length(k) - 1)] = kNoWord;
  return out;
}

// Adjusted counts for every predicted n-gram (those not ending in <s>).
std::vector<AdjustedTable> adjust_counts(const NGramCounts& counts, int order) {
  std::vector<AdjustedTable> adjusted(static_cast<std::size_t>(order));
  for (int k = order; k >= 1; --k) {
    auto& out = adjusted[static_cast<std::size_t>(k - 1)];
    const auto& raw = counts.table(k);
    if (k == order) {
      for (const auto& [key, c] : raw) {
        if (last_word(key) != Vocabulary::kBos) out.emplace(key, c);
      }
      continue;
    }
    AdjustedTable continuation;
    for (const auto& [key, c] : counts.table(k + 1)) {
      if (last_word(key) == Vocabulary::kBos) continue;
      const NGramKey suffix = drop_first(key);
      if (suffix.ids[0] != Vocabulary::kBos) ++continuation[suffix];
    }
    for (const auto& [key, c] : raw) {
      if (last_word(key) == Vocabulary::kBos) continue;
      if (key.ids[0] == Vocabulary::kBos) {
        out.emplace(key, c);
      } else {
        auto it = continuation.find(key);
        out.emplace(key, it == continuation.end() ? c : it->second);
      }
    }
  }
  return adjusted;
}

bool valid_discounts(const Discounts& d) {
  return d.d1 > 0.0 && d.d1 < 1.0 && d.d2 > 0.0 && d.d2 < 2.0 && d.d3plus > 0.0 && d.d3plus < 3.0;
}

Discounts estimate_discounts(const AdjustedTable& table, int k, const DiscountConfig& config,
                             NGramModel& model) {
  std::array<double, 5> n{};
  for (const auto& [key, c] : table) {
    if (c >= 1 && c <= 4) n[c] += 1.0;
  }
  std::ostringstream why;
  if (n[1] == 0 || n[2] == 0 || n[3] == 0 || n[4] == 0) {
    why << "count-of-counts N1..N4 = " << n[1] << "," << n[2] << "," << n[3] << "," << n[4];
  } else {
    const double y = n[1] / (n[1] + 2.0 * n[2]);
    Discounts d{1.0 - 2.0 * y * n[2] / n[1], 2.0 - 3.0 * y * n[3] / n[2],
                3.0 - 4.0 * y * n[4] / n[3]};
    if (valid_discounts(d)) return d;
    why << "estimated discounts out of range (" << d.d1 << ", " << d.d2 << ", " << d.d3plus << ")";
  }
  if (config.strict) {
    throw Error(ErrorCode::kInsufficientStatistics,
                "insufficient statistics for order " + std::to_string(k) + ": " + why.str());
  }
  model.add_warning("order " + std::to_string(k) + ": " + why.str() +
                    "; using fallback discounts");
  return config.fallback;
}

double to_log10(double p) {
  if (!(p > 0.0)) return kLog10Zero;
  return std::min(0.0, std::log10(p));
}

}  // namespace

NGramModel estimate(const NGramCounts& counts, int order, const DiscountConfig& config) {
  if (order != counts.order()) {
    throw Error(ErrorCode::kInvalidArgument, "estimate order " + std::to_string(order) +
                                                 " does not match counts of order " +
                                                 std::to_string(counts.order()));
  }
  if (!config.fixed.empty() && config.fixed.size() != 1 &&
      config.fixed.size() != static_cast<std::size_t>(order)) {
    throw Error(ErrorCode::kInvalidArgument, "expected 1 or " + std::to_string(order) +
                                                 " discount triples");
  }
  for (const auto& d : config.fixed) {
    if (d.d1 < 0 || d.d1 > 1 || d.d2 < 0 || d.d2 > 2 || d.d3plus < 0 || d.d3plus > 3) {
      throw Error(ErrorCode::kInvalidArgument, "discount D_j must lie in [0, j]");
    }
  }

  NGramModel model(order, counts.vocab());
  const auto adjusted = adjust_counts(counts, order);

  std::vector<Discounts> discounts;
  for (int k = 1; k <= order; ++k) {
    if (config.fixed.empty()) {
      discounts.push_back(
          estimate_discounts(adjusted[static_cast<std::size_t>(k - 1)], k, config, model));
    } else {
      discounts.push_back(config.fixed.size() == 1 ? config.fixed[0]
                                                   : config.fixed[static_cast<std::size_t>(k - 1)]);
    }
  }

  const std::size_t vocab_size = counts.vocab().size();
  // Everything but <s> can be predicted.
  const double uniform = 1.0 / static_cast<double>(vocab_size - 1);

  // Unigrams: interpolate with the uniform distribution.
  {
    const Discounts& d = discounts[0];
    ContextStats stats;
    for (const auto& [key, c] : adjusted[0]) {
      stats.total += c;
      if (c == 1) ++stats.n1;
      else if (c == 2) ++stats.n2;
      else ++stats.n3plus;
    }
    const double gamma = stats.total > 0 ? stats.gamma(d) : 1.0;
    auto& table = model.mutable_table(1);
    for (WordId w = 0; w < vocab_size; ++w) {
      if (w == Vocabulary::kBos) {
        table[NGramKey(std::span<const WordId>(&w, 1))] = {kLog10Zero, 0.0};
        continue;
      }
      double p = gamma * uniform;
      auto it = adjusted[0].find(NGramKey(std::span<const WordId>(&w, 1)));
      if (it != adjusted[0].end()) {
        p += (static_cast<double>(it->second) - d.for_count(it->second)) /
             static_cast<double>(stats.total);
      }
      table[NGramKey(std::span<const WordId>(&w, 1))] = {to_log10(p), 0.0};
    }
  }

  for (int k = 2; k <= order; ++k) {
    const Discounts& d = discounts[static_cast<std::size_t>(k - 1)];
    const auto& grams = adjusted[static_cast<std::size_t>(k - 1)];

    // All-<s> context of length k-1 (present whenever padding produced it).
    {
      std::vector<WordId> bos(static_cast<std::size_t>(k - 1), Vocabulary::kBos);
      model.mutable_table(k - 1).try_emplace(NGramKey(bos), NGramModel::Entry{kLog10Zero, 0.0});
    }

    std::unordered_map<NGramKey, ContextStats, NGramKeyHash> contexts;
    for (const auto& [key, c] : grams) {
      auto& s = contexts[drop_last(key)];
      s.total += c;
      if (c == 1) ++s.n1;
      else if (c == 2) ++s.n2;
      else ++s.n3plus;
    }

    auto& lower = model.mutable_table(k - 1);
    for (const auto& [ctx, stats] : contexts) {
      auto it = lower.find(ctx);
      if (it == lower.end()) {
        throw Error(ErrorCode::kInternal, "context missing at order " + std::to_string(k - 1));
      }
      const double gamma = stats.gamma(d);
      it->second.log10_backoff = gamma > 0.0 ? std::log10(gamma) : kLog10Zero;
    }

    NGramModel::Table fresh;
    fresh.reserve(grams.size());
    std::array<WordId, kMaxOrder> ids{};
    for (const auto& [key, c] : grams) {
      const ContextStats& stats = contexts.at(drop_last(key));
      // Lower-order estimate of the same word given the shortened context.
      std::copy(key.ids.begin() + 1, key.ids.begin() + k, ids.begin());
      const double lower_log10 = model.score_word(
          std::span<const WordId>(ids.data(), static_cast<std::size_t>(k - 2)),
          ids[static_cast<std::size_t>(k - 2)]);
      const double p = (static_cast<double>(c) - d.for_count(c)) / static_cast<double>(stats.total) +
                       stats.gamma(d) * std::pow(10.0, lower_log10);
      fresh.emplace(key, NGramModel::Entry{to_log10(p), 0.0});
    }
    model.mutable_table(k) = std::move(fresh);
  }

  model.set_discounts(std::move(discounts));
  return model;
}

}  // namespace asrkit

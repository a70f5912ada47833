// Copyright (C) 2026 asrkit contributors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "asrkit/error.hpp"
#include "asrkit/ngram.hpp"

namespace asrkit {

Vocabulary::Vocabulary() {
  insert(kUnkWord);
  insert(kBosWord);
  insert(kEosWord);
}

WordId Vocabulary::insert(std::string_view word) {
  if (auto it = ids_.find(word); it != ids_.end()) return it->second;
  const auto id = static_cast<WordId>(words_.size());
  words_.emplace_back(word);
  ids_.emplace(std::string(word), id);
  return id;
}

WordId Vocabulary::find(std::string_view word) const {
  auto it = ids_.find(word);
  return it == ids_.end() ? kUnk : it->second;
}

bool Vocabulary::contains(std::string_view word) const { return ids_.find(word) != ids_.end(); }

NGramKey::NGramKey(std::span<const WordId> gram) {
  if (gram.size() > ids.size()) {
    throw Error(ErrorCode::kInvalidArgument, "n-gram longer than the maximum order");
  }
  ids.fill(kNoWord);
  std::copy(gram.begin(), gram.end(), ids.begin());
}

NGramCounts count_ngrams(std::span<const std::vector<std::string>> sentences, int order) {
  if (order < 1 || order > kMaxOrder) {
    throw Error(ErrorCode::kInvalidArgument,
                "order must be in [1, " + std::to_string(kMaxOrder) + "]");
  }
  if (sentences.empty()) throw Error(ErrorCode::kInvalidArgument, "no sentences to count");

  NGramCounts counts;
  counts.order_ = order;
  counts.tables_.resize(static_cast<std::size_t>(order));

  std::vector<WordId> padded;
  for (const auto& sentence : sentences) {
    padded.assign(static_cast<std::size_t>(order - 1), Vocabulary::kBos);
    for (const auto& w : sentence) {
      if (w == kBosWord || w == kEosWord) {
        throw Error(ErrorCode::kInvalidArgument, "sentence markers may not appear in text");
      }
      padded.push_back(counts.vocab_.insert(w));
    }
    padded.push_back(Vocabulary::kEos);

    const std::span<const WordId> seq(padded);
    for (int k = 1; k <= order; ++k) {
      auto& table = counts.tables_[static_cast<std::size_t>(k - 1)];
      for (std::size_t i = 0; i + static_cast<std::size_t>(k) <= seq.size(); ++i) {
        ++table[NGramKey(seq.subspan(i, static_cast<std::size_t>(k)))];
      }
    }
  }
  return counts;
}

std::uint64_t NGramCounts::count(std::span<const std::string> words) const {
  if (words.empty() || words.size() > static_cast<std::size_t>(order_)) return 0;
  std::vector<WordId> ids;
  for (const auto& w : words) {
    if (!vocab_.contains(w)) return 0;
    ids.push_back(vocab_.find(w));
  }
  const auto& t = table(static_cast<int>(words.size()));
  auto it = t.find(NGramKey(ids));
  return it == t.end() ? 0 : it->second;
}

}  // namespace asrkit

// Copyright (C) 2026 asrkit contributors
// SPDX-License-Identifier: Apache-2.0

#include "asrkit/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>
#include <unordered_set>

#include "asrkit/error.hpp"
#include "asrkit/rng.hpp"
#include "asrkit/textnorm.hpp"

namespace asrkit {
namespace {

// Fractions such as 0.06 * 1000 land a hair above or below the integer in
// binary floating point; the slack keeps the rounding decimal-faithful.
constexpr double kRoundingSlack = 1e-9;

std::size_t round_half_up(double x) {
  return static_cast<std::size_t>(std::floor(x + 0.5 + kRoundingSlack));
}

std::size_t ceil_count(double x) {
  return static_cast<std::size_t>(std::ceil(x - kRoundingSlack));
}

void check_fraction(double f, const char* name) {
  if (!(f > 0.0 && f < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, std::string(name) + " must be in (0, 1)");
  }
}

}  // namespace

std::vector<Utterance> parse_manifest(std::string_view tsv) {
  std::vector<Utterance> out;
  std::unordered_map<std::string, std::size_t> seen;
  std::size_t start = 0;
  std::size_t line = 0;
  while (start < tsv.size()) {
    std::size_t end = tsv.find('\n', start);
    if (end == std::string_view::npos) end = tsv.size();
    ++line;
    std::string_view row = tsv.substr(start, end - start);
    start = end + 1;
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    if (row.empty()) continue;

    const std::size_t t1 = row.find('\t');
    const std::size_t t2 = t1 == std::string_view::npos ? t1 : row.find('\t', t1 + 1);
    if (t2 == std::string_view::npos || row.find('\t', t2 + 1) != std::string_view::npos) {
      const auto columns = std::count(row.begin(), row.end(), '\t') + 1;
      throw ParseError(line, "expected 3 tab-separated columns, found " + std::to_string(columns));
    }
    Utterance u;
    u.utterance_id = std::string(row.substr(0, t1));
    u.speaker_id = std::string(row.substr(t1 + 1, t2 - t1 - 1));
    u.text = std::string(row.substr(t2 + 1));
    if (u.utterance_id.empty()) throw ParseError(line, "empty utterance id");
    const auto [it, inserted] = seen.emplace(u.utterance_id, line);
    if (!inserted) {
      throw ParseError(line, "duplicate utterance id '" + u.utterance_id + "' (first on line " +
                                 std::to_string(it->second) + ")");
    }
    out.push_back(std::move(u));
  }
  return out;
}

std::string format_manifest(std::span<const Utterance> utterances, bool normalized) {
  std::string out;
  for (const auto& u : utterances) {
    out += u.utterance_id;
    out += '\t';
    out += u.speaker_id;
    out += '\t';
    out += normalized ? u.normalized_text : u.text;
    out += '\n';
  }
  return out;
}

void normalize_utterances(std::span<Utterance> utterances) {
  for (auto& u : utterances) u.normalized_text = normalize_text(u.text);
}

std::vector<Utterance> merge_manifests(std::span<const std::vector<Utterance>> manifests) {
  std::vector<Utterance> out;
  std::unordered_set<std::string> ids;
  for (std::size_t m = 0; m < manifests.size(); ++m) {
    for (const auto& u : manifests[m]) {
      if (!ids.insert(u.utterance_id).second) {
        throw Error(ErrorCode::kInvalidArgument, "duplicate utterance id '" + u.utterance_id +
                                                     "' in manifest " + std::to_string(m + 1));
      }
      out.push_back(u);
    }
  }
  return out;
}

SplitSizes split_sizes(std::size_t n, const SplitSpec& spec) {
  check_fraction(spec.test_fraction, "test fraction");
  check_fraction(spec.val_fraction_of_train, "val fraction");
  SplitSizes s;
  s.test = std::min(n, round_half_up(static_cast<double>(n) * spec.test_fraction));
  const std::size_t pool = n - s.test;
  s.val = std::min(pool, round_half_up(static_cast<double>(pool) * spec.val_fraction_of_train));
  s.train = pool - s.val;
  return s;
}

DatasetSplit split_dataset(std::span<const Utterance> utterances, const SplitSpec& spec) {
  if (utterances.empty()) throw Error(ErrorCode::kInvalidArgument, "degenerate split: no utterances");
  const SplitSizes target = split_sizes(utterances.size(), spec);
  SeededRng rng(spec.seed);

  // 0 = train, 1 = val, 2 = test, indexed like the input.
  std::vector<int> bucket(utterances.size(), 0);

  if (!spec.by_speaker) {
    std::vector<std::size_t> order(utterances.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    for (std::size_t i = 0; i < target.test; ++i) bucket[order[i]] = 2;
    for (std::size_t i = target.test; i < target.test + target.val; ++i) bucket[order[i]] = 1;
  } else {
    // Utterances without a speaker id form singleton groups.
    std::vector<std::vector<std::size_t>> groups;
    std::map<std::string, std::size_t> group_of;
    for (std::size_t i = 0; i < utterances.size(); ++i) {
      const auto& spk = utterances[i].speaker_id;
      if (spk.empty()) {
        groups.push_back({i});
        continue;
      }
      auto [it, inserted] = group_of.emplace(spk, groups.size());
      if (inserted) groups.emplace_back();
      groups[it->second].push_back(i);
    }
    rng.shuffle(groups);
    std::size_t g = 0;
    std::size_t n_test = 0;
    for (; g < groups.size() && n_test < target.test; ++g) {
      for (std::size_t i : groups[g]) bucket[i] = 2;
      n_test += groups[g].size();
    }
    const std::size_t pool = utterances.size() - n_test;
    const std::size_t val_target =
        round_half_up(static_cast<double>(pool) * spec.val_fraction_of_train);
    std::size_t n_val = 0;
    for (; g < groups.size() && n_val < val_target; ++g) {
      for (std::size_t i : groups[g]) bucket[i] = 1;
      n_val += groups[g].size();
    }
  }

  DatasetSplit split;
  for (std::size_t i = 0; i < utterances.size(); ++i) {
    auto& dst = bucket[i] == 2 ? split.test : bucket[i] == 1 ? split.val : split.train;
    dst.push_back(utterances[i]);
  }
  if (split.train.empty() || split.val.empty() || split.test.empty()) {
    throw Error(ErrorCode::kInvalidArgument,
                "degenerate split: sizes " + std::to_string(split.train.size()) + "/" +
                    std::to_string(split.val.size()) + "/" + std::to_string(split.test.size()));
  }
  return split;
}

std::vector<std::string> build_lm_corpus(std::span<const CorpusSource> sources,
                                         std::uint64_t seed) {
  SeededRng rng(seed);
  std::vector<std::string> out;
  for (const auto& src : sources) {
    if (!(src.fraction > 0.0 && src.fraction <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, "corpus fraction must be in (0, 1]");
    }
    const std::size_t n = src.sentences.size();
    const std::size_t k = std::min(n, ceil_count(src.fraction * static_cast<double>(n)));
    // Partial Fisher-Yates: the first k slots hold the sample in draw order.
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(rng.below(n - i));
      std::swap(idx[i], idx[j]);
      out.push_back(src.sentences[idx[i]]);
    }
  }
  return out;
}

}  // namespace asrkit

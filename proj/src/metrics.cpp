// Copyright (C) 2026 asrkit contributors
// SPDX-License-Identifier: Apache-2.0

#include "asrkit/metrics.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "asrkit/error.hpp"
#include "asrkit/textnorm.hpp"

namespace asrkit {

double WerBreakdown::wer_percent() const {
  if (reference_words == 0) {
    return errors() == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return 100.0 * static_cast<double>(errors()) / static_cast<double>(reference_words);
}

WerBreakdown align_tokens(std::span<const std::string> ref, std::span<const std::string> hyp) {
  const std::size_t n = ref.size();
  const std::size_t m = hyp.size();
  // (cost, -matches): lexicographically smaller is better.
  using Score = std::pair<std::size_t, std::ptrdiff_t>;
  std::vector<Score> dp((n + 1) * (m + 1));
  auto at = [&](std::size_t i, std::size_t j) -> Score& { return dp[i * (m + 1) + j]; };

  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = {i, 0};
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = {j, 0};
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const bool same = ref[i - 1] == hyp[j - 1];
      const Score& d = at(i - 1, j - 1);
      Score best{d.first + (same ? 0 : 1), d.second - (same ? 1 : 0)};
      best = std::min(best, Score{at(i - 1, j).first + 1, at(i - 1, j).second});
      best = std::min(best, Score{at(i, j - 1).first + 1, at(i, j - 1).second});
      at(i, j) = best;
    }
  }

  WerBreakdown out;
  out.reference_words = n;
  std::size_t i = n;
  std::size_t j = m;
  while (i > 0 || j > 0) {
    const Score here = at(i, j);
    if (i > 0 && j > 0) {
      const bool same = ref[i - 1] == hyp[j - 1];
      const Score& d = at(i - 1, j - 1);
      if (Score{d.first + (same ? 0 : 1), d.second - (same ? 1 : 0)} == here) {
        if (!same) ++out.substitutions;
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && Score{at(i - 1, j).first + 1, at(i - 1, j).second} == here) {
      ++out.deletions;
      --i;
      continue;
    }
    ++out.insertions;
    --j;
  }
  return out;
}

WerBreakdown wer(std::string_view reference, std::string_view hypothesis) {
  const auto ref = split_words(reference);
  if (ref.empty()) throw Error(ErrorCode::kInvalidArgument, "undefined WER: empty reference");
  const auto hyp = split_words(hypothesis);
  return align_tokens(ref, hyp);
}

WerBreakdown cer(std::string_view reference, std::string_view hypothesis) {
  if (reference.empty()) throw Error(ErrorCode::kInvalidArgument, "undefined CER: empty reference");
  std::vector<std::string> ref, hyp;
  for (char c : reference) ref.emplace_back(1, c);
  for (char c : hypothesis) hyp.emplace_back(1, c);
  return align_tokens(ref, hyp);
}

double round_half_up_2(double value) { return std::floor(value * 100.0 + 0.5 + 1e-9) / 100.0; }

bool third_decimal_is_five(double value) {
  const auto thousandths = static_cast<long long>(std::floor(std::abs(value) * 1000.0 + 1e-6));
  return thousandths % 10 == 5;
}

double aggregate(std::span<const double> wer_percents) {
  if (wer_percents.empty()) throw Error(ErrorCode::kInvalidArgument, "cannot average an empty row");
  const double sum = std::accumulate(wer_percents.begin(), wer_percents.end(), 0.0);
  return round_half_up_2(sum / static_cast<double>(wer_percents.size()));
}

}  // namespace asrkit

// Copyright (C) 2026 asrkit contributors
// SPDX-License-Identifier: Apache-2.0
//
// Brute-force edit distance: walks every alignment path (match or
// substitute, delete, insert) and keeps the cheapest. Branch-and-bound only
// cuts paths that already cost at least the best complete one, so the result
// is the true minimum without any dynamic programming table.

#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace asrkit::testing {

class AlignmentOracle {
 public:
  AlignmentOracle(const std::vector<std::string>& ref, const std::vector<std::string>& hyp) : ref_(ref), hyp_(hyp) {}

  std::size_t min_errors() {
    best_ = std::max(ref_.size(), hyp_.size());  // substitute the overlap, pad the rest
    walk(0, 0, 0);
    return best_;
  }

 private:
  void walk(std::size_t i, std::size_t j, std::size_t cost) {
    if (cost >= best_) return;
    if (i == ref_.size() && j == hyp_.size()) {
      best_ = cost;
      return;
    }
    if (i < ref_.size() && j < hyp_.size()) walk(i + 1, j + 1, cost + (ref_[i] == hyp_[j] ? 0 : 1));
    if (i < ref_.size()) walk(i + 1, j, cost + 1);
    if (j < hyp_.size()) walk(i, j + 1, cost + 1);
  }

  const std::vector<std::string>& ref_;
  const std::vector<std::string>& hyp_;
  std::size_t best_ = 0;
};

// All sequences of length 0..max_len over `vocab`, shortest first.
inline std::vector<std::vector<std::string>> all_sequences(const std::vector<std::string>& vocab,
                                                           std::size_t max_len) {
  std::vector<std::vector<std::string>> out{{}};
  std::size_t begin = 0;
  for (std::size_t len = 1; len <= max_len; ++len) {
    const std::size_t end = out.size();
    for (std::size_t k = begin; k < end; ++k) {
      for (const auto& w : vocab) {
        auto s = out[k];
        s.push_back(w);
        out.push_back(std::move(s));
      }
    }
    begin = end;
  }
  return out;
}

inline std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (const auto& w : words) {
    if (!out.empty()) out += ' ';
    out += w;
  }
  return out;
}

}  // namespace asrkit::testing

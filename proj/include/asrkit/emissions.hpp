// Copyright (C) 2026 asrkit contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "asrkit/textnorm.hpp"

namespace asrkit {

/// Rows may deviate from log-sum-exp 0 by at most this much.
inline constexpr double kRowNormTolerance = 1e-4;

/// T x V frame-level natural-log posteriors over a CTC alphabet.
class EmissionMatrix {
 public:
  /// Validates shape and row normalization. `symbols` spells the columns;
  /// blank is "<blank>", the delimiter "|".
  EmissionMatrix(std::size_t frames, std::vector<std::string> symbols, std::vector<double> log_probs);

  /// Convenience for tests and tools: takes linear probabilities.
  static EmissionMatrix from_probabilities(std::size_t frames, std::vector<std::string> symbols,
                                           std::span<const double> probs);

  std::size_t frames() const { return frames_; }
  std::size_t vocab_size() const { return symbols_.size(); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  std::span<const double> row(std::size_t t) const {
    return {values_.data() + t * symbols_.size(), symbols_.size()};
  }
  double at(std::size_t t, std::size_t v) const { return values_[t * symbols_.size() + v]; }
  const std::vector<double>& values() const { return values_; }

  /// Throws unless the column symbols equal the alphabet, in order.
  void check_alphabet(const Alphabet& alphabet) const;

 private:
  std::size_t frames_;
  std::vector<std::string> symbols_;
  std::vector<double> values_;
};

/// `CTCEMIT 1` / `T V` / symbol line / T rows of V values. Errors carry
/// the line number; a bad row reports "row r not normalized" (1-based).
EmissionMatrix read_emissions(std::string_view text);
/// Shortest round-trip decimal for every value, so reading back is exact.
std::string write_emissions(const EmissionMatrix& m);

struct SynthParams {
  int frames_per_symbol = 1;
  /// Chance of an extra blank frame before each symbol and at the end.
  double blank_prob = 0.0;
  /// Frame noise in [0, 0.5). A clean frame puts 1 - eps on its target and
  /// spreads eps evenly over the other symbols. With probability eps a frame
  /// is confused instead: a random competitor takes 1 - eps, the target
  /// keeps 0.8 eps and the rest share 0.2 eps.
  double noise_epsilon = 0.0;
  std::uint64_t seed = 0;
};

/// Synthetic acoustic-model output for normalized `text`. Repeated symbols
/// are always separated by one blank frame; empty text gives one blank frame.
EmissionMatrix synthesize_emissions(std::string_view text, const Alphabet& alphabet,
                                    const SynthParams& params);

}  // namespace asrkit

// Copyright (C) 2026 asrkit contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "asrkit/emissions.hpp"
#include "asrkit/ngram.hpp"
#include "asrkit/textnorm.hpp"

namespace asrkit {

/// Merge adjacent duplicates, then drop blanks.
std::vector<SymbolId> collapse(std::span<const SymbolId> path, SymbolId blank);

/// Collapsed label rendered as normalized text: delimiters become single
/// spaces, leading/trailing/repeated delimiters are folded away.
std::string label_text(std::span<const SymbolId> label, const Alphabet& alphabet);

/// Best path: per-frame argmax (lowest index on ties), collapse, render.
std::string greedy_decode(const EmissionMatrix& emissions, const Alphabet& alphabet);

struct DecodeParams {
  int beam_width = 50;
  /// LM weight; applied as alpha * ln(10) * log10 P(word | history).
  double alpha = 0.5;
  /// Bonus per scored word.
  double beta = 1.0;
  /// Symbols whose log-probability falls this far below the frame maximum
  /// are not expanded. -infinity disables pruning.
  double prune_log_floor = -9.2;
  /// Optional word-level LM. Not owned; must outlive the decode call.
  const NGramModel* lm = nullptr;
};

struct Hypothesis {
  std::vector<SymbolId> label;
  std::string text;
  /// log CTC mass + accumulated LM terms (natural log).
  double fused_score = 0.0;
  /// log of the total CTC probability of the label.
  double acoustic_log_mass = 0.0;
  double lm_score = 0.0;
};

/// CTC prefix beam search with optional shallow fusion at word boundaries.
/// Returns up to beam_width hypotheses, best first; ties go to the
/// lexicographically smaller label.
std::vector<Hypothesis> beam_search_decode(const EmissionMatrix& emissions, const Alphabet& alphabet,
                                           const DecodeParams& params);

/// Decodes many utterances with `jobs` worker threads sharing one alphabet
/// and model. Result i belongs to emissions[i] regardless of scheduling.
std::vector<std::vector<Hypothesis>> decode_batch(std::span<const EmissionMatrix> emissions,
                                                  const Alphabet& alphabet, const DecodeParams& params,
                                                  int jobs);

inline constexpr double kMaxExhaustivePaths = 1e7;

/// Total probability of every collapsed label, by brute-force enumeration of
/// all V^T frame paths. Throws kInvalidArgument when V^T exceeds 1e7.
std::map<std::vector<SymbolId>, double> exhaustive_label_masses(const EmissionMatrix& emissions,
                                                                const Alphabet& alphabet);

struct ExhaustiveResult {
  std::vector<SymbolId> label;
  std::string text;
  double probability = 0.0;
};

/// Most probable collapsed label; ties go to the lexicographically smallest.
ExhaustiveResult exhaustive_decode(const EmissionMatrix& emissions, const Alphabet& alphabet);

}  // namespace asrkit

// Copyright (C) 2026 asrkit contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace asrkit {

struct WerBreakdown {
  std::size_t substitutions = 0;
  std::size_t deletions = 0;
  std::size_t insertions = 0;
  std::size_t reference_words = 0;

  std::size_t errors() const { return substitutions + deletions + insertions; }
  /// 100 * errors / reference_words; may exceed 100.
  double wer_percent() const;

  WerBreakdown& operator+=(const WerBreakdown& o) {
    substitutions += o.substitutions;
    deletions += o.deletions;
    insertions += o.insertions;
    reference_words += o.reference_words;
    return *this;
  }
  bool operator==(const WerBreakdown&) const = default;
};

/// Unit-cost alignment of two token sequences. Among minimum-cost alignments
/// the one with the most matches wins; remaining ties prefer match, then
/// substitution, deletion, insertion while tracing back.
WerBreakdown align_tokens(std::span<const std::string> reference, std::span<const std::string> hypothesis);

/// Word error rate of normalized strings split on spaces. Throws
/// kInvalidArgument ("undefined WER") for an empty reference.
WerBreakdown wer(std::string_view reference, std::string_view hypothesis);

/// Character error rate over the raw characters (spaces included).
WerBreakdown cer(std::string_view reference, std::string_view hypothesis);

/// Half-up rounding to two decimals. Values are nudged by 1e-9 first so that
/// decimal ties such as 5.775, stored as 5.77499..., still round up.
double round_half_up_2(double value);

/// True when the third decimal digit of `value` is 5: half-up, half-even
/// and truncation can then print different two-decimal values.
bool third_decimal_is_five(double value);

/// Arithmetic mean rounded half-up to two decimals. Throws on empty input.
double aggregate(std::span<const double> wer_percents);

/// LM column of a report row: 0 means no LM, otherwise the n-gram order.
using LmVariant = int;

std::string lm_variant_label(LmVariant lm);  // "-" or "<n>-gram"
/// Accepts "-", "none", "no-lm", "<n>-gram" or a bare order.
std::optional<LmVariant> parse_lm_variant(std::string_view text);

/// Grid of WER cells keyed by (model, lm) x dataset, with per-row averages
/// over the datasets present in that row.
class EvalReport {
 public:
  struct Row {
    std::string model;
    LmVariant lm = 0;
    std::vector<std::optional<double>> cells;  // aligned with datasets()
    double avg = 0.0;
    double raw_avg = 0.0;  // unrounded mean
    bool avg_flagged = false;  // third_decimal_is_five(raw_avg)
  };

  /// Adds or replaces one cell.
  void add(std::string_view model, LmVariant lm, std::string_view dataset, double wer_percent);

  bool empty() const { return cells_.empty(); }
  /// Datasets in order of first appearance.
  const std::vector<std::string>& datasets() const { return datasets_; }
  /// Models in order of first appearance; within a model no-LM first, then
  /// ascending n-gram order.
  std::vector<Row> rows() const;

  /// Aligned plain-text grid. Flagged averages carry a '*' and a footnote.
  std::string render_text() const;
  /// `model,lm,dataset,wer` rows, followed by one `AVG` row per report row.
  std::string render_csv() const;

 private:
  std::vector<std::string> models_;
  std::vector<std::string> datasets_;
  std::map<std::pair<std::size_t, LmVariant>, std::map<std::size_t, double>> cells_;
};

/// Reads `model,lm,dataset,wer` CSV (header optional). AVG rows are
/// skipped since averages are recomputed.
EvalReport parse_report_csv(std::string_view csv);

/// Merges `src` into `dst`, cell by cell.
void merge_report(EvalReport& dst, const EvalReport& src);

}  // namespace asrkit

// Copyright (C) 2026 asrkit contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace asrkit {

struct Utterance {
  std::string utterance_id;
  std::string speaker_id;
  std::string text;
  std::string normalized_text;  // filled by normalize_utterances
  std::string emission_path;

  bool operator==(const Utterance&) const = default;
};

/// Parses `utterance_id<TAB>speaker_id<TAB>text` rows. Blank lines are
/// skipped; a trailing CR is tolerated. Wrong column counts, empty ids and
/// duplicate ids raise ParseError with the line number.
std::vector<Utterance> parse_manifest(std::string_view tsv);

/// Writes the three-column form. When `normalized` is set the text column
/// carries normalized_text instead of the raw transcript.
std::string format_manifest(std::span<const Utterance> utterances, bool normalized = false);

/// Fills normalized_text for every record.
void normalize_utterances(std::span<Utterance> utterances);

/// Concatenates manifests in order, rejecting ids that repeat across inputs.
std::vector<Utterance> merge_manifests(std::span<const std::vector<Utterance>> manifests);

struct SplitSpec {
  double test_fraction = 0.10;
  double val_fraction_of_train = 0.10;
  std::uint64_t seed = 0;
  bool by_speaker = false;
};

struct SplitSizes {
  std::size_t train = 0;
  std::size_t val = 0;
  std::size_t test = 0;
};

/// Partition sizes for n records: test = round_half_up(n * test_fraction),
/// val = round_half_up((n - test) * val_fraction_of_train), train = rest.
SplitSizes split_sizes(std::size_t n, const SplitSpec& spec);

struct DatasetSplit {
  std::vector<Utterance> train;
  std::vector<Utterance> val;
  std::vector<Utterance> test;
};

/// Seeded shuffle, then test / val / train are cut from the front in that
/// order. Each partition keeps the input order of its members. With
/// by_speaker the shuffle is over speakers and whole speakers are assigned
/// until each target size is reached, so sizes are approximate.
DatasetSplit split_dataset(std::span<const Utterance> utterances, const SplitSpec& spec);

struct CorpusSource {
  std::vector<std::string> sentences;
  double fraction = 1.0;
};

/// Per source, a seeded uniform sample without replacement of
/// ceil(fraction * count) sentences, in sampled order; sources concatenated
/// in order.
std::vector<std::string> build_lm_corpus(std::span<const CorpusSource> sources,
                                         std::uint64_t seed);

}  // namespace asrkit

// Copyright (C) 2026 asrkit contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace asrkit {

using SymbolId = std::int32_t;

inline constexpr std::string_view kBlankSymbol = "<blank>";
inline constexpr std::string_view kUnkSymbol = "<unk>";
inline constexpr std::string_view kDelimiterSymbol = "|";

/// Lowercases, keeps only [a-z], folds every whitespace run (ASCII and the
/// common Unicode space separators) into one space and trims both ends.
/// Everything else, including digits, punctuation and non-ASCII letters, is
/// dropped. Invalid UTF-8 bytes are dropped as well.
std::string normalize_text(std::string_view raw);

/// Splits normalized text on single spaces. Empty input gives no words.
std::vector<std::string> split_words(std::string_view normalized);

/// CTC symbol inventory: lowercase letters plus the word delimiter "|",
/// the unknown token and the CTC blank. Immutable once built.
class Alphabet {
 public:
  /// Letters observed in `transcripts` (already normalized), sorted, followed
  /// by "|", "<unk>" and "<blank>" in that order. Throws on an empty letter set.
  static Alphabet build(std::span<const std::string> transcripts);

  /// Accepts any symbol order and only single lowercase letters besides the
  /// specials. By default every special must appear exactly once; with
  /// `require_all_specials` off only <blank> is mandatory, which is enough
  /// to decode (small hand-built inventories in tests use this). Missing
  /// specials report an id of -1.
  static Alphabet from_symbols(std::vector<std::string> symbols, bool require_all_specials = true);

  /// Vocabulary file: one symbol per line, index = line number (0-based).
  static Alphabet parse_vocab(std::string_view text);
  std::string vocab_text() const;

  std::size_t size() const { return symbols_.size(); }
  const std::vector<std::string>& symbols() const { return symbols_; }
  const std::string& symbol(SymbolId id) const;

  SymbolId blank_id() const { return blank_id_; }
  SymbolId unk_id() const { return unk_id_; }
  SymbolId delimiter_id() const { return delimiter_id_; }

  bool is_letter(SymbolId id) const {
    return id >= 0 && id != blank_id_ && id != unk_id_ && id != delimiter_id_;
  }
  /// The character a letter or delimiter id stands for; '\0' for blank/unk.
  char to_char(SymbolId id) const;

  /// Spaces become the delimiter; code points without a symbol become unk
  /// (an error when the inventory has no unk).
  std::vector<SymbolId> encode(std::string_view text) const;

  /// Inverse of encode on letters and delimiters. Blank and unk render as
  /// nothing, so the output stays within the normalized character set.
  /// Throws kOutOfRange on an invalid index.
  std::string decode(std::span<const SymbolId> ids) const;

  bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

 private:
  Alphabet() = default;
  void index_symbols(bool require_all_specials);

  std::vector<std::string> symbols_;
  std::array<SymbolId, 128> by_char_{};
  SymbolId blank_id_ = -1;
  SymbolId unk_id_ = -1;
  SymbolId delimiter_id_ = -1;
};

}  // namespace asrkit

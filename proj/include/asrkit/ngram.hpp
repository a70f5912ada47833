// Copyright (C) 2026 asrkit contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace asrkit {

using WordId = std::uint32_t;

inline constexpr int kMaxOrder = 6;
inline constexpr WordId kNoWord = 0xFFFFFFFFu;

inline constexpr std::string_view kUnkWord = "<unk>";
inline constexpr std::string_view kBosWord = "<s>";
inline constexpr std::string_view kEosWord = "</s>";

/// log10 stand-in for probability zero, as written by ARPA tools.
inline constexpr double kLog10Zero = -99.0;

/// Word <-> id map. Ids 0, 1, 2 are always <unk>, <s>, </s>.
class Vocabulary {
 public:
  static constexpr WordId kUnk = 0;
  static constexpr WordId kBos = 1;
  static constexpr WordId kEos = 2;

  Vocabulary();

  WordId insert(std::string_view word);
  /// Id of `word`, or kUnk when absent.
  WordId find(std::string_view word) const;
  bool contains(std::string_view word) const;
  const std::string& word(WordId id) const { return words_.at(id); }
  std::size_t size() const { return words_.size(); }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
  };
  std::vector<std::string> words_;
  std::unordered_map<std::string, WordId, Hash, std::equal_to<>> ids_;
};

/// Fixed-capacity id sequence used as a table key; unused slots hold kNoWord.
struct NGramKey {
  std::array<WordId, kMaxOrder> ids;

  NGramKey() { ids.fill(kNoWord); }
  explicit NGramKey(std::span<const WordId> gram);

  bool operator==(const NGramKey&) const = default;
};

struct NGramKeyHash {
  std::size_t operator()(const NGramKey& k) const noexcept {
    std::uint64_t h = 0x84222325CBF29CE4ULL;
    for (WordId id : k.ids) {
      h ^= id;
      h *= 0x100000001B3ULL;
      h ^= h >> 29;
    }
    return static_cast<std::size_t>(h);
  }
};

/// Raw n-gram tallies for orders 1..order over padded sentences: each
/// sentence is prefixed with (order - 1) <s> and terminated by one </s>.
class NGramCounts {
 public:
  using Table = std::unordered_map<NGramKey, std::uint64_t, NGramKeyHash>;

  int order() const { return order_; }
  const Vocabulary& vocab() const { return vocab_; }
  /// Table for n-grams of length k (1-based).
  const Table& table(int k) const { return tables_.at(static_cast<std::size_t>(k - 1)); }
  /// Count of the given word sequence; 0 when absent or out of vocabulary.
  std::uint64_t count(std::span<const std::string> words) const;

 private:
  friend NGramCounts count_ngrams(std::span<const std::vector<std::string>>, int);
  int order_ = 0;
  Vocabulary vocab_;
  std::vector<Table> tables_;
};

NGramCounts count_ngrams(std::span<const std::vector<std::string>> sentences, int order);

struct Discounts {
  double d1 = 0.5;
  double d2 = 0.5;
  double d3plus = 0.5;

  double for_count(std::uint64_t c) const { return c == 1 ? d1 : c == 2 ? d2 : d3plus; }
};

struct DiscountConfig {
  /// Empty: estimate from count-of-counts. One entry: used at every order.
  /// Otherwise one entry per order, unigrams first.
  std::vector<Discounts> fixed;
  /// Fail with kInsufficientStatistics instead of falling back to
  /// `fallback` when count-of-counts are degenerate.
  bool strict = false;
  Discounts fallback{0.5, 0.5, 0.5};
};

/// Order-n backoff model in ARPA terms: per order, n-gram -> (log10 prob,
/// log10 backoff). Immutable after construction and safe to query from many
/// threads.
class NGramModel {
 public:
  struct Entry {
    double log10_prob = 0.0;
    double log10_backoff = 0.0;
  };
  using Table = std::unordered_map<NGramKey, Entry, NGramKeyHash>;

  NGramModel(int order, Vocabulary vocab);

  int order() const { return order_; }
  const Vocabulary& vocab() const { return vocab_; }
  const Table& table(int k) const { return tables_.at(static_cast<std::size_t>(k - 1)); }
  std::size_t ngram_count(int k) const { return table(k).size(); }
  const Entry* find(std::span<const WordId> gram) const;

  /// Backoff recursion. `context` is oldest-first and truncated to the most
  /// recent order-1 words; out-of-vocabulary words map to <unk>.
  double score_word(std::span<const std::string> context, std::string_view word) const;
  double score_word(std::span<const WordId> context, WordId word) const;

  /// Sum of score_word over the words and </s>, starting from order-1 <s>.
  double score_sentence(std::span<const std::string> words) const;

  /// 10^(-total / tokens) where tokens counts every word plus one </s> per
  /// sentence. Throws on an empty evaluation set.
  double perplexity(std::span<const std::vector<std::string>> sentences) const;

  /// Discounts used per order (unigrams first); empty for models read from ARPA.
  const std::vector<Discounts>& discounts() const { return discounts_; }
  /// Non-fatal estimation notes such as discount fallbacks.
  const std::vector<std::string>& warnings() const { return warnings_; }

  // Construction interface for the estimator and the ARPA reader.
  Table& mutable_table(int k) { return tables_.at(static_cast<std::size_t>(k - 1)); }
  Vocabulary& mutable_vocab() { return vocab_; }
  void set_discounts(std::vector<Discounts> d) { discounts_ = std::move(d); }
  void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

 private:
  int order_;
  Vocabulary vocab_;
  std::vector<Table> tables_;
  std::vector<Discounts> discounts_;
  std::vector<std::string> warnings_;
};

/// Interpolated modified Kneser-Ney estimation over `counts`.
///
/// The highest order uses raw counts, lower orders use continuation counts
/// (distinct left extensions), except for n-grams that start with <s>, which
/// keep raw counts because they cannot be extended to the left. Unigrams are
/// interpolated with the uniform distribution over every predictable word,
/// so <unk> receives the uniform share. <s> is never predicted; it and the
/// all-<s> contexts are stored with kLog10Zero so that every context is
/// reachable.
NGramModel estimate(const NGramCounts& counts, int order, const DiscountConfig& config = {});

/// Standard ARPA text. Backoff columns are written at every order but the
/// highest. Entries are sorted by word strings so output is deterministic.
std::string write_arpa(const NGramModel& model);

/// Parses ARPA text, tolerating space or tab separators and omitted zero
/// backoffs. Throws ParseError with a line number on a missing section, a
/// count that disagrees with the header, a malformed entry, or an n-gram
/// whose context is not stored at the next lower order.
NGramModel read_arpa(std::string_view text);

}  // namespace asrkit

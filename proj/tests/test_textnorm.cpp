// Copyright (C) 2026 asrkit contributors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "asrkit/error.hpp"
#include "asrkit/rng.hpp"
#include "asrkit/textnorm.hpp"
#include "support/toy_language.hpp"

namespace asrkit {
namespace {

TEST(NormalizeText, LowercasesAndStripsPunctuation) {
  EXPECT_EQ(normalize_text("Saya, Makan!"), "saya makan");
  EXPECT_EQ(normalize_text("Halo   Dunia"), "halo dunia");
  EXPECT_EQ(normalize_text("tahun 2021."), "tahun");
}

TEST(NormalizeText, DropsNonAsciiLettersAndFoldsUnicodeSpaces) {
  EXPECT_EQ(normalize_text("caf\xC3\xA9 au lait"), "caf au lait");
  EXPECT_EQ(normalize_text("a\xC2\xA0" "b\xE2\x80\x83" "c"), "a b c");  // NBSP, EM SPACE
  EXPECT_EQ(normalize_text("\t a \n b \r\n"), "a b");
  EXPECT_EQ(normalize_text("\xFF\xFEok"), "ok");  // invalid UTF-8 bytes vanish
  EXPECT_EQ(normalize_text(""), "");
  EXPECT_EQ(normalize_text(" 123 !!! "), "");
}

TEST(NormalizeText, IsIdempotent) {
  SeededRng rng(11);
  const std::string pool = "aZ 9.,\t\n-Q\xC3\xA9";
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    const auto len = rng.below(40);
    for (std::uint64_t j = 0; j < len; ++j) s += pool[rng.below(pool.size())];
    const std::string once = normalize_text(s);
    EXPECT_EQ(normalize_text(once), once);
  }
}

TEST(Alphabet, BuildSortsLettersAndAppendsSpecials) {
  const std::vector<std::string> t{"ab", "ba c"};
  const Alphabet a = Alphabet::build(t);
  const std::vector<std::string> expected{"a", "b", "c", "|", "<unk>", "<blank>"};
  EXPECT_EQ(a.symbols(), expected);
  EXPECT_EQ(a.delimiter_id(), 3);
  EXPECT_EQ(a.unk_id(), 4);
  EXPECT_EQ(a.blank_id(), 5);

  const std::vector<std::string> single{"aaaa"};
  EXPECT_EQ(Alphabet::build(single).size(), 4u);
}

TEST(Alphabet, EmptyInputIsAnError) {
  const std::vector<std::string> none;
  EXPECT_THROW(Alphabet::build(none), Error);
  const std::vector<std::string> no_letters{" ", ""};
  try {
    Alphabet::build(no_letters);
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "empty alphabet");
  }
}

TEST(Alphabet, ClosureOverNormalizedText) {
  const std::vector<std::string> t{normalize_text("Hello, World 42! \xC3\x89t\xC3\xA9")};
  const Alphabet a = Alphabet::build(t);
  for (SymbolId id = 0; id < static_cast<SymbolId>(a.size()); ++id) {
    if (!a.is_letter(id)) continue;
    const std::string& s = a.symbol(id);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_TRUE(s[0] >= 'a' && s[0] <= 'z') << s;
  }
}

TEST(Alphabet, EncodeDecode) {
  const std::vector<std::string> t{"abc"};
  const Alphabet a = Alphabet::build(t);
  const auto ids = a.encode("a b");
  ASSERT_EQ(ids.size(), 3u);
  EXPECT_EQ(ids[0], 0);
  EXPECT_EQ(ids[1], a.delimiter_id());
  EXPECT_EQ(ids[2], 1);
  EXPECT_EQ(a.decode(a.encode("abc")), "abc");

  const auto with_unknown = a.encode("a\xC3\xA9");
  ASSERT_EQ(with_unknown.size(), 2u);
  EXPECT_EQ(with_unknown[1], a.unk_id());
  EXPECT_EQ(a.encode("az")[1], a.unk_id());
}

TEST(Alphabet, DecodeRejectsInvalidIndex) {
  const std::vector<std::string> t{"ab"};
  const Alphabet a = Alphabet::build(t);
  const std::vector<SymbolId> bad{0, 17};
  EXPECT_THROW(a.decode(bad), Error);
  const std::vector<SymbolId> negative{-1};
  EXPECT_THROW(a.decode(negative), Error);
}

TEST(Alphabet, RoundTripOnRandomStrings) {
  SeededRng rng(3);
  const std::vector<std::string> t{"the quick brown fox jumps over a lazy dog"};
  const Alphabet a = Alphabet::build(t);
  for (int i = 0; i < 500; ++i) {
    const std::string s = testing::random_normalized(rng, 30, "thequickbrownfxjmpsvlazydg");
    EXPECT_EQ(a.decode(a.encode(s)), s);
  }
}

TEST(Alphabet, VocabFileRoundTrip) {
  const std::vector<std::string> t{"halo dunia"};
  const Alphabet a = Alphabet::build(t);
  const std::string text = a.vocab_text();
  EXPECT_EQ(text, "a\nd\nh\ni\nl\nn\no\nu\n|\n<unk>\n<blank>\n");
  EXPECT_EQ(Alphabet::parse_vocab(text), a);
}

TEST(Alphabet, VocabFileErrors) {
  EXPECT_THROW(Alphabet::parse_vocab("a\nb\n|\n<unk>\n"), Error);            // no blank
  EXPECT_THROW(Alphabet::parse_vocab("a\na\n|\n<unk>\n<blank>\n"), Error);   // duplicate
  EXPECT_THROW(Alphabet::parse_vocab("A\n|\n<unk>\n<blank>\n"), Error);      // not normalized
  EXPECT_THROW(Alphabet::parse_vocab("ab\n|\n<unk>\n<blank>\n"), Error);     // multi-letter
}

TEST(Alphabet, LenientInventoryNeedsOnlyBlank) {
  const Alphabet a = Alphabet::from_symbols({"<blank>", "a"}, false);
  EXPECT_EQ(a.blank_id(), 0);
  EXPECT_EQ(a.unk_id(), -1);
  EXPECT_EQ(a.delimiter_id(), -1);
  EXPECT_THROW(Alphabet::from_symbols({"a", "b"}, false), Error);
  EXPECT_THROW(Alphabet::from_symbols({"<blank>", "a"}, true), Error);
}

}  // namespace
}  // namespace asrkit

// Copyright (C) 2026 asrkit contributors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "asrkit/error.hpp"
#include "asrkit/metrics.hpp"
#include "asrkit/rng.hpp"
#include "support/wer_oracle.hpp"

namespace asrkit {
namespace {

std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(ASRKIT_FIXTURES) + "/" + name, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(Wer, SubstitutionAndDeletion) {
  const auto b = wer("a b c d", "a x c");
  EXPECT_EQ(b.substitutions, 1u);
  EXPECT_EQ(b.deletions, 1u);
  EXPECT_EQ(b.insertions, 0u);
  EXPECT_EQ(b.reference_words, 4u);
  EXPECT_DOUBLE_EQ(b.wer_percent(), 50.0);
}

TEST(Wer, InsertionsCanExceedHundredPercent) {
  const auto b = wer("a", "a b c");
  EXPECT_EQ(b.insertions, 2u);
  EXPECT_DOUBLE_EQ(b.wer_percent(), 200.0);
}

TEST(Wer, EdgeCases) {
  EXPECT_EQ(wer("a b", "").deletions, 2u);
  EXPECT_EQ(wer("a b", "a b").errors(), 0u);
  try {
    wer("", "a");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("undefined WER"), std::string::npos);
  }
}

TEST(Wer, PrefersMatchesAmongMinimalAlignments) {
  // "a b" vs "b a": two substitutions or one deletion plus one insertion
  // both cost 2; the latter keeps a match.
  const auto b = wer("a b", "b a");
  EXPECT_EQ(b.errors(), 2u);
  EXPECT_EQ(b.substitutions, 0u);
  EXPECT_EQ(b.deletions, 1u);
  EXPECT_EQ(b.insertions, 1u);
}

TEST(Wer, CharacterErrorRate) {
  const auto b = cer("halo", "hallo");
  EXPECT_EQ(b.insertions, 1u);
  EXPECT_EQ(b.reference_words, 4u);
}

TEST(Wer, MatchesBruteForceOnRandomPairs) {
  SeededRng rng(3);
  const std::vector<std::string> vocab{"a", "b", "c", "d"};
  for (int c = 0; c < 2000; ++c) {
    std::vector<std::string> r(1 + rng.below(8)), h(rng.below(8));
    for (auto& w : r) w = vocab[rng.below(vocab.size())];
    for (auto& w : h) w = vocab[rng.below(vocab.size())];
    const auto b = align_tokens(r, h);
    ASSERT_EQ(b.errors(), testing::AlignmentOracle(r, h).min_errors());
    ASSERT_LE(b.substitutions + b.deletions, r.size());
    ASSERT_EQ(r.size() - b.deletions + b.insertions, h.size());
  }
}

TEST(Wer, DistanceProperties) {
  SeededRng rng(4);
  const std::vector<std::string> vocab{"x", "y", "z"};
  auto draw = [&] {
    std::vector<std::string> s(1 + rng.below(6));
    for (auto& w : s) w = vocab[rng.below(vocab.size())];
    return s;
  };
  for (int c = 0; c < 500; ++c) {
    const auto x = draw(), y = draw(), z = draw();
    const auto dxy = align_tokens(x, y).errors();
    EXPECT_EQ(dxy, align_tokens(y, x).errors());
    EXPECT_LE(align_tokens(x, z).errors(), dxy + align_tokens(y, z).errors());
    EXPECT_EQ(align_tokens(x, x).errors(), 0u);
  }
}

TEST(Rounding, HalfUpOnDecimalTies) {
  EXPECT_DOUBLE_EQ(round_half_up_2(5.775), 5.78);
  EXPECT_DOUBLE_EQ(round_half_up_2(5.4257), 5.43);
  EXPECT_DOUBLE_EQ(round_half_up_2(13.155), 13.16);
  EXPECT_DOUBLE_EQ(round_half_up_2(1.234), 1.23);
  EXPECT_TRUE(third_decimal_is_five(5.775));
  EXPECT_TRUE(third_decimal_is_five(5.4257));
  EXPECT_FALSE(third_decimal_is_five(5.78));
  EXPECT_FALSE(third_decimal_is_five(13.1614));
}

TEST(Aggregate, MeanRoundedHalfUp) {
  const std::vector<double> two{0.77, 10.78};
  EXPECT_DOUBLE_EQ(aggregate(two), 5.78);
  const std::vector<double> one{3.0};
  EXPECT_DOUBLE_EQ(aggregate(one), 3.0);
  EXPECT_THROW(aggregate(std::vector<double>{}), Error);
}

TEST(LmVariant, ParseAndLabel) {
  EXPECT_EQ(parse_lm_variant("none"), 0);
  EXPECT_EQ(parse_lm_variant("-"), 0);
  EXPECT_EQ(parse_lm_variant("5-gram"), 5);
  EXPECT_EQ(parse_lm_variant("3"), 3);
  EXPECT_FALSE(parse_lm_variant("x-gram"));
  EXPECT_EQ(lm_variant_label(0), "-");
  EXPECT_EQ(lm_variant_label(4), "4-gram");
}

TEST(Report, RowOrderAndMissingCells) {
  EvalReport r;
  r.add("m2", 3, "d1", 4.0);
  r.add("m1", 0, "d2", 10.0);
  r.add("m2", 0, "d1", 8.0);
  r.add("m2", 0, "d2", 6.0);
  const auto rows = r.rows();
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].model, "m2");
  EXPECT_EQ(rows[0].lm, 0);
  EXPECT_DOUBLE_EQ(rows[0].avg, 7.0);
  EXPECT_EQ(rows[1].lm, 3);
  EXPECT_FALSE(rows[1].cells[1].has_value());
  EXPECT_DOUBLE_EQ(rows[1].avg, 4.0);
  EXPECT_EQ(rows[2].model, "m1");
  EXPECT_FALSE(rows[2].cells[0].has_value());

  const std::string text = r.render_text();
  EXPECT_EQ(text.rfind("Model", 0), 0u);
  EXPECT_NE(text.find("3-gram"), std::string::npos);
  EXPECT_EQ(text.find('*'), std::string::npos);
}

TEST(Report, CsvRoundTrip) {
  EvalReport r;
  r.add("m", 0, "d1", 12.5);
  r.add("m", 2, "d1", 6.25);
  r.add("m", 2, "d2", 3.0);
  const std::string csv = r.render_csv();
  EXPECT_NE(csv.find("m,2-gram,AVG,4.63\n"), std::string::npos) << csv;  // 4.625 rounds up
  const auto back = parse_report_csv(csv);
  EXPECT_EQ(back.render_csv(), csv);
  EXPECT_THROW(parse_report_csv("m,none,d\n"), ParseError);
  EXPECT_THROW(parse_report_csv("m,zero,d,1\n"), ParseError);
  EXPECT_THROW(parse_report_csv("m,none,d,-1\n"), ParseError);
}

TEST(Report, MergeReplacesCells) {
  EvalReport a, b;
  a.add("m", 0, "d", 1.0);
  b.add("m", 0, "d", 2.0);
  b.add("m", 0, "e", 4.0);
  merge_report(a, b);
  const auto rows = a.rows();
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_DOUBLE_EQ(rows[0].avg, 3.0);
}

TEST(Report, PublishedGridAverages) {
  const auto report = parse_report_csv(read_fixture("published_grid.csv"));
  const auto rows = report.rows();
  ASSERT_EQ(rows.size(), 11u);
  const std::vector<double> large{13.16, 6.10, 5.56, 5.45, 5.43, 5.44};
  for (std::size_t i = 0; i < large.size(); ++i) {
    EXPECT_EQ(rows[i].model, "xls-r-300m");
    EXPECT_EQ(rows[i].lm, i == 0 ? 0 : static_cast<int>(i) + 1);
    EXPECT_NEAR(rows[i].avg, large[i], 1e-9);
  }
  EXPECT_NEAR(rows[6].avg, 9.46, 1e-9);
  // (0.77 + 10.78) / 2 = 5.775: shown as 5.78 and flagged.
  EXPECT_EQ(rows[7].lm, 2);
  EXPECT_NEAR(rows[7].raw_avg, 5.775, 1e-12);
  EXPECT_NEAR(rows[7].avg, 5.78, 1e-9);
  EXPECT_TRUE(rows[7].avg_flagged);
  EXPECT_FALSE(rows[0].avg_flagged);
  const std::string text = report.render_text();
  EXPECT_NE(text.find("5.78*"), std::string::npos);
  EXPECT_NE(text.find("unrounded mean"), std::string::npos);
}

}  // namespace
}  // namespace asrkit

// Copyright (C) 2026 asrkit contributors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "asrkit/ctcdecode.hpp"
#include "asrkit/emissions.hpp"
#include "asrkit/error.hpp"
#include "asrkit/rng.hpp"
#include "support/toy_language.hpp"

namespace asrkit {
namespace {

Alphabet alphabet_of(const std::string& letters) {
  const std::vector<std::string> t{letters};
  return Alphabet::build(t);
}

TEST(Emissions, TextRoundTrip) {
  const std::vector<double> p{0.6, 0.4};
  const auto m = EmissionMatrix::from_probabilities(1, {"<blank>", "a"}, p);
  const std::string text = write_emissions(m);
  EXPECT_EQ(text.rfind("CTCEMIT 1\n1 2\n<blank> a\n", 0), 0u);
  const auto back = read_emissions(text);
  EXPECT_EQ(back.values(), m.values());
  EXPECT_EQ(back.symbols(), m.symbols());
  EXPECT_DOUBLE_EQ(std::exp(back.at(0, 0)), 0.6);
}

TEST(Emissions, RowMustBeNormalized) {
  try {
    read_emissions("CTCEMIT 1\n2 2\n<blank> a\n" + std::to_string(std::log(0.5)) + " " +
                   std::to_string(std::log(0.5)) + "\n" + std::to_string(std::log(0.5)) + " " +
                   std::to_string(std::log(0.3)) + "\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("row 2 not normalized"), std::string::npos) << e.what();
    EXPECT_EQ(e.line(), 5u);
  }
  try {
    read_emissions("CTCEMIT 1\n1 2\n<blank> a\n" + std::to_string(std::log(0.5)) + " " +
                   std::to_string(std::log(0.3)) + "\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("row 1 not normalized"), std::string::npos) << e.what();
  }
}

TEST(Emissions, ShapeAndSymbolErrors) {
  const std::string row = "-0.69314718055994529 -0.69314718055994529\n";
  EXPECT_THROW(read_emissions("CTCEMIT 1\n3 2\n<blank> a\n" + row + row), ParseError);  // 2 of 3 rows
  EXPECT_THROW(read_emissions("CTCEMIT 2\n1 2\n<blank> a\n" + row), ParseError);
  EXPECT_THROW(read_emissions("CTCEMIT 1\n1 2\n<blank> a b\n" + row), ParseError);
  EXPECT_THROW(read_emissions("CTCEMIT 1\n1 2\n<blank> A\n" + row), ParseError);
  EXPECT_THROW(read_emissions("CTCEMIT 1\n1 2\n<blank> a\n-0.69314718055994529\n"), ParseError);
  EXPECT_THROW(read_emissions("CTCEMIT 1\n0 2\n<blank> a\n"), ParseError);
  EXPECT_THROW(read_emissions("CTCEMIT 1\n1 2\na b\n" + row), ParseError);  // no blank
  EXPECT_THROW(read_emissions("CTCEMIT 1\n1 2\n<blank> a\nnan 0\n"), ParseError);
}

TEST(Emissions, AlphabetCheck) {
  const Alphabet a = alphabet_of("ab");
  const auto m = synthesize_emissions("ab", a, SynthParams{});
  EXPECT_NO_THROW(m.check_alphabet(a));
  EXPECT_THROW(m.check_alphabet(alphabet_of("abc")), Error);
}

TEST(Synthesize, RepeatsAreSeparatedByBlank) {
  const Alphabet a = alphabet_of("a");
  const auto m = synthesize_emissions("aa", a, SynthParams{});
  ASSERT_EQ(m.frames(), 3u);
  const std::size_t ia = 0, blank = static_cast<std::size_t>(a.blank_id());
  EXPECT_DOUBLE_EQ(m.at(0, ia), 0.0);
  EXPECT_DOUBLE_EQ(m.at(1, blank), 0.0);
  EXPECT_DOUBLE_EQ(m.at(2, ia), 0.0);
  EXPECT_EQ(greedy_decode(m, a), "aa");
}

TEST(Synthesize, EmptyTextIsOneBlankFrame) {
  const Alphabet a = alphabet_of("a");
  const auto m = synthesize_emissions("", a, SynthParams{});
  ASSERT_EQ(m.frames(), 1u);
  EXPECT_EQ(greedy_decode(m, a), "");
}

TEST(Synthesize, DeterministicPerSeedAndNormalized) {
  const Alphabet a = alphabet_of("halo dunia");
  SynthParams p{2, 0.3, 0.2, 77};
  const auto x = synthesize_emissions("halo dunia", a, p);
  EXPECT_EQ(write_emissions(x), write_emissions(synthesize_emissions("halo dunia", a, p)));
  p.seed = 78;
  EXPECT_NE(write_emissions(x), write_emissions(synthesize_emissions("halo dunia", a, p)));
  for (std::size_t t = 0; t < x.frames(); ++t) {
    double sum = 0.0;
    for (double v : x.row(t)) sum += std::exp(v);
    EXPECT_NEAR(sum, 1.0, 1e-12);
  }
}

TEST(Synthesize, CleanFramePeakMass) {
  const Alphabet a = alphabet_of("ab");
  // Find a seed whose first frame is not a confusion frame.
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto m = synthesize_emissions("a", a, SynthParams{1, 0.0, 0.1, seed});
    if (std::exp(m.at(0, 0)) > 0.5) {
      EXPECT_NEAR(std::exp(m.at(0, 0)), 0.9, 1e-12);
      EXPECT_NEAR(std::exp(m.at(0, 1)), 0.1 / 4.0, 1e-12);
      return;
    }
  }
  FAIL() << "every frame confused";
}

TEST(Synthesize, Errors) {
  const Alphabet a = alphabet_of("ab");
  EXPECT_THROW(synthesize_emissions("abc", a, SynthParams{}), Error);
  EXPECT_THROW(synthesize_emissions("ab", a, SynthParams{0, 0.0, 0.0, 0}), Error);
  EXPECT_THROW(synthesize_emissions("ab", a, SynthParams{1, 0.0, 0.5, 0}), Error);
  EXPECT_THROW(synthesize_emissions("ab", a, SynthParams{1, 1.5, 0.0, 0}), Error);
}

TEST(Synthesize, RecoverableWithoutNoise) {
  SeededRng rng(8);
  const std::string letters = "abcdefghijklmnopqrstuvwxyz";
  const Alphabet a = alphabet_of(letters);
  for (int i = 0; i < 500; ++i) {
    const std::string s = testing::random_normalized(rng, 40, letters);
    const SynthParams p{1 + static_cast<int>(rng.below(3)), rng.uniform() * 0.5, 0.0, rng.next()};
    ASSERT_EQ(greedy_decode(synthesize_emissions(s, a, p), a), s);
  }
}

}  // namespace
}  // namespace asrkit

// Copyright (C) 2026 asrkit contributors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "asrkit/asrkit.h"

namespace {

struct Free {
  void operator()(char* s) const { asrkit_string_free(s); }
  void operator()(asrkit_strings* p) const { asrkit_strings_destroy(p); }
  void operator()(asrkit_alphabet* p) const { asrkit_alphabet_destroy(p); }
  void operator()(asrkit_manifest* p) const { asrkit_manifest_destroy(p); }
  void operator()(asrkit_lm* p) const { asrkit_lm_destroy(p); }
  void operator()(asrkit_emissions* p) const { asrkit_emissions_destroy(p); }
  void operator()(asrkit_nbest* p) const { asrkit_nbest_destroy(p); }
  void operator()(asrkit_report* p) const { asrkit_report_destroy(p); }
};
template <typename T>
using Owned = std::unique_ptr<T, Free>;

std::string take(char* s) {
  Owned<char> owner(s);
  return s ? std::string(s) : std::string();
}

Owned<asrkit_strings> lines(const char* text) {
  asrkit_strings* out = nullptr;
  EXPECT_EQ(asrkit_strings_from_lines(text, std::strlen(text), &out), ASRKIT_OK);
  return Owned<asrkit_strings>(out);
}

TEST(CApi, NormalizeAndAlphabet) {
  char* norm = nullptr;
  const char raw[] = "Halo, Dunia!";
  ASSERT_EQ(asrkit_normalize_text(raw, std::strlen(raw), &norm), ASRKIT_OK);
  EXPECT_EQ(take(norm), "halo dunia");

  auto texts = lines("halo dunia\n");
  asrkit_alphabet* a = nullptr;
  ASSERT_EQ(asrkit_alphabet_build(texts.get(), &a), ASRKIT_OK);
  Owned<asrkit_alphabet> alphabet(a);
  EXPECT_GE(asrkit_alphabet_size(a), 10u);

  size_t count = 0;
  int32_t ids[16];
  ASSERT_EQ(asrkit_alphabet_encode(a, "halo", 4, ids, 16, &count), ASRKIT_OK);
  ASSERT_EQ(count, 4u);
  char* back = nullptr;
  ASSERT_EQ(asrkit_alphabet_decode(a, ids, count, &back), ASRKIT_OK);
  EXPECT_EQ(take(back), "halo");

  char* vocab = nullptr;
  ASSERT_EQ(asrkit_alphabet_vocab_text(a, &vocab), ASRKIT_OK);
  const std::string vtext = take(vocab);
  asrkit_alphabet* again = nullptr;
  ASSERT_EQ(asrkit_alphabet_parse_vocab(vtext.data(), vtext.size(), &again), ASRKIT_OK);
  Owned<asrkit_alphabet> again_owner(again);
  EXPECT_EQ(asrkit_alphabet_size(again), asrkit_alphabet_size(a));

  // Letters outside the inventory map to unk; a short buffer still reports the length.
  ASSERT_EQ(asrkit_alphabet_encode(a, "halo xyz", 8, ids, 2, &count), ASRKIT_OK);
  EXPECT_EQ(count, 8u);
  ASSERT_EQ(asrkit_alphabet_encode(a, "xyz", 3, ids, 16, &count), ASRKIT_OK);
  EXPECT_EQ(ids[0], asrkit_alphabet_unk_id(a));

  const int32_t bad_id = 1000;
  EXPECT_EQ(asrkit_alphabet_decode(a, &bad_id, 1, &back), ASRKIT_ERR_OUT_OF_RANGE);
  EXPECT_NE(std::strlen(asrkit_last_error()), 0u);
}

TEST(CApi, ManifestSplit) {
  std::string tsv;
  for (int i = 0; i < 100; ++i) tsv += "u" + std::to_string(i) + "\ts\tKalimat " + std::to_string(i) + "\n";
  asrkit_manifest* m = nullptr;
  ASSERT_EQ(asrkit_manifest_parse(tsv.data(), tsv.size(), &m), ASRKIT_OK);
  Owned<asrkit_manifest> manifest(m);
  asrkit_manifest_normalize(m);
  EXPECT_STREQ(asrkit_manifest_normalized_text(m, 0), "kalimat");

  asrkit_split_spec spec;
  asrkit_split_spec_default(&spec);
  spec.seed = 7;
  asrkit_manifest *train = nullptr, *val = nullptr, *test = nullptr;
  ASSERT_EQ(asrkit_manifest_split(m, &spec, &train, &val, &test), ASRKIT_OK);
  Owned<asrkit_manifest> t1(train), t2(val), t3(test);
  EXPECT_EQ(asrkit_manifest_size(train), 81u);
  EXPECT_EQ(asrkit_manifest_size(val), 9u);
  EXPECT_EQ(asrkit_manifest_size(test), 10u);

  const char bad[] = "u1\tonly two\n";
  asrkit_manifest* broken = nullptr;
  EXPECT_EQ(asrkit_manifest_parse(bad, std::strlen(bad), &broken), ASRKIT_ERR_PARSE);
  EXPECT_EQ(broken, nullptr);
}

TEST(CApi, LmTrainScoreAndArpa) {
  auto sentences = lines("a b\na b\na c\nb c a\n");
  asrkit_lm* lm = nullptr;
  ASSERT_EQ(asrkit_lm_train(sentences.get(), 2, nullptr, &lm), ASRKIT_OK);
  Owned<asrkit_lm> owner(lm);
  EXPECT_EQ(asrkit_lm_order(lm), 2);
  EXPECT_GT(asrkit_lm_ngram_count(lm, 1), 0u);

  double p = 0.0;
  ASSERT_EQ(asrkit_lm_score_word(lm, "a", "b", &p), ASRKIT_OK);
  EXPECT_LT(p, 0.0);

  char* arpa = nullptr;
  ASSERT_EQ(asrkit_lm_write_arpa(lm, &arpa), ASRKIT_OK);
  const std::string text = take(arpa);
  asrkit_lm* read = nullptr;
  ASSERT_EQ(asrkit_lm_read_arpa(text.data(), text.size(), &read), ASRKIT_OK);
  Owned<asrkit_lm> read_owner(read);
  double q = 0.0;
  ASSERT_EQ(asrkit_lm_score_word(read, "a", "b", &q), ASRKIT_OK);
  EXPECT_NEAR(p, q, 1e-10);

  const double fixed[3] = {0.5, 1.0, 1.5};
  const asrkit_discount_config cfg{1, fixed, 0};
  asrkit_lm* fixed_lm = nullptr;
  ASSERT_EQ(asrkit_lm_train(sentences.get(), 3, &cfg, &fixed_lm), ASRKIT_OK);
  asrkit_lm_destroy(fixed_lm);

  const asrkit_discount_config strict{0, nullptr, 1};
  asrkit_lm* none = nullptr;
  EXPECT_EQ(asrkit_lm_train(sentences.get(), 3, &strict, &none), ASRKIT_ERR_INSUFFICIENT_STATISTICS);
  EXPECT_NE(std::string(asrkit_last_error()).find("insufficient statistics"), std::string::npos);
  EXPECT_EQ(asrkit_lm_train(sentences.get(), 0, nullptr, &none), ASRKIT_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(none, nullptr);
}

TEST(CApi, SynthesizeAndDecode) {
  auto texts = lines("ab ba\n");
  asrkit_alphabet* a = nullptr;
  ASSERT_EQ(asrkit_alphabet_build(texts.get(), &a), ASRKIT_OK);
  Owned<asrkit_alphabet> alphabet(a);

  asrkit_synth_params sp;
  asrkit_synth_params_default(&sp);
  asrkit_emissions* e = nullptr;
  ASSERT_EQ(asrkit_emissions_synthesize("ab ba", a, &sp, &e), ASRKIT_OK);
  Owned<asrkit_emissions> emissions(e);

  char* greedy = nullptr;
  ASSERT_EQ(asrkit_decode_greedy(e, a, &greedy), ASRKIT_OK);
  EXPECT_EQ(take(greedy), "ab ba");

  asrkit_decode_params dp;
  asrkit_decode_params_default(&dp);
  EXPECT_EQ(dp.beam_width, 50);
  asrkit_nbest* nb = nullptr;
  ASSERT_EQ(asrkit_decode_beam(e, a, &dp, &nb), ASRKIT_OK);
  Owned<asrkit_nbest> nbest(nb);
  ASSERT_GE(asrkit_nbest_size(nb), 1u);
  EXPECT_STREQ(asrkit_nbest_text(nb, 0), "ab ba");
  EXPECT_DOUBLE_EQ(asrkit_nbest_fused_score(nb, 0), asrkit_nbest_acoustic_score(nb, 0) + asrkit_nbest_lm_score(nb, 0));

  const asrkit_emissions* batch[2] = {e, e};
  asrkit_nbest* outs[2] = {nullptr, nullptr};
  ASSERT_EQ(asrkit_decode_beam_batch(batch, 2, a, &dp, 2, outs), ASRKIT_OK);
  Owned<asrkit_nbest> o1(outs[0]), o2(outs[1]);
  EXPECT_STREQ(asrkit_nbest_text(outs[1], 0), "ab ba");

  char* written = nullptr;
  ASSERT_EQ(asrkit_emissions_write(e, &written), ASRKIT_OK);
  const std::string text = take(written);
  asrkit_emissions* reread = nullptr;
  ASSERT_EQ(asrkit_emissions_read(text.data(), text.size(), &reread), ASRKIT_OK);
  Owned<asrkit_emissions> reread_owner(reread);
  EXPECT_EQ(asrkit_emissions_frames(reread), asrkit_emissions_frames(e));

  // Exhaustive decoding on a tiny matrix.
  const size_t V = asrkit_alphabet_size(a);
  std::vector<double> row(2 * V, std::log(0.5 / static_cast<double>(V - 1)));
  const int32_t blank = asrkit_alphabet_blank_id(a);
  row[static_cast<size_t>(blank)] = std::log(0.5);
  row[V + static_cast<size_t>(blank)] = std::log(0.5);
  asrkit_emissions* tiny = nullptr;
  ASSERT_EQ(asrkit_emissions_create(a, 2, row.data(), &tiny), ASRKIT_OK);
  Owned<asrkit_emissions> tiny_owner(tiny);
  char* best = nullptr;
  double prob = 0.0;
  ASSERT_EQ(asrkit_decode_exhaustive(tiny, a, &best, &prob), ASRKIT_OK);
  EXPECT_EQ(take(best), "");
  EXPECT_NEAR(prob, 0.25, 1e-12);
}

TEST(CApi, WerAndReport) {
  asrkit_wer_breakdown b{};
  ASSERT_EQ(asrkit_wer("a b c d", "a x c", &b), ASRKIT_OK);
  EXPECT_DOUBLE_EQ(b.wer_percent, 50.0);
  EXPECT_EQ(asrkit_wer("", "a", &b), ASRKIT_ERR_INVALID_ARGUMENT);

  const double vals[2] = {0.77, 10.78};
  double mean = 0.0;
  ASSERT_EQ(asrkit_aggregate(vals, 2, &mean), ASRKIT_OK);
  EXPECT_DOUBLE_EQ(mean, 5.78);

  Owned<asrkit_report> r(asrkit_report_create());
  ASSERT_EQ(asrkit_report_add(r.get(), "m", 2, "d1", 0.77), ASRKIT_OK);
  ASSERT_EQ(asrkit_report_add(r.get(), "m", 2, "d2", 10.78), ASRKIT_OK);
  const char csv[] = "model,lm,dataset,wer\nm,none,d1,2\n";
  ASSERT_EQ(asrkit_report_add_csv(r.get(), csv, std::strlen(csv)), ASRKIT_OK);
  ASSERT_EQ(asrkit_report_num_rows(r.get()), 2u);
  const char* model = nullptr;
  int lm = -1, flagged = 0;
  double avg = 0.0;
  ASSERT_EQ(asrkit_report_row(r.get(), 1, &model, &lm, &avg, &flagged), ASRKIT_OK);
  EXPECT_STREQ(model, "m");
  EXPECT_EQ(lm, 2);
  EXPECT_DOUBLE_EQ(avg, 5.78);
  EXPECT_EQ(flagged, 1);
  EXPECT_EQ(asrkit_report_row(r.get(), 5, &model, &lm, &avg, &flagged), ASRKIT_ERR_OUT_OF_RANGE);

  char* text = nullptr;
  ASSERT_EQ(asrkit_report_render_text(r.get(), &text), ASRKIT_OK);
  EXPECT_NE(take(text).find("5.78*"), std::string::npos);
}

TEST(CApi, NullArgumentsAreRejected) {
  char* out = nullptr;
  EXPECT_EQ(asrkit_normalize_text(nullptr, 3, &out), ASRKIT_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(asrkit_decode_greedy(nullptr, nullptr, &out), ASRKIT_ERR_INVALID_ARGUMENT);
  EXPECT_NE(asrkit_version(), nullptr);
}

}  // namespace

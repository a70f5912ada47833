/*
 * Copyright (C) 2026 asrkit contributors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to asrkit. All objects are opaque handles created by
 * asrkit_*_create/parse/read functions and released by the matching
 * *_destroy. Functions return an asrkit_status; on failure the message is
 * available from asrkit_last_error() on the same thread.
 *
 * Strings returned through `char**` out-parameters are heap copies owned by
 * the caller and must be released with asrkit_string_free.
 *
 * Handles are immutable after creation except asrkit_strings, asrkit_manifest
 * and asrkit_report builders. Immutable handles may be shared across threads.
 */
#ifndef ASRKIT_ASRKIT_H_
#define ASRKIT_ASRKIT_H_

#include <stddef.h>
#include <stdint.h>

#if defined(ASRKIT_BUILDING_LIBRARY)
#define ASRKIT_API __attribute__((visibility("default")))
#else
#define ASRKIT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum asrkit_status {
  ASRKIT_OK = 0,
  ASRKIT_ERR_INVALID_ARGUMENT = 1,
  ASRKIT_ERR_PARSE = 2,
  ASRKIT_ERR_INSUFFICIENT_STATISTICS = 3,
  ASRKIT_ERR_OUT_OF_RANGE = 4,
  ASRKIT_ERR_INTERNAL = 5
} asrkit_status;

typedef struct asrkit_strings asrkit_strings;
typedef struct asrkit_alphabet asrkit_alphabet;
typedef struct asrkit_manifest asrkit_manifest;
typedef struct asrkit_lm asrkit_lm;
typedef struct asrkit_emissions asrkit_emissions;
typedef struct asrkit_nbest asrkit_nbest;
typedef struct asrkit_report asrkit_report;

typedef struct asrkit_wer_breakdown {
  size_t substitutions;
  size_t deletions;
  size_t insertions;
  size_t reference_words;
  double wer_percent;
} asrkit_wer_breakdown;

typedef struct asrkit_split_spec {
  double test_fraction;         /* default 0.10 */
  double val_fraction_of_train; /* default 0.10 */
  uint64_t seed;
  int by_speaker;
} asrkit_split_spec;

typedef struct asrkit_discount_config {
  /* Number of (d1, d2, d3+) triples in `discounts`: 0 estimates from
   * count-of-counts, 1 applies to every order, otherwise one per order. */
  size_t num_triples;
  const double* discounts;
  int strict;
} asrkit_discount_config;

typedef struct asrkit_synth_params {
  int frames_per_symbol;
  double blank_prob;
  double noise_epsilon;
  uint64_t seed;
} asrkit_synth_params;

typedef struct asrkit_decode_params {
  int beam_width;         /* default 50 */
  double alpha;           /* default 0.5 */
  double beta;            /* default 1.0 */
  double prune_log_floor; /* default -9.2; -INFINITY disables */
  const asrkit_lm* lm;    /* optional, borrowed */
} asrkit_decode_params;

/* ---- errors and memory -------------------------------------------------- */

ASRKIT_API const char* asrkit_last_error(void);
ASRKIT_API const char* asrkit_version(void);
ASRKIT_API void asrkit_string_free(char* s);
/* Derives an independent seed for item `stream` of a seeded run. */
ASRKIT_API uint64_t asrkit_mix_seed(uint64_t seed, uint64_t stream);

/* ---- string lists ------------------------------------------------------- */

ASRKIT_API asrkit_strings* asrkit_strings_create(void);
ASRKIT_API void asrkit_strings_destroy(asrkit_strings* list);
ASRKIT_API asrkit_status asrkit_strings_push(asrkit_strings* list, const char* s, size_t len);
ASRKIT_API size_t asrkit_strings_size(const asrkit_strings* list);
/* Borrowed pointer, valid until the list is modified or destroyed. */
ASRKIT_API const char* asrkit_strings_get(const asrkit_strings* list, size_t i);
/* One entry per line; a trailing newline does not add an empty entry. */
ASRKIT_API asrkit_status asrkit_strings_from_lines(const char* text, size_t len, asrkit_strings** out);

/* ---- text normalization and alphabet ------------------------------------ */

ASRKIT_API asrkit_status asrkit_normalize_text(const char* raw, size_t len, char** out);
ASRKIT_API asrkit_status asrkit_alphabet_build(const asrkit_strings* transcripts, asrkit_alphabet** out);
ASRKIT_API asrkit_status asrkit_alphabet_parse_vocab(const char* text, size_t len, asrkit_alphabet** out);
ASRKIT_API void asrkit_alphabet_destroy(asrkit_alphabet* a);
ASRKIT_API asrkit_status asrkit_alphabet_vocab_text(const asrkit_alphabet* a, char** out);
ASRKIT_API size_t asrkit_alphabet_size(const asrkit_alphabet* a);
ASRKIT_API int32_t asrkit_alphabet_blank_id(const asrkit_alphabet* a);
ASRKIT_API int32_t asrkit_alphabet_unk_id(const asrkit_alphabet* a);
ASRKIT_API int32_t asrkit_alphabet_delimiter_id(const asrkit_alphabet* a);
/* Writes up to `cap` ids into `ids`; `*count` receives the full length. */
ASRKIT_API asrkit_status asrkit_alphabet_encode(const asrkit_alphabet* a, const char* text, size_t len,
                                                int32_t* ids, size_t cap, size_t* count);
ASRKIT_API asrkit_status asrkit_alphabet_decode(const asrkit_alphabet* a, const int32_t* ids, size_t n,
                                                char** out);

/* ---- manifests and corpus ----------------------------------------------- */

ASRKIT_API asrkit_status asrkit_manifest_parse(const char* tsv, size_t len, asrkit_manifest** out);
ASRKIT_API void asrkit_manifest_destroy(asrkit_manifest* m);
ASRKIT_API size_t asrkit_manifest_size(const asrkit_manifest* m);
/* Borrowed pointers, valid while the manifest lives and is not modified. */
ASRKIT_API const char* asrkit_manifest_id(const asrkit_manifest* m, size_t i);
ASRKIT_API const char* asrkit_manifest_speaker(const asrkit_manifest* m, size_t i);
ASRKIT_API const char* asrkit_manifest_text(const asrkit_manifest* m, size_t i);
ASRKIT_API const char* asrkit_manifest_normalized_text(const asrkit_manifest* m, size_t i);
/* Fills the normalized text of every record. */
ASRKIT_API void asrkit_manifest_normalize(asrkit_manifest* m);
/* Appends `src` to `dst`; fails on an utterance id already present. */
ASRKIT_API asrkit_status asrkit_manifest_append(asrkit_manifest* dst, const asrkit_manifest* src);
ASRKIT_API asrkit_status asrkit_manifest_format(const asrkit_manifest* m, int normalized, char** out);
ASRKIT_API void asrkit_split_spec_default(asrkit_split_spec* spec);
ASRKIT_API asrkit_status asrkit_manifest_split(const asrkit_manifest* m, const asrkit_split_spec* spec,
                                               asrkit_manifest** train, asrkit_manifest** val,
                                               asrkit_manifest** test);
/* `sources[i]` is sampled at `fractions[i]`. */
ASRKIT_API asrkit_status asrkit_lm_corpus_build(const asrkit_strings* const* sources, const double* fractions,
                                                size_t num_sources, uint64_t seed, asrkit_strings** out);

/* ---- n-gram language model ---------------------------------------------- */

/* Sentences are normalized text; words split on spaces. */
ASRKIT_API asrkit_status asrkit_lm_train(const asrkit_strings* sentences, int order,
                                         const asrkit_discount_config* config, asrkit_lm** out);
ASRKIT_API asrkit_status asrkit_lm_read_arpa(const char* text, size_t len, asrkit_lm** out);
ASRKIT_API asrkit_status asrkit_lm_write_arpa(const asrkit_lm* lm, char** out);
ASRKIT_API void asrkit_lm_destroy(asrkit_lm* lm);
ASRKIT_API int asrkit_lm_order(const asrkit_lm* lm);
ASRKIT_API size_t asrkit_lm_ngram_count(const asrkit_lm* lm, int k);
ASRKIT_API size_t asrkit_lm_num_warnings(const asrkit_lm* lm);
ASRKIT_API const char* asrkit_lm_warning(const asrkit_lm* lm, size_t i);
/* `context` is space-separated words, oldest first. Result in log10. */
ASRKIT_API asrkit_status asrkit_lm_score_word(const asrkit_lm* lm, const char* context, const char* word,
                                              double* log10_prob);
ASRKIT_API asrkit_status asrkit_lm_score_sentence(const asrkit_lm* lm, const char* sentence, double* log10_prob);
ASRKIT_API asrkit_status asrkit_lm_perplexity(const asrkit_lm* lm, const asrkit_strings* sentences,
                                              double* perplexity);

/* ---- emissions ---------------------------------------------------------- */

ASRKIT_API asrkit_status asrkit_emissions_read(const char* text, size_t len, asrkit_emissions** out);
ASRKIT_API asrkit_status asrkit_emissions_write(const asrkit_emissions* e, char** out);
ASRKIT_API void asrkit_emissions_destroy(asrkit_emissions* e);
ASRKIT_API size_t asrkit_emissions_frames(const asrkit_emissions* e);
ASRKIT_API size_t asrkit_emissions_vocab_size(const asrkit_emissions* e);
/* Copies T x V natural-log values, row-major. */
ASRKIT_API asrkit_status asrkit_emissions_create(const asrkit_alphabet* a, size_t frames, const double* log_probs,
                                                 asrkit_emissions** out);
ASRKIT_API void asrkit_synth_params_default(asrkit_synth_params* p);
ASRKIT_API asrkit_status asrkit_emissions_synthesize(const char* text, const asrkit_alphabet* a,
                                                     const asrkit_synth_params* p, asrkit_emissions** out);

/* ---- decoding ----------------------------------------------------------- */

ASRKIT_API void asrkit_decode_params_default(asrkit_decode_params* p);
ASRKIT_API asrkit_status asrkit_decode_greedy(const asrkit_emissions* e, const asrkit_alphabet* a, char** out);
ASRKIT_API asrkit_status asrkit_decode_beam(const asrkit_emissions* e, const asrkit_alphabet* a,
                                            const asrkit_decode_params* p, asrkit_nbest** out);
/* Decodes `n` utterances on `jobs` threads; out[i] belongs to e[i]. */
ASRKIT_API asrkit_status asrkit_decode_beam_batch(const asrkit_emissions* const* e, size_t n,
                                                  const asrkit_alphabet* a, const asrkit_decode_params* p,
                                                  int jobs, asrkit_nbest** out);
ASRKIT_API void asrkit_nbest_destroy(asrkit_nbest* nb);
ASRKIT_API size_t asrkit_nbest_size(const asrkit_nbest* nb);
ASRKIT_API const char* asrkit_nbest_text(const asrkit_nbest* nb, size_t i);
ASRKIT_API double asrkit_nbest_fused_score(const asrkit_nbest* nb, size_t i);
ASRKIT_API double asrkit_nbest_acoustic_score(const asrkit_nbest* nb, size_t i);
ASRKIT_API double asrkit_nbest_lm_score(const asrkit_nbest* nb, size_t i);
ASRKIT_API asrkit_status asrkit_decode_exhaustive(const asrkit_emissions* e, const asrkit_alphabet* a, char** text,
                                                  double* probability);

/* ---- metrics and reports ------------------------------------------------ */

ASRKIT_API asrkit_status asrkit_wer(const char* reference, const char* hypothesis, asrkit_wer_breakdown* out);
/* Mean rounded half-up to two decimals. */
ASRKIT_API asrkit_status asrkit_aggregate(const double* values, size_t n, double* mean);

ASRKIT_API asrkit_report* asrkit_report_create(void);
ASRKIT_API void asrkit_report_destroy(asrkit_report* r);
/* lm_order 0 means no LM. */
ASRKIT_API asrkit_status asrkit_report_add(asrkit_report* r, const char* model, int lm_order, const char* dataset,
                                           double wer_percent);
/* Merges `model,lm,dataset,wer` CSV rows into the report. */
ASRKIT_API asrkit_status asrkit_report_add_csv(asrkit_report* r, const char* csv, size_t len);
ASRKIT_API size_t asrkit_report_num_rows(const asrkit_report* r);
ASRKIT_API asrkit_status asrkit_report_row(const asrkit_report* r, size_t i, const char** model, int* lm_order,
                                           double* avg, int* avg_flagged);
ASRKIT_API asrkit_status asrkit_report_render_text(const asrkit_report* r, char** out);
ASRKIT_API asrkit_status asrkit_report_render_csv(const asrkit_report* r, char** out);

#ifdef __cplusplus
}
#endif

#endif /* ASRKIT_ASRKIT_H_ */

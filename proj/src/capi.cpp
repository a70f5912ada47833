// Copyright (C) 2026 asrkit contributors
// SPDX-License-Identifier: Apache-2.0

#include "asrkit/asrkit.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "asrkit/corpus.hpp"
#include "asrkit/ctcdecode.hpp"
#include "asrkit/emissions.hpp"
#include "asrkit/error.hpp"
#include "asrkit/metrics.hpp"
#include "asrkit/ngram.hpp"
#include "asrkit/rng.hpp"
#include "asrkit/textnorm.hpp"

struct asrkit_strings {
  std::vector<std::string> items;
};
struct asrkit_alphabet {
  asrkit::Alphabet value;
};
struct asrkit_manifest {
  std::vector<asrkit::Utterance> items;
};
struct asrkit_lm {
  asrkit::NGramModel value;
};
struct asrkit_emissions {
  asrkit::EmissionMatrix value;
};
struct asrkit_nbest {
  std::vector<asrkit::Hypothesis> items;
};
struct asrkit_report {
  asrkit::EvalReport value;
  std::vector<asrkit::EvalReport::Row> rows;  // cache for asrkit_report_row
};

namespace {

thread_local std::string g_last_error;

asrkit_status fail(asrkit_status status, const char* message) {
  g_last_error = message;
  return status;
}

// Every entry point funnels exceptions through here; nothing escapes the
// C boundary.
template <typename F>
asrkit_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return ASRKIT_OK;
  } catch (const asrkit::Error& e) {
    return fail(static_cast<asrkit_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(ASRKIT_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ASRKIT_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ASRKIT_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw asrkit::Error(asrkit::ErrorCode::kInvalidArgument, what);
}

char* copy_out(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size());
  out[s.size()] = '\0';
  return out;
}

std::string_view view(const char* text, std::size_t len) {
  return text ? std::string_view(text, len) : std::string_view();
}

asrkit::DecodeParams to_params(const asrkit_decode_params* p) {
  asrkit::DecodeParams params;
  if (p) {
    params.beam_width = p->beam_width;
    params.alpha = p->alpha;
    params.beta = p->beta;
    params.prune_log_floor = p->prune_log_floor;
    params.lm = p->lm ? &p->lm->value : nullptr;
  }
  require(params.beam_width >= 1, "beam width must be at least 1");
  return params;
}

const asrkit::Hypothesis& hypothesis(const asrkit_nbest* nb, std::size_t i) {
  static const asrkit::Hypothesis kEmpty{};
  if (!nb || i >= nb->items.size()) return kEmpty;
  return nb->items[i];
}

}  // namespace

extern "C" {

const char* asrkit_last_error(void) { return g_last_error.c_str(); }
const char* asrkit_version(void) { return "0.3.0"; }
void asrkit_string_free(char* s) { std::free(s); }
uint64_t asrkit_mix_seed(uint64_t seed, uint64_t stream) { return asrkit::mix_seed(seed, stream); }

// ---- string lists -----------------------------------------------------------

asrkit_strings* asrkit_strings_create(void) { return new (std::nothrow) asrkit_strings(); }
void asrkit_strings_destroy(asrkit_strings* list) { delete list; }

asrkit_status asrkit_strings_push(asrkit_strings* list, const char* s, size_t len) {
  return guarded([&] {
    require(list && (s || len == 0), "null argument");
    list->items.emplace_back(view(s, len));
  });
}

size_t asrkit_strings_size(const asrkit_strings* list) { return list ? list->items.size() : 0; }

const char* asrkit_strings_get(const asrkit_strings* list, size_t i) {
  return list && i < list->items.size() ? list->items[i].c_str() : nullptr;
}

asrkit_status asrkit_strings_from_lines(const char* text, size_t len, asrkit_strings** out) {
  return guarded([&] {
    require(out && (text || len == 0), "null argument");
    auto list = std::make_unique<asrkit_strings>();
    const std::string_view all = view(text, len);
    std::size_t start = 0;
    while (start < all.size()) {
      std::size_t end = all.find('\n', start);
      if (end == std::string_view::npos) end = all.size();
      std::string_view line = all.substr(start, end - start);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      list->items.emplace_back(line);
      start = end + 1;
    }
    *out = list.release();
  });
}

// ---- text normalization and alphabet ---------------------------------------

asrkit_status asrkit_normalize_text(const char* raw, size_t len, char** out) {
  return guarded([&] {
    require(out && (raw || len == 0), "null argument");
    *out = copy_out(asrkit::normalize_text(view(raw, len)));
  });
}

asrkit_status asrkit_alphabet_build(const asrkit_strings* transcripts, asrkit_alphabet** out) {
  return guarded([&] {
    require(transcripts && out, "null argument");
    *out = new asrkit_alphabet{asrkit::Alphabet::build(transcripts->items)};
  });
}

asrkit_status asrkit_alphabet_parse_vocab(const char* text, size_t len, asrkit_alphabet** out) {
  return guarded([&] {
    require(out && (text || len == 0), "null argument");
    *out = new asrkit_alphabet{asrkit::Alphabet::parse_vocab(view(text, len))};
  });
}

void asrkit_alphabet_destroy(asrkit_alphabet* a) { delete a; }

asrkit_status asrkit_alphabet_vocab_text(const asrkit_alphabet* a, char** out) {
  return guarded([&] {
    require(a && out, "null argument");
    *out = copy_out(a->value.vocab_text());
  });
}

size_t asrkit_alphabet_size(const asrkit_alphabet* a) { return a ? a->value.size() : 0; }
int32_t asrkit_alphabet_blank_id(const asrkit_alphabet* a) { return a ? a->value.blank_id() : -1; }
int32_t asrkit_alphabet_unk_id(const asrkit_alphabet* a) { return a ? a->value.unk_id() : -1; }
int32_t asrkit_alphabet_delimiter_id(const asrkit_alphabet* a) { return a ? a->value.delimiter_id() : -1; }

asrkit_status asrkit_alphabet_encode(const asrkit_alphabet* a, const char* text, size_t len, int32_t* ids,
                                     size_t cap, size_t* count) {
  return guarded([&] {
    require(a && count && (text || len == 0) && (ids || cap == 0), "null argument");
    const auto encoded = a->value.encode(view(text, len));
    *count = encoded.size();
    for (std::size_t i = 0; i < encoded.size() && i < cap; ++i) ids[i] = encoded[i];
  });
}

asrkit_status asrkit_alphabet_decode(const asrkit_alphabet* a, const int32_t* ids, size_t n, char** out) {
  return guarded([&] {
    require(a && out && (ids || n == 0), "null argument");
    *out = copy_out(a->value.decode(std::span<const int32_t>(ids, n)));
  });
}

// ---- manifests and corpus ---------------------------------------------------

asrkit_status asrkit_manifest_parse(const char* tsv, size_t len, asrkit_manifest** out) {
  return guarded([&] {
    require(out && (tsv || len == 0), "null argument");
    *out = new asrkit_manifest{asrkit::parse_manifest(view(tsv, len))};
  });
}

void asrkit_manifest_destroy(asrkit_manifest* m) { delete m; }
size_t asrkit_manifest_size(const asrkit_manifest* m) { return m ? m->items.size() : 0; }

const char* asrkit_manifest_id(const asrkit_manifest* m, size_t i) {
  return m && i < m->items.size() ? m->items[i].utterance_id.c_str() : nullptr;
}
const char* asrkit_manifest_speaker(const asrkit_manifest* m, size_t i) {
  return m && i < m->items.size() ? m->items[i].speaker_id.c_str() : nullptr;
}
const char* asrkit_manifest_text(const asrkit_manifest* m, size_t i) {
  return m && i < m->items.size() ? m->items[i].text.c_str() : nullptr;
}
const char* asrkit_manifest_normalized_text(const asrkit_manifest* m, size_t i) {
  return m && i < m->items.size() ? m->items[i].normalized_text.c_str() : nullptr;
}

void asrkit_manifest_normalize(asrkit_manifest* m) {
  if (m) asrkit::normalize_utterances(m->items);
}

asrkit_status asrkit_manifest_append(asrkit_manifest* dst, const asrkit_manifest* src) {
  return guarded([&] {
    require(dst && src, "null argument");
    std::vector<std::vector<asrkit::Utterance>> parts{dst->items, src->items};
    dst->items = asrkit::merge_manifests(parts);
  });
}

asrkit_status asrkit_manifest_format(const asrkit_manifest* m, int normalized, char** out) {
  return guarded([&] {
    require(m && out, "null argument");
    *out = copy_out(asrkit::format_manifest(m->items, normalized != 0));
  });
}

void asrkit_split_spec_default(asrkit_split_spec* spec) {
  if (!spec) return;
  const asrkit::SplitSpec d;
  spec->test_fraction = d.test_fraction;
  spec->val_fraction_of_train = d.val_fraction_of_train;
  spec->seed = d.seed;
  spec->by_speaker = d.by_speaker ? 1 : 0;
}

asrkit_status asrkit_manifest_split(const asrkit_manifest* m, const asrkit_split_spec* spec,
                                    asrkit_manifest** train, asrkit_manifest** val, asrkit_manifest** test) {
  return guarded([&] {
    require(m && spec && train && val && test, "null argument");
    asrkit::SplitSpec s;
    s.test_fraction = spec->test_fraction;
    s.val_fraction_of_train = spec->val_fraction_of_train;
    s.seed = spec->seed;
    s.by_speaker = spec->by_speaker != 0;
    auto split = asrkit::split_dataset(m->items, s);
    auto tr = std::make_unique<asrkit_manifest>(asrkit_manifest{std::move(split.train)});
    auto va = std::make_unique<asrkit_manifest>(asrkit_manifest{std::move(split.val)});
    auto te = std::make_unique<asrkit_manifest>(asrkit_manifest{std::move(split.test)});
    *train = tr.release();
    *val = va.release();
    *test = te.release();
  });
}

asrkit_status asrkit_lm_corpus_build(const asrkit_strings* const* sources, const double* fractions,
                                     size_t num_sources, uint64_t seed, asrkit_strings** out) {
  return guarded([&] {
    require(out && (num_sources == 0 || (sources && fractions)), "null argument");
    std::vector<asrkit::CorpusSource> parts;
    for (std::size_t i = 0; i < num_sources; ++i) {
      require(sources[i] != nullptr, "null corpus source");
      parts.push_back({sources[i]->items, fractions[i]});
    }
    *out = new asrkit_strings{asrkit::build_lm_corpus(parts, seed)};
  });
}

// ---- n-gram language model --------------------------------------------------

asrkit_status asrkit_lm_train(const asrkit_strings* sentences, int order, const asrkit_discount_config* config,
                              asrkit_lm** out) {
  return guarded([&] {
    require(sentences && out, "null argument");
    asrkit::DiscountConfig dc;
    if (config) {
      require(config->num_triples == 0 || config->discounts, "null discount array");
      for (std::size_t i = 0; i < config->num_triples; ++i) {
        const double* d = config->discounts + 3 * i;
        dc.fixed.push_back({d[0], d[1], d[2]});
      }
      dc.strict = config->strict != 0;
    }
    std::vector<std::vector<std::string>> tokenized;
    tokenized.reserve(sentences->items.size());
    for (const auto& s : sentences->items) tokenized.push_back(asrkit::split_words(s));
    const auto counts = asrkit::count_ngrams(tokenized, order);
    *out = new asrkit_lm{asrkit::estimate(counts, order, dc)};
  });
}

asrkit_status asrkit_lm_read_arpa(const char* text, size_t len, asrkit_lm** out) {
  return guarded([&] {
    require(out && (text || len == 0), "null argument");
    *out = new asrkit_lm{asrkit::read_arpa(view(text, len))};
  });
}

asrkit_status asrkit_lm_write_arpa(const asrkit_lm* lm, char** out) {
  return guarded([&] {
    require(lm && out, "null argument");
    *out = copy_out(asrkit::write_arpa(lm->value));
  });
}

void asrkit_lm_destroy(asrkit_lm* lm) { delete lm; }
int asrkit_lm_order(const asrkit_lm* lm) { return lm ? lm->value.order() : 0; }

size_t asrkit_lm_ngram_count(const asrkit_lm* lm, int k) {
  if (!lm || k < 1 || k > lm->value.order()) return 0;
  return lm->value.ngram_count(k);
}

size_t asrkit_lm_num_warnings(const asrkit_lm* lm) { return lm ? lm->value.warnings().size() : 0; }

const char* asrkit_lm_warning(const asrkit_lm* lm, size_t i) {
  return lm && i < lm->value.warnings().size() ? lm->value.warnings()[i].c_str() : nullptr;
}

asrkit_status asrkit_lm_score_word(const asrkit_lm* lm, const char* context, const char* word, double* log10_prob) {
  return guarded([&] {
    require(lm && word && log10_prob, "null argument");
    const auto ctx = asrkit::split_words(context ? context : "");
    *log10_prob = lm->value.score_word(ctx, word);
  });
}

asrkit_status asrkit_lm_score_sentence(const asrkit_lm* lm, const char* sentence, double* log10_prob) {
  return guarded([&] {
    require(lm && sentence && log10_prob, "null argument");
    *log10_prob = lm->value.score_sentence(asrkit::split_words(sentence));
  });
}

asrkit_status asrkit_lm_perplexity(const asrkit_lm* lm, const asrkit_strings* sentences, double* perplexity) {
  return guarded([&] {
    require(lm && sentences && perplexity, "null argument");
    std::vector<std::vector<std::string>> tokenized;
    for (const auto& s : sentences->items) tokenized.push_back(asrkit::split_words(s));
    *perplexity = lm->value.perplexity(tokenized);
  });
}

// ---- emissions ----------------------------------------------------------------

asrkit_status asrkit_emissions_read(const char* text, size_t len, asrkit_emissions** out) {
  return guarded([&] {
    require(out && (text || len == 0), "null argument");
    *out = new asrkit_emissions{asrkit::read_emissions(view(text, len))};
  });
}

asrkit_status asrkit_emissions_write(const asrkit_emissions* e, char** out) {
  return guarded([&] {
    require(e && out, "null argument");
    *out = copy_out(asrkit::write_emissions(e->value));
  });
}

void asrkit_emissions_destroy(asrkit_emissions* e) { delete e; }
size_t asrkit_emissions_frames(const asrkit_emissions* e) { return e ? e->value.frames() : 0; }
size_t asrkit_emissions_vocab_size(const asrkit_emissions* e) { return e ? e->value.vocab_size() : 0; }

asrkit_status asrkit_emissions_create(const asrkit_alphabet* a, size_t frames, const double* log_probs,
                                      asrkit_emissions** out) {
  return guarded([&] {
    require(a && out && (log_probs || frames == 0), "null argument");
    const std::size_t n = frames * a->value.size();
    std::vector<double> values(log_probs, log_probs + n);
    *out = new asrkit_emissions{asrkit::EmissionMatrix(frames, a->value.symbols(), std::move(values))};
  });
}

void asrkit_synth_params_default(asrkit_synth_params* p) {
  if (!p) return;
  const asrkit::SynthParams d;
  p->frames_per_symbol = d.frames_per_symbol;
  p->blank_prob = d.blank_prob;
  p->noise_epsilon = d.noise_epsilon;
  p->seed = d.seed;
}

asrkit_status asrkit_emissions_synthesize(const char* text, const asrkit_alphabet* a, const asrkit_synth_params* p,
                                          asrkit_emissions** out) {
  return guarded([&] {
    require(text && a && out, "null argument");
    asrkit::SynthParams params;
    if (p) {
      params.frames_per_symbol = p->frames_per_symbol;
      params.blank_prob = p->blank_prob;
      params.noise_epsilon = p->noise_epsilon;
      params.seed = p->seed;
    }
    *out = new asrkit_emissions{asrkit::synthesize_emissions(text, a->value, params)};
  });
}

// ---- decoding -----------------------------------------------------------------

void asrkit_decode_params_default(asrkit_decode_params* p) {
  if (!p) return;
  const asrkit::DecodeParams d;
  p->beam_width = d.beam_width;
  p->alpha = d.alpha;
  p->beta = d.beta;
  p->prune_log_floor = d.prune_log_floor;
  p->lm = nullptr;
}

asrkit_status asrkit_decode_greedy(const asrkit_emissions* e, const asrkit_alphabet* a, char** out) {
  return guarded([&] {
    require(e && a && out, "null argument");
    *out = copy_out(asrkit::greedy_decode(e->value, a->value));
  });
}

asrkit_status asrkit_decode_beam(const asrkit_emissions* e, const asrkit_alphabet* a,
                                 const asrkit_decode_params* p, asrkit_nbest** out) {
  return guarded([&] {
    require(e && a && out, "null argument");
    *out = new asrkit_nbest{asrkit::beam_search_decode(e->value, a->value, to_params(p))};
  });
}

asrkit_status asrkit_decode_beam_batch(const asrkit_emissions* const* e, size_t n, const asrkit_alphabet* a,
                                       const asrkit_decode_params* p, int jobs, asrkit_nbest** out) {
  return guarded([&] {
    require(a && out && (e || n == 0), "null argument");
    std::vector<asrkit::EmissionMatrix> batch;
    batch.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      require(e[i] != nullptr, "null emissions in batch");
      batch.push_back(e[i]->value);
    }
    auto results = asrkit::decode_batch(batch, a->value, to_params(p), jobs);
    std::vector<std::unique_ptr<asrkit_nbest>> owned;
    owned.reserve(n);
    for (auto& r : results) owned.push_back(std::make_unique<asrkit_nbest>(asrkit_nbest{std::move(r)}));
    for (std::size_t i = 0; i < n; ++i) out[i] = owned[i].release();
  });
}

void asrkit_nbest_destroy(asrkit_nbest* nb) { delete nb; }
size_t asrkit_nbest_size(const asrkit_nbest* nb) { return nb ? nb->items.size() : 0; }

const char* asrkit_nbest_text(const asrkit_nbest* nb, size_t i) {
  return nb && i < nb->items.size() ? nb->items[i].text.c_str() : nullptr;
}
double asrkit_nbest_fused_score(const asrkit_nbest* nb, size_t i) { return hypothesis(nb, i).fused_score; }
double asrkit_nbest_acoustic_score(const asrkit_nbest* nb, size_t i) { return hypothesis(nb, i).acoustic_log_mass; }
double asrkit_nbest_lm_score(const asrkit_nbest* nb, size_t i) { return hypothesis(nb, i).lm_score; }

asrkit_status asrkit_decode_exhaustive(const asrkit_emissions* e, const asrkit_alphabet* a, char** text,
                                       double* probability) {
  return guarded([&] {
    require(e && a && text && probability, "null argument");
    const auto best = asrkit::exhaustive_decode(e->value, a->value);
    *text = copy_out(best.text);
    *probability = best.probability;
  });
}

// ---- metrics and reports ----------------------------------------------------

asrkit_status asrkit_wer(const char* reference, const char* hypothesis, asrkit_wer_breakdown* out) {
  return guarded([&] {
    require(reference && hypothesis && out, "null argument");
    const auto b = asrkit::wer(reference, hypothesis);
    out->substitutions = b.substitutions;
    out->deletions = b.deletions;
    out->insertions = b.insertions;
    out->reference_words = b.reference_words;
    out->wer_percent = b.wer_percent();
  });
}

asrkit_status asrkit_aggregate(const double* values, size_t n, double* mean) {
  return guarded([&] {
    require(mean && (values || n == 0), "null argument");
    *mean = asrkit::aggregate(std::span<const double>(values, n));
  });
}

asrkit_report* asrkit_report_create(void) { return new (std::nothrow) asrkit_report(); }
void asrkit_report_destroy(asrkit_report* r) { delete r; }

asrkit_status asrkit_report_add(asrkit_report* r, const char* model, int lm_order, const char* dataset,
                                double wer_percent) {
  return guarded([&] {
    require(r && model && dataset, "null argument");
    r->value.add(model, lm_order, dataset, wer_percent);
    r->rows = r->value.rows();
  });
}

asrkit_status asrkit_report_add_csv(asrkit_report* r, const char* csv, size_t len) {
  return guarded([&] {
    require(r && (csv || len == 0), "null argument");
    asrkit::merge_report(r->value, asrkit::parse_report_csv(view(csv, len)));
    r->rows = r->value.rows();
  });
}

size_t asrkit_report_num_rows(const asrkit_report* r) { return r ? r->rows.size() : 0; }

asrkit_status asrkit_report_row(const asrkit_report* r, size_t i, const char** model, int* lm_order, double* avg,
                                int* avg_flagged) {
  return guarded([&] {
    require(r && model && lm_order && avg && avg_flagged, "null argument");
    if (i >= r->rows.size()) throw asrkit::Error(asrkit::ErrorCode::kOutOfRange, "report row out of range");
    const auto& row = r->rows[i];
    *model = row.model.c_str();
    *lm_order = row.lm;
    *avg = row.avg;
    *avg_flagged = row.avg_flagged ? 1 : 0;
  });
}

asrkit_status asrkit_report_render_text(const asrkit_report* r, char** out) {
  return guarded([&] {
    require(r && out, "null argument");
    *out = copy_out(r->value.render_text());
  });
}

asrkit_status asrkit_report_render_csv(const asrkit_report* r, char** out) {
  return guarded([&] {
    require(r && out, "null argument");
    *out = copy_out(r->value.render_csv());
  });
}

}  // extern "C"

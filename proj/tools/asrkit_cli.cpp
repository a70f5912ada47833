// Copyright (C) 2026 asrkit contributors
// SPDX-License-Identifier: Apache-2.0
//
// asrkit command-line front end. Talks to the library only through the C
// interface in asrkit/asrkit.h.
//
// Exit codes: 0 success, 1 internal error, 2 usage or input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "asrkit/asrkit.h"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;

// Carries the exit code to main().
struct CliError : std::runtime_error {
  CliError(int code, const std::string& message) : std::runtime_error(message), exit_code(code) {}
  int exit_code;
};

[[noreturn]] void input_error(const std::string& message) { throw CliError(kExitUsage, message); }

void check(asrkit_status status, const std::string& context) {
  if (status == ASRKIT_OK) return;
  const std::string message = context.empty() ? asrkit_last_error() : context + ": " + asrkit_last_error();
  throw CliError(status == ASRKIT_ERR_INTERNAL ? kExitInternal : kExitUsage, message);
}

template <typename T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using Strings = std::unique_ptr<asrkit_strings, Deleter<asrkit_strings, asrkit_strings_destroy>>;
using AlphabetPtr = std::unique_ptr<asrkit_alphabet, Deleter<asrkit_alphabet, asrkit_alphabet_destroy>>;
using Manifest = std::unique_ptr<asrkit_manifest, Deleter<asrkit_manifest, asrkit_manifest_destroy>>;
using Lm = std::unique_ptr<asrkit_lm, Deleter<asrkit_lm, asrkit_lm_destroy>>;
using Emissions = std::unique_ptr<asrkit_emissions, Deleter<asrkit_emissions, asrkit_emissions_destroy>>;
using NBest = std::unique_ptr<asrkit_nbest, Deleter<asrkit_nbest, asrkit_nbest_destroy>>;
using Report = std::unique_ptr<asrkit_report, Deleter<asrkit_report, asrkit_report_destroy>>;

std::string take(char* s) {
  std::string out(s ? s : "");
  asrkit_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) input_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw CliError(kExitInternal, "cannot write '" + path.string() + "'");
}

// FNV-1a; identifies input file contents in provenance records.
std::string content_digest(const std::string& data) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Provenance sidecar written next to an output as <output>.json. Contains no
// timestamps so that reruns are byte-identical.
class Provenance {
 public:
  explicit Provenance(std::string command) {
    doc_["tool"] = "asrkit";
    doc_["version"] = asrkit_version();
    doc_["command"] = std::move(command);
    doc_["inputs"] = json::array();
    doc_["params"] = json::object();
  }
  void input(const std::string& path, const std::string& content) {
    doc_["inputs"].push_back({{"path", path}, {"fnv1a64", content_digest(content)}});
  }
  json& params() { return doc_["params"]; }
  void write_for(const fs::path& output, const json& extra = json::object()) const {
    json doc = doc_;
    doc["output"] = output.filename().string();
    for (auto it = extra.begin(); it != extra.end(); ++it) doc[it.key()] = it.value();
    write_file(output.string() + ".json", doc.dump(2) + "\n");
  }

 private:
  json doc_;
};

Manifest load_manifest(const std::string& path, Provenance* prov) {
  const std::string text = read_file(path);
  if (prov) prov->input(path, text);
  asrkit_manifest* m = nullptr;
  check(asrkit_manifest_parse(text.data(), text.size(), &m), path);
  Manifest out(m);
  asrkit_manifest_normalize(out.get());
  return out;
}

AlphabetPtr load_vocab(const std::string& path, Provenance& prov) {
  const std::string text = read_file(path);
  prov.input(path, text);
  asrkit_alphabet* a = nullptr;
  check(asrkit_alphabet_parse_vocab(text.data(), text.size(), &a), path);
  return AlphabetPtr(a);
}

std::vector<std::string> split_tab(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return fields;
}

// Two-column `key<TAB>value` file, input order kept. Blank lines skipped.
std::vector<std::pair<std::string, std::string>> read_pairs(const std::string& path, const std::string& content) {
  std::vector<std::pair<std::string, std::string>> out;
  std::istringstream in(content);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto f = split_tab(line);
    if (f.size() == 1) f.emplace_back();  // empty hypothesis
    if (f.size() != 2 || f[0].empty()) {
      input_error(path + ": line " + std::to_string(number) + ": expected id<TAB>value");
    }
    out.emplace_back(std::move(f[0]), std::move(f[1]));
  }
  return out;
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

// ---- prepare ----------------------------------------------------------------

struct PrepareOptions {
  std::vector<std::string> manifests;
  std::string out_dir = ".";
  double test_fraction = 0.10;
  double val_fraction = 0.10;
  std::uint64_t seed = 0;
  bool by_speaker = false;
};

void run_prepare(const PrepareOptions& opt) {
  Provenance prov("prepare");
  Manifest all;
  for (const auto& path : opt.manifests) {
    Manifest m = load_manifest(path, &prov);
    if (!all) {
      all = std::move(m);
    } else {
      check(asrkit_manifest_append(all.get(), m.get()), path);
    }
  }

  asrkit_split_spec spec;
  asrkit_split_spec_default(&spec);
  spec.test_fraction = opt.test_fraction;
  spec.val_fraction_of_train = opt.val_fraction;
  spec.seed = opt.seed;
  spec.by_speaker = opt.by_speaker ? 1 : 0;
  asrkit_manifest *train = nullptr, *val = nullptr, *test = nullptr;
  check(asrkit_manifest_split(all.get(), &spec, &train, &val, &test), "split");
  Manifest train_m(train), val_m(val), test_m(test);

  // The alphabet covers every split so decoding never meets an unseen letter.
  Strings texts(asrkit_strings_create());
  for (std::size_t i = 0; i < asrkit_manifest_size(all.get()); ++i) {
    const char* t = asrkit_manifest_normalized_text(all.get(), i);
    check(asrkit_strings_push(texts.get(), t, std::strlen(t)), "");
  }
  asrkit_alphabet* a = nullptr;
  check(asrkit_alphabet_build(texts.get(), &a), "vocabulary");
  AlphabetPtr alphabet(a);

  prov.params() = {{"seed", opt.seed},
                   {"test_fraction", opt.test_fraction},
                   {"val_fraction_of_train", opt.val_fraction},
                   {"by_speaker", opt.by_speaker}};
  const fs::path dir(opt.out_dir);
  const std::pair<const char*, asrkit_manifest*> parts[] = {
      {"train.tsv", train_m.get()}, {"val.tsv", val_m.get()}, {"test.tsv", test_m.get()}};
  for (const auto& [name, m] : parts) {
    char* text = nullptr;
    check(asrkit_manifest_format(m, 1, &text), name);
    write_file(dir / name, take(text));
    prov.write_for(dir / name, {{"records", asrkit_manifest_size(m)}});
  }
  char* vocab = nullptr;
  check(asrkit_alphabet_vocab_text(alphabet.get(), &vocab), "vocabulary");
  write_file(dir / "vocab.txt", take(vocab));
  prov.write_for(dir / "vocab.txt", {{"symbols", asrkit_alphabet_size(alphabet.get())}});

  std::cout << "train " << asrkit_manifest_size(train_m.get()) << ", val " << asrkit_manifest_size(val_m.get())
            << ", test " << asrkit_manifest_size(test_m.get()) << ", vocabulary "
            << asrkit_alphabet_size(alphabet.get()) << " symbols\n";
}

// ---- train-lm ---------------------------------------------------------------

struct TrainOptions {
  std::vector<std::string> sources;
  std::vector<double> fractions;
  std::vector<int> orders{3};
  std::string out_dir = ".";
  std::uint64_t seed = 0;
  bool strict = false;
  std::vector<double> discounts;
};

// A .tsv source is read as a manifest (its transcripts); anything else as
// one sentence per line. Sentences are normalized and empty ones dropped.
Strings load_sentences(const std::string& path, Provenance& prov) {
  Strings out(asrkit_strings_create());
  if (fs::path(path).extension() == ".tsv") {
    Manifest m = load_manifest(path, &prov);
    for (std::size_t i = 0; i < asrkit_manifest_size(m.get()); ++i) {
      const char* t = asrkit_manifest_normalized_text(m.get(), i);
      if (*t) check(asrkit_strings_push(out.get(), t, std::strlen(t)), path);
    }
    return out;
  }
  const std::string text = read_file(path);
  prov.input(path, text);
  asrkit_strings* lines = nullptr;
  check(asrkit_strings_from_lines(text.data(), text.size(), &lines), path);
  Strings raw(lines);
  for (std::size_t i = 0; i < asrkit_strings_size(raw.get()); ++i) {
    const char* line = asrkit_strings_get(raw.get(), i);
    char* norm = nullptr;
    check(asrkit_normalize_text(line, std::strlen(line), &norm), path);
    const std::string s = take(norm);
    if (!s.empty()) check(asrkit_strings_push(out.get(), s.data(), s.size()), path);
  }
  return out;
}

void run_train_lm(TrainOptions opt) {
  if (opt.fractions.size() > opt.sources.size()) input_error("more --fraction values than --source files");
  opt.fractions.resize(opt.sources.size(), 1.0);
  if (opt.discounts.size() % 3 != 0) input_error("--discounts takes d1,d2,d3 triples");

  Provenance prov("train-lm");
  std::vector<Strings> sources;
  std::vector<const asrkit_strings*> views;
  for (const auto& path : opt.sources) {
    sources.push_back(load_sentences(path, prov));
    views.push_back(sources.back().get());
  }
  asrkit_strings* corpus_raw = nullptr;
  check(asrkit_lm_corpus_build(views.data(), opt.fractions.data(), views.size(), opt.seed, &corpus_raw),
        "corpus");
  Strings corpus(corpus_raw);
  for (std::size_t i = 0; i < sources.size(); ++i) {
    std::cout << opt.sources[i] << ": " << asrkit_strings_size(sources[i].get()) << " sentences, fraction "
              << opt.fractions[i] << "\n";
  }
  std::cout << "LM corpus: " << asrkit_strings_size(corpus.get()) << " sentences sampled\n";

  asrkit_discount_config config{opt.discounts.size() / 3, opt.discounts.data(), opt.strict ? 1 : 0};
  prov.params() = {{"seed", opt.seed},
                   {"fractions", opt.fractions},
                   {"strict", opt.strict},
                   {"discounts", opt.discounts},
                   {"corpus_sentences", asrkit_strings_size(corpus.get())}};

  const fs::path dir(opt.out_dir);
  for (int order : opt.orders) {
    asrkit_lm* lm_raw = nullptr;
    check(asrkit_lm_train(corpus.get(), order, &config, &lm_raw), std::to_string(order) + "-gram");
    Lm lm(lm_raw);
    for (std::size_t w = 0; w < asrkit_lm_num_warnings(lm.get()); ++w) {
      std::cerr << "warning: " << order << "-gram: " << asrkit_lm_warning(lm.get(), w) << "\n";
    }
    char* arpa_raw = nullptr;
    check(asrkit_lm_write_arpa(lm.get(), &arpa_raw), "write ARPA");
    const std::string arpa = take(arpa_raw);

    // Read-back validation: the file must parse and agree on every count.
    asrkit_lm* back_raw = nullptr;
    check(asrkit_lm_read_arpa(arpa.data(), arpa.size(), &back_raw), "ARPA read-back");
    Lm back(back_raw);
    json counts = json::array();
    for (int k = 1; k <= order; ++k) {
      if (asrkit_lm_ngram_count(back.get(), k) != asrkit_lm_ngram_count(lm.get(), k)) {
        throw CliError(kExitInternal, "ARPA read-back count mismatch at order " + std::to_string(k));
      }
      counts.push_back(asrkit_lm_ngram_count(lm.get(), k));
    }

    const fs::path out = dir / ("lm." + std::to_string(order) + "gram.arpa");
    write_file(out, arpa);
    json extra = {{"order", order}, {"ngram_counts", counts}};
    if (asrkit_lm_num_warnings(lm.get()) > 0) {
      json warnings = json::array();
      for (std::size_t w = 0; w < asrkit_lm_num_warnings(lm.get()); ++w) {
        warnings.push_back(asrkit_lm_warning(lm.get(), w));
      }
      extra["warnings"] = warnings;
    }
    prov.write_for(out, extra);
    std::cout << "wrote " << out.string() << "\n";
  }
}

// ---- synth --------------------------------------------------------------------

struct SynthOptions {
  std::string manifest;
  std::string vocab;
  std::string out_dir = ".";
  int frames_per_symbol = 1;
  double blank_prob = 0.0;
  double noise = 0.0;
  std::uint64_t seed = 0;
};

void run_synth(const SynthOptions& opt) {
  Provenance prov("synth");
  Manifest m = load_manifest(opt.manifest, &prov);
  AlphabetPtr alphabet = load_vocab(opt.vocab, prov);
  const fs::path dir(opt.out_dir);
  fs::create_directories(dir);

  std::string list;
  for (std::size_t i = 0; i < asrkit_manifest_size(m.get()); ++i) {
    const std::string id = asrkit_manifest_id(m.get(), i);
    if (id.find('/') != std::string::npos || id == "." || id == "..") {
      input_error("utterance id '" + id + "' is not usable as a file name");
    }
    asrkit_synth_params p;
    asrkit_synth_params_default(&p);
    p.frames_per_symbol = opt.frames_per_symbol;
    p.blank_prob = opt.blank_prob;
    p.noise_epsilon = opt.noise;
    p.seed = asrkit_mix_seed(opt.seed, i);
    asrkit_emissions* e = nullptr;
    check(asrkit_emissions_synthesize(asrkit_manifest_normalized_text(m.get(), i), alphabet.get(), &p, &e),
          "utterance " + id);
    Emissions em(e);
    char* text = nullptr;
    check(asrkit_emissions_write(em.get(), &text), "utterance " + id);
    const std::string name = id + ".ctcemit";
    write_file(dir / name, take(text));
    list += id + "\t" + name + "\n";
  }
  const fs::path out = dir / "emissions.tsv";
  write_file(out, list);
  prov.params() = {{"seed", opt.seed},
                   {"frames_per_symbol", opt.frames_per_symbol},
                   {"blank_prob", opt.blank_prob},
                   {"noise_epsilon", opt.noise}};
  prov.write_for(out, {{"utterances", asrkit_manifest_size(m.get())}});
  std::cout << "wrote " << asrkit_manifest_size(m.get()) << " emission files to " << dir.string() << "\n";
}

// ---- decode -------------------------------------------------------------------

struct DecodeOptions {
  std::string emissions;
  std::string vocab;
  std::string out;
  std::string lm;
  std::string nbest_json;
  int beam = 50;
  double alpha = 0.5;
  double beta = 1.0;
  double prune_floor = -9.2;
  int nbest = 1;
  int jobs = 1;
  bool greedy = false;
};

void run_decode(const DecodeOptions& opt) {
  if (opt.greedy && !opt.lm.empty()) input_error("--greedy cannot use --lm");
  Provenance prov("decode");
  AlphabetPtr alphabet = load_vocab(opt.vocab, prov);
  const std::string list_text = read_file(opt.emissions);
  prov.input(opt.emissions, list_text);
  const auto list = read_pairs(opt.emissions, list_text);
  const fs::path base = fs::path(opt.emissions).parent_path();

  std::vector<Emissions> matrices;
  for (const auto& [id, rel] : list) {
    const fs::path path = fs::path(rel).is_absolute() ? fs::path(rel) : base / rel;
    const std::string text = read_file(path.string());
    asrkit_emissions* e = nullptr;
    check(asrkit_emissions_read(text.data(), text.size(), &e), path.string());
    matrices.emplace_back(e);
    if (asrkit_emissions_vocab_size(e) != asrkit_alphabet_size(alphabet.get())) {
      input_error(path.string() + ": emission columns do not match the vocabulary");
    }
  }

  Lm lm;
  if (!opt.lm.empty()) {
    const std::string arpa = read_file(opt.lm);
    prov.input(opt.lm, arpa);
    asrkit_lm* raw = nullptr;
    check(asrkit_lm_read_arpa(arpa.data(), arpa.size(), &raw), opt.lm);
    lm.reset(raw);
  }

  std::vector<std::string> best(list.size());
  json nbest = json::array();
  if (opt.greedy) {
    for (std::size_t i = 0; i < list.size(); ++i) {
      char* text = nullptr;
      check(asrkit_decode_greedy(matrices[i].get(), alphabet.get(), &text), list[i].first);
      best[i] = take(text);
    }
  } else {
    asrkit_decode_params p;
    asrkit_decode_params_default(&p);
    p.beam_width = opt.beam;
    p.alpha = opt.alpha;
    p.beta = opt.beta;
    p.prune_log_floor = opt.prune_floor;
    p.lm = lm.get();
    std::vector<const asrkit_emissions*> views;
    for (const auto& m : matrices) views.push_back(m.get());
    std::vector<asrkit_nbest*> raw(list.size(), nullptr);
    check(asrkit_decode_beam_batch(views.data(), views.size(), alphabet.get(), &p, opt.jobs, raw.data()),
          "decode");
    std::vector<NBest> results(raw.begin(), raw.end());
    for (std::size_t i = 0; i < list.size(); ++i) {
      const asrkit_nbest* nb = results[i].get();
      best[i] = asrkit_nbest_size(nb) > 0 ? asrkit_nbest_text(nb, 0) : "";
      if (opt.nbest_json.empty()) continue;
      json hyps = json::array();
      const std::size_t n = std::min<std::size_t>(asrkit_nbest_size(nb), static_cast<std::size_t>(opt.nbest));
      for (std::size_t k = 0; k < n; ++k) {
        hyps.push_back({{"text", asrkit_nbest_text(nb, k)},
                        {"score", asrkit_nbest_fused_score(nb, k)},
                        {"acoustic", asrkit_nbest_acoustic_score(nb, k)},
                        {"lm", asrkit_nbest_lm_score(nb, k)}});
      }
      nbest.push_back({{"utterance_id", list[i].first}, {"hypotheses", hyps}});
    }
    prov.params() = {{"beam", opt.beam},
                     {"alpha", opt.alpha},
                     {"beta", opt.beta},
                     {"prune_log_floor", opt.prune_floor},
                     {"lm", opt.lm.empty() ? json(nullptr) : json(opt.lm)}};
  }
  if (opt.greedy) prov.params() = {{"greedy", true}};

  std::string tsv;
  for (std::size_t i = 0; i < list.size(); ++i) tsv += list[i].first + "\t" + best[i] + "\n";
  write_file(opt.out, tsv);
  prov.write_for(opt.out, {{"utterances", list.size()}});
  if (!opt.nbest_json.empty()) {
    write_file(opt.nbest_json, nbest.dump(2) + "\n");
    prov.write_for(opt.nbest_json);
  }
  std::cout << "decoded " << list.size() << " utterances\n";
}

// ---- eval ---------------------------------------------------------------------

struct EvalOptions {
  std::string hyps;
  std::string reference;
  std::string out;
  std::string summary;
  std::string model = "model";
  std::string lm = "none";
  std::string dataset = "test";
  int jobs = 1;
};

int parse_lm_tag(const std::string& tag) {
  if (tag == "-" || tag == "none" || tag == "no-lm" || tag == "0") return 0;
  std::string digits = tag;
  if (digits.size() > 5 && digits.ends_with("-gram")) digits.resize(digits.size() - 5);
  try {
    std::size_t used = 0;
    const int order = std::stoi(digits, &used);
    if (used == digits.size() && order >= 1) return order;
  } catch (const std::exception&) {
  }
  input_error("invalid --lm tag '" + tag + "' (use none or <n>-gram)");
}

void run_eval(const EvalOptions& opt) {
  Provenance prov("eval");
  Manifest ref = load_manifest(opt.reference, &prov);
  const std::string hyp_text = read_file(opt.hyps);
  prov.input(opt.hyps, hyp_text);
  const auto hyps = read_pairs(opt.hyps, hyp_text);
  const int lm_order = parse_lm_tag(opt.lm);

  std::vector<std::size_t> ref_index(hyps.size());
  {
    std::unordered_map<std::string, std::size_t> by_id;
    for (std::size_t i = 0; i < asrkit_manifest_size(ref.get()); ++i) by_id[asrkit_manifest_id(ref.get(), i)] = i;
    std::unordered_map<std::string, bool> seen;
    for (std::size_t i = 0; i < hyps.size(); ++i) {
      auto it = by_id.find(hyps[i].first);
      if (it == by_id.end()) input_error("no reference for utterance '" + hyps[i].first + "'");
      if (seen[hyps[i].first]) input_error("duplicate hypothesis for utterance '" + hyps[i].first + "'");
      seen[hyps[i].first] = true;
      ref_index[i] = it->second;
    }
  }
  if (hyps.empty()) input_error("empty evaluation set");

  // Workers fill slots by index so output follows input order.
  std::vector<asrkit_wer_breakdown> results(hyps.size());
  std::vector<std::string> errors(hyps.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t i; (i = cursor.fetch_add(1)) < hyps.size();) {
      char* norm = nullptr;
      const std::string& h = hyps[i].second;
      if (asrkit_normalize_text(h.data(), h.size(), &norm) != ASRKIT_OK) {
        errors[i] = asrkit_last_error();
        continue;
      }
      const std::string hyp = take(norm);
      if (asrkit_wer(asrkit_manifest_normalized_text(ref.get(), ref_index[i]), hyp.c_str(), &results[i]) !=
          ASRKIT_OK) {
        errors[i] = asrkit_last_error();
      }
    }
  };
  {
    const int jobs = std::max(1, opt.jobs);
    std::vector<std::jthread> pool;
    for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
    worker();
  }
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    if (!errors[i].empty()) input_error("utterance '" + hyps[i].first + "': " + errors[i]);
  }

  asrkit_wer_breakdown total{};
  std::string tsv;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    const auto& r = results[i];
    total.substitutions += r.substitutions;
    total.deletions += r.deletions;
    total.insertions += r.insertions;
    total.reference_words += r.reference_words;
    tsv += hyps[i].first + "\t" + fixed(r.wer_percent, 4) + "\t" + std::to_string(r.substitutions) + "\t" +
           std::to_string(r.deletions) + "\t" + std::to_string(r.insertions) + "\t" +
           std::to_string(r.reference_words) + "\n";
  }
  const double corpus_wer = 100.0 *
                            static_cast<double>(total.substitutions + total.deletions + total.insertions) /
                            static_cast<double>(total.reference_words);

  prov.params() = {{"model", opt.model}, {"lm", opt.lm}, {"dataset", opt.dataset}};
  const json extra = {{"utterances", hyps.size()}, {"corpus_wer", corpus_wer}};
  if (!opt.out.empty()) {
    write_file(opt.out, tsv);
    prov.write_for(opt.out, extra);
  }
  if (!opt.summary.empty()) {
    Report report(asrkit_report_create());
    check(asrkit_report_add(report.get(), opt.model.c_str(), lm_order, opt.dataset.c_str(), corpus_wer), "summary");
    char* csv = nullptr;
    check(asrkit_report_render_csv(report.get(), &csv), "summary");
    write_file(opt.summary, take(csv));
    prov.write_for(opt.summary, extra);
  }
  std::cout << "corpus WER " << fixed(corpus_wer, 2) << "% over " << hyps.size() << " utterances ("
            << total.reference_words << " words; S=" << total.substitutions << " D=" << total.deletions
            << " I=" << total.insertions << ")\n";
}

// ---- report -------------------------------------------------------------------

struct ReportOptions {
  std::vector<std::string> inputs;
  std::string format = "text";
  std::string out;
};

void run_report(const ReportOptions& opt) {
  Provenance prov("report");
  Report report(asrkit_report_create());
  for (const auto& path : opt.inputs) {
    const std::string csv = read_file(path);
    prov.input(path, csv);
    check(asrkit_report_add_csv(report.get(), csv.data(), csv.size()), path);
  }
  if (asrkit_report_num_rows(report.get()) == 0) input_error("no WER cells in the report inputs");
  char* text = nullptr;
  check(opt.format == "csv" ? asrkit_report_render_csv(report.get(), &text)
                            : asrkit_report_render_text(report.get(), &text),
        "report");
  const std::string rendered = take(text);
  if (opt.out.empty()) {
    std::cout << rendered;
  } else {
    write_file(opt.out, rendered);
    prov.params() = {{"format", opt.format}};
    prov.write_for(opt.out);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"asrkit: transcript preparation, n-gram LMs, CTC decoding and WER evaluation"};
  app.set_version_flag("--version", std::string(asrkit_version()));
  app.set_config("--config", "", "key=value file; keys are option names, prefixed `<subcommand>.`");
  app.require_subcommand(1);

  PrepareOptions prep;
  auto* prepare = app.add_subcommand("prepare", "Normalize and split manifests; write the vocabulary");
  prepare->add_option("--manifest,-m", prep.manifests, "utterance_id<TAB>speaker_id<TAB>text file (repeatable)")
      ->required()
      ->check(CLI::ExistingFile);
  prepare->add_option("--out-dir,-o", prep.out_dir, "Output directory")->capture_default_str();
  prepare->add_option("--test-fraction", prep.test_fraction, "Share held out for test")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  prepare->add_option("--val-fraction", prep.val_fraction, "Share of the remainder held out for validation")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  prepare->add_option("--seed", prep.seed, "Shuffle seed")->capture_default_str();
  prepare->add_flag("--by-speaker", prep.by_speaker, "Keep each speaker within one partition");

  TrainOptions train;
  auto* train_lm = app.add_subcommand("train-lm", "Train modified Kneser-Ney n-gram LMs and write ARPA files");
  train_lm->add_option("--source,-s", train.sources, "Sentence file, or a .tsv manifest (repeatable)")
      ->required()
      ->check(CLI::ExistingFile);
  train_lm->add_option("--fraction,-f", train.fractions, "Sampling fraction per --source, in order (default 1)")
      ->check(CLI::Range(0.0, 1.0));
  train_lm->add_option("--order,-n", train.orders, "n-gram order, 2..6 (repeatable)")
      ->capture_default_str()
      ->check(CLI::Range(2, 6));
  train_lm->add_option("--out-dir,-o", train.out_dir, "Output directory")->capture_default_str();
  train_lm->add_option("--seed", train.seed, "Corpus sampling seed")->capture_default_str();
  train_lm->add_flag("--strict", train.strict, "Fail instead of falling back when discounts cannot be estimated");
  train_lm->add_option("--discounts", train.discounts, "Fixed D1,D2,D3+ (one triple, or one per order)")
      ->delimiter(',');

  SynthOptions syn;
  auto* synth = app.add_subcommand("synth", "Synthesize CTC emission files from transcripts");
  synth->add_option("--manifest,-m", syn.manifest, "Manifest to synthesize")->required()->check(CLI::ExistingFile);
  synth->add_option("--vocab,-v", syn.vocab, "Vocabulary file")->required()->check(CLI::ExistingFile);
  synth->add_option("--out-dir,-o", syn.out_dir, "Output directory")->capture_default_str();
  synth->add_option("--frames-per-symbol", syn.frames_per_symbol)->capture_default_str()->check(CLI::PositiveNumber);
  synth->add_option("--blank-prob", syn.blank_prob, "Chance of an extra blank frame")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  synth->add_option("--noise", syn.noise, "Frame noise epsilon in [0, 0.5)")->capture_default_str();
  synth->add_option("--seed", syn.seed, "Base seed; each utterance derives its own")->capture_default_str();

  DecodeOptions dec;
  auto* decode = app.add_subcommand("decode", "CTC decoding with optional n-gram shallow fusion");
  decode->add_option("--emissions,-e", dec.emissions, "utterance_id<TAB>path list (paths relative to the list)")
      ->required()
      ->check(CLI::ExistingFile);
  decode->add_option("--vocab,-v", dec.vocab, "Vocabulary file")->required()->check(CLI::ExistingFile);
  decode->add_option("--out,-o", dec.out, "Hypothesis TSV")->required();
  decode->add_option("--lm", dec.lm, "ARPA language model")->check(CLI::ExistingFile);
  decode->add_option("--alpha", dec.alpha, "LM weight")->capture_default_str();
  decode->add_option("--beta", dec.beta, "Word insertion bonus")->capture_default_str();
  decode->add_option("--beam", dec.beam, "Beam width")->capture_default_str()->check(CLI::PositiveNumber);
  decode->add_option("--prune-floor", dec.prune_floor, "Per-frame pruning threshold (natural log)")
      ->capture_default_str();
  decode->add_option("--nbest", dec.nbest, "Hypotheses per utterance in --nbest-json")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  decode->add_option("--nbest-json", dec.nbest_json, "Write N-best lists with scores");
  decode->add_option("--jobs,-j", dec.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  decode->add_flag("--greedy", dec.greedy, "Best-path decoding instead of beam search");

  EvalOptions ev;
  auto* eval = app.add_subcommand("eval", "Word error rate of hypotheses against a reference manifest");
  eval->add_option("--hyps", ev.hyps, "Hypothesis TSV from decode")->required()->check(CLI::ExistingFile);
  eval->add_option("--reference,-r", ev.reference, "Reference manifest")->required()->check(CLI::ExistingFile);
  eval->add_option("--out,-o", ev.out, "Per-utterance TSV");
  eval->add_option("--summary", ev.summary, "Report CSV cell for this run");
  eval->add_option("--model", ev.model, "Model tag for --summary")->capture_default_str();
  eval->add_option("--lm", ev.lm, "LM tag for --summary: none or <n>-gram")->capture_default_str();
  eval->add_option("--dataset", ev.dataset, "Dataset tag for --summary")->capture_default_str();
  eval->add_option("--jobs,-j", ev.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);

  ReportOptions rep;
  auto* report = app.add_subcommand("report", "Render a model x LM x dataset WER grid with averages");
  report->add_option("inputs", rep.inputs, "model,lm,dataset,wer CSV files")->required()->check(CLI::ExistingFile);
  report->add_option("--format", rep.format, "text or csv")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "csv"}));
  report->add_option("--out,-o", rep.out, "Write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*prepare) run_prepare(prep);
    if (*train_lm) run_train_lm(train);
    if (*synth) run_synth(syn);
    if (*decode) run_decode(dec);
    if (*eval) run_eval(ev);
    if (*report) run_report(rep);
  } catch (const CliError& e) {
    std::cerr << "asrkit: " << e.what() << "\n";
    return e.exit_code;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "asrkit: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "asrkit: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}

// Copyright (C) 2026 asrkit contributors
// SPDX-License-Identifier: Apache-2.0

#include "asrkit/ctcdecode.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>
#include <unordered_map>

#include "asrkit/error.hpp"

namespace asrkit {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_add(double a, double b) {
  if (a == kNegInf) return b;
  if (b == kNegInf) return a;
  return a > b ? a + std::log1p(std::exp(b - a)) : b + std::log1p(std::exp(a - b));
}

// Prefixes live in a trie so that a prefix is identified by its node id and
// extending it is O(1).
class PrefixTrie {
 public:
  struct Node {
    int parent = -1;
    SymbolId symbol = -1;
    int depth = 0;
    double lm_score = 0.0;
    std::array<WordId, kMaxOrder> history{};
    int history_len = 0;
  };

  explicit PrefixTrie(std::size_t vocab) : vocab_(vocab) {
    nodes_.emplace_back();
    children_.reserve(4096);
  }

  const Node& operator[](int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  Node& operator[](int id) { return nodes_[static_cast<std::size_t>(id)]; }
  std::size_t size() const { return nodes_.size(); }

  // Returns the child id and whether it was created by this call.
  std::pair<int, bool> child(int parent, SymbolId symbol) {
    const std::uint64_t key = static_cast<std::uint64_t>(parent) * vocab_ + static_cast<std::uint64_t>(symbol);
    auto [it, inserted] = children_.try_emplace(key, static_cast<int>(nodes_.size()));
    if (inserted) {
      Node n;
      n.parent = parent;
      n.symbol = symbol;
      n.depth = nodes_[static_cast<std::size_t>(parent)].depth + 1;
      nodes_.push_back(n);
    }
    return {it->second, inserted};
  }

  std::vector<SymbolId> label(int id) const {
    std::vector<SymbolId> out(static_cast<std::size_t>(nodes_[static_cast<std::size_t>(id)].depth));
    for (int n = id; n > 0; n = nodes_[static_cast<std::size_t>(n)].parent) {
      out[static_cast<std::size_t>(nodes_[static_cast<std::size_t>(n)].depth - 1)] =
          nodes_[static_cast<std::size_t>(n)].symbol;
    }
    return out;
  }

  // Lexicographic comparison of the labels of two nodes.
  bool label_less(int a, int b) const {
    if (a == b) return false;
    return label(a) < label(b);
  }

 private:
  std::size_t vocab_;
  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, int> children_;
};

struct Beam {
  int node = 0;
  double log_blank = kNegInf;
  double log_nonblank = kNegInf;
  double score = kNegInf;

  double total() const { return log_add(log_blank, log_nonblank); }
};

// Word-level shallow fusion state transitions.
class Fusion {
 public:
  Fusion(const DecodeParams& params, const Alphabet& alphabet)
      : lm_(params.lm), alphabet_(alphabet), alpha_(params.alpha), beta_(params.beta) {}

  bool enabled() const { return lm_ != nullptr; }

  void init_root(PrefixTrie::Node& root) const {
    if (!lm_) return;
    root.history_len = lm_->order() - 1;
    std::fill_n(root.history.begin(), root.history_len, Vocabulary::kBos);
  }

  // Characters between the last delimiter above `node` and `node` itself.
  // Returns false when the word contains an unknown symbol.
  bool trailing_word(const PrefixTrie& trie, int node, std::string& word) const {
    word.clear();
    bool known = true;
    for (int n = node; n > 0 && trie[n].symbol != alphabet_.delimiter_id(); n = trie[n].parent) {
      const SymbolId s = trie[n].symbol;
      if (alphabet_.is_letter(s)) {
        word.push_back(alphabet_.to_char(s));
      } else {
        known = false;
        word.push_back('?');
      }
    }
    std::reverse(word.begin(), word.end());
    return known;
  }

  // LM term for completing the word that ends at `node`; 0 for an empty word.
  // When `advance` is set the word is appended to `state`'s history.
  double complete_word(const PrefixTrie& trie, int node, PrefixTrie::Node& state, bool advance) const {
    const bool known = trailing_word(trie, node, scratch_);
    if (scratch_.empty()) return 0.0;
    const WordId id = known ? lm_->vocab().find(scratch_) : Vocabulary::kUnk;
    const double log10p = lm_->score_word(
        std::span<const WordId>(state.history.data(), static_cast<std::size_t>(state.history_len)), id);
    if (advance) {
      const int keep = lm_->order() - 1;
      if (keep > 0) {
        if (state.history_len == keep) {
          std::copy(state.history.begin() + 1, state.history.begin() + keep, state.history.begin());
          state.history[static_cast<std::size_t>(keep - 1)] = id;
        } else {
          state.history[static_cast<std::size_t>(state.history_len++)] = id;
        }
      }
    }
    return alpha_ * std::numbers::ln10 * log10p + beta_;
  }

 private:
  const NGramModel* lm_;
  const Alphabet& alphabet_;
  double alpha_;
  double beta_;
  mutable std::string scratch_;
};

}  // namespace

std::vector<SymbolId> collapse(std::span<const SymbolId> path, SymbolId blank) {
  std::vector<SymbolId> out;
  SymbolId prev = -1;
  for (SymbolId s : path) {
    if (s != prev && s != blank) out.push_back(s);
    prev = s;
  }
  return out;
}

std::string label_text(std::span<const SymbolId> label, const Alphabet& alphabet) {
  std::string out;
  bool pending_space = false;
  for (SymbolId s : label) {
    const char c = alphabet.to_char(s);
    if (c == '\0') continue;
    if (c == ' ') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(c);
  }
  return out;
}

std::string greedy_decode(const EmissionMatrix& emissions, const Alphabet& alphabet) {
  emissions.check_alphabet(alphabet);
  std::vector<SymbolId> path(emissions.frames());
  for (std::size_t t = 0; t < emissions.frames(); ++t) {
    const auto row = emissions.row(t);
    path[t] = static_cast<SymbolId>(std::max_element(row.begin(), row.end()) - row.begin());
  }
  return label_text(collapse(path, alphabet.blank_id()), alphabet);
}

std::vector<Hypothesis> beam_search_decode(const EmissionMatrix& emissions, const Alphabet& alphabet,
                                           const DecodeParams& params) {
  emissions.check_alphabet(alphabet);
  if (params.beam_width < 1) throw Error(ErrorCode::kInvalidArgument, "beam_width must be >= 1");
  if (params.lm && params.alpha < 0.0) throw Error(ErrorCode::kInvalidArgument, "alpha must be >= 0");

  const std::size_t V = emissions.vocab_size();
  const SymbolId blank = alphabet.blank_id();
  const SymbolId delimiter = alphabet.delimiter_id();
  const auto width = static_cast<std::size_t>(params.beam_width);

  PrefixTrie trie(V);
  Fusion fusion(params, alphabet);
  fusion.init_root(trie[0]);

  std::vector<Beam> beams{Beam{0, 0.0, kNegInf, 0.0}};
  std::vector<Beam> next;
  std::vector<int> slot;  // node id -> index into `next`, -1 when absent
  std::vector<SymbolId> candidates;

  auto accumulate = [&](int node, double Beam::*field, double value) {
    if (static_cast<std::size_t>(node) >= slot.size()) slot.resize(trie.size() * 2, -1);
    int& s = slot[static_cast<std::size_t>(node)];
    if (s < 0) {
      s = static_cast<int>(next.size());
      next.push_back(Beam{node, kNegInf, kNegInf, kNegInf});
    }
    Beam& b = next[static_cast<std::size_t>(s)];
    b.*field = log_add(b.*field, value);
  };

  auto extend = [&](int parent, SymbolId symbol) {
    auto [id, created] = trie.child(parent, symbol);
    if (created) {
      PrefixTrie::Node& n = trie[id];
      const PrefixTrie::Node& p = trie[parent];
      n.lm_score = p.lm_score;
      n.history = p.history;
      n.history_len = p.history_len;
      if (fusion.enabled() && symbol == delimiter) {
        n.lm_score += fusion.complete_word(trie, parent, n, true);
      }
    }
    return id;
  };

  auto ranked_before = [&](const Beam& a, const Beam& b) {
    if (a.score != b.score) return a.score > b.score;
    return trie.label_less(a.node, b.node);
  };

  for (std::size_t t = 0; t < emissions.frames(); ++t) {
    const auto row = emissions.row(t);
    const double frame_max = *std::max_element(row.begin(), row.end());
    const double threshold = frame_max + params.prune_log_floor;
    candidates.clear();
    for (std::size_t v = 0; v < V; ++v) {
      if (static_cast<SymbolId>(v) != blank && row[v] >= threshold && row[v] != kNegInf) {
        candidates.push_back(static_cast<SymbolId>(v));
      }
    }

    next.clear();
    for (const Beam& b : beams) {
      const double total = b.total();
      const SymbolId last = b.node == 0 ? -1 : trie[b.node].symbol;
      if (row[static_cast<std::size_t>(blank)] != kNegInf) {
        accumulate(b.node, &Beam::log_blank, total + row[static_cast<std::size_t>(blank)]);
      }
      for (SymbolId c : candidates) {
        const double p = row[static_cast<std::size_t>(c)];
        if (c == last) {
          accumulate(b.node, &Beam::log_nonblank, b.log_nonblank + p);
          if (b.log_blank != kNegInf) accumulate(extend(b.node, c), &Beam::log_nonblank, b.log_blank + p);
        } else {
          accumulate(extend(b.node, c), &Beam::log_nonblank, total + p);
        }
      }
    }
    for (const Beam& b : next) slot[static_cast<std::size_t>(b.node)] = -1;

    std::erase_if(next, [](const Beam& b) { return b.total() == kNegInf; });
    for (Beam& b : next) b.score = b.total() + trie[b.node].lm_score;
    if (next.size() > width) {
      std::partial_sort(next.begin(), next.begin() + static_cast<std::ptrdiff_t>(width), next.end(),
                        ranked_before);
      next.resize(width);
    }
    beams.swap(next);
    if (beams.empty()) break;
  }

  std::vector<Hypothesis> out;
  out.reserve(beams.size());
  for (const Beam& b : beams) {
    Hypothesis h;
    h.label = trie.label(b.node);
    h.text = label_text(h.label, alphabet);
    h.acoustic_log_mass = b.total();
    h.lm_score = trie[b.node].lm_score;
    if (fusion.enabled() && b.node != 0 && trie[b.node].symbol != delimiter) {
      PrefixTrie::Node state = trie[b.node];
      h.lm_score += fusion.complete_word(trie, b.node, state, false);
    }
    h.fused_score = h.acoustic_log_mass + h.lm_score;
    out.push_back(std::move(h));
  }
  std::sort(out.begin(), out.end(), [](const Hypothesis& a, const Hypothesis& b) {
    if (a.fused_score != b.fused_score) return a.fused_score > b.fused_score;
    return a.label < b.label;
  });
  return out;
}

std::vector<std::vector<Hypothesis>> decode_batch(std::span<const EmissionMatrix> emissions,
                                                  const Alphabet& alphabet, const DecodeParams& params,
                                                  int jobs) {
  std::vector<std::vector<Hypothesis>> results(emissions.size());
  const std::size_t workers =
      std::min<std::size_t>(emissions.size(), static_cast<std::size_t>(std::max(1, jobs)));
  std::atomic<std::size_t> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= emissions.size()) return;
      try {
        results[i] = beam_search_decode(emissions[i], alphabet, params);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        cursor = emissions.size();
        return;
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

std::map<std::vector<SymbolId>, double> exhaustive_label_masses(const EmissionMatrix& emissions,
                                                                const Alphabet& alphabet) {
  emissions.check_alphabet(alphabet);
  const std::size_t T = emissions.frames();
  const std::size_t V = emissions.vocab_size();
  if (std::pow(static_cast<double>(V), static_cast<double>(T)) > kMaxExhaustivePaths) {
    throw Error(ErrorCode::kInvalidArgument, "exhaustive decode limited to V^T <= 1e7");
  }
  std::vector<double> probs(emissions.values().size());
  std::transform(emissions.values().begin(), emissions.values().end(), probs.begin(),
                 [](double v) { return std::exp(v); });

  const SymbolId blank = alphabet.blank_id();
  std::map<std::vector<SymbolId>, double> masses;
  std::vector<SymbolId> label;

  // Depth-first over frames, collapsing on the fly.
  auto visit = [&](auto&& self, std::size_t t, SymbolId prev, double p) -> void {
    if (t == T) {
      masses[label] += p;
      return;
    }
    for (std::size_t v = 0; v < V; ++v) {
      const double q = p * probs[t * V + v];
      const auto s = static_cast<SymbolId>(v);
      const bool emits = s != blank && s != prev;
      if (emits) label.push_back(s);
      self(self, t + 1, s, q);
      if (emits) label.pop_back();
    }
  };
  visit(visit, 0, -1, 1.0);
  return masses;
}

ExhaustiveResult exhaustive_decode(const EmissionMatrix& emissions, const Alphabet& alphabet) {
  const auto masses = exhaustive_label_masses(emissions, alphabet);
  ExhaustiveResult best;
  bool first = true;
  // std::map iterates labels in ascending order, so strict > keeps the
  // smallest label among equals.
  for (const auto& [label, p] : masses) {
    if (first || p > best.probability) {
      best.label = label;
      best.probability = p;
      first = false;
    }
  }
  best.text = label_text(best.label, alphabet);
  return best;
}

}  // namespace asrkit

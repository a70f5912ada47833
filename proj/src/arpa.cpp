// Copyright (C) 2026 asrkit contributors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <charconv>
#include <optional>

#include "asrkit/error.hpp"
#include "asrkit/ngram.hpp"

namespace asrkit {
namespace {

void append_number(std::string& out, double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

std::optional<double> parse_number(std::string_view s) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  return s;
}

}  // namespace

std::string write_arpa(const NGramModel& model) {
  const auto& vocab = model.vocab();
  std::string out = "\\data\\\n";
  for (int k = 1; k <= model.order(); ++k) {
    out += "ngram " + std::to_string(k) + "=" + std::to_string(model.ngram_count(k)) + "\n";
  }

  for (int k = 1; k <= model.order(); ++k) {
    out += "\n\\" + std::to_string(k) + "-grams:\n";
    using Row = std::pair<std::vector<std::string_view>, NGramModel::Entry>;
    std::vector<Row> rows;
    rows.reserve(model.ngram_count(k));
    for (const auto& [key, entry] : model.table(k)) {
      std::vector<std::string_view> words;
      for (int i = 0; i < k; ++i) words.push_back(vocab.word(key.ids[static_cast<std::size_t>(i)]));
      rows.emplace_back(std::move(words), entry);
    }
    std::sort(rows.begin(), rows.end(),
              [](const Row& a, const Row& b) { return a.first < b.first; });
    for (const auto& [words, entry] : rows) {
      append_number(out, entry.log10_prob);
      out += '\t';
      for (std::size_t i = 0; i < words.size(); ++i) {
        if (i) out += ' ';
        out += words[i];
      }
      if (k < model.order()) {
        out += '\t';
        append_number(out, entry.log10_backoff);
      }
      out += '\n';
    }
  }
  out += "\n\\end\\\n";
  return out;
}

NGramModel read_arpa(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  {
    std::size_t start = 0;
    std::size_t no = 0;
    while (start <= text.size()) {
      std::size_t end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      ++no;
      lines.emplace_back(no, trim(text.substr(start, end - start)));
      if (end == text.size()) break;
      start = end + 1;
    }
  }

  std::size_t i = 0;
  auto skip_blank = [&] {
    while (i < lines.size() && lines[i].second.empty()) ++i;
  };

  // Anything before \data\ is treated as free-form preamble.
  while (i < lines.size() && lines[i].second != "\\data\\") ++i;
  if (i == lines.size()) throw ParseError(0, "missing \\data\\ section");
  ++i;

  std::vector<std::size_t> declared;
  for (; i < lines.size(); ++i) {
    const auto [no, line] = lines[i];
    if (line.empty()) {
      if (!declared.empty()) break;
      continue;
    }
    if (line.rfind("ngram ", 0) != 0) break;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(no, "malformed ngram count line");
    const auto k = parse_number(trim(line.substr(6, eq - 6)));
    const auto n = parse_number(trim(line.substr(eq + 1)));
    if (!k || !n || *n < 0 || *k != static_cast<double>(declared.size() + 1)) {
      throw ParseError(no, "malformed or out-of-order ngram count line");
    }
    declared.push_back(static_cast<std::size_t>(*n));
  }
  if (declared.empty()) throw ParseError(0, "\\data\\ section declares no n-gram counts");
  if (declared.size() > static_cast<std::size_t>(kMaxOrder)) {
    throw ParseError(0, "order " + std::to_string(declared.size()) + " exceeds maximum " +
                            std::to_string(kMaxOrder));
  }

  const int order = static_cast<int>(declared.size());
  NGramModel model(order, Vocabulary{});
  auto& vocab = model.mutable_vocab();

  for (int k = 1; k <= order; ++k) {
    skip_blank();
    const std::string header = "\\" + std::to_string(k) + "-grams:";
    if (i == lines.size() || lines[i].second != header) {
      throw ParseError(i < lines.size() ? lines[i].first : 0, "expected " + header);
    }
    ++i;
    auto& table = model.mutable_table(k);
    std::vector<WordId> ids(static_cast<std::size_t>(k));
    for (; i < lines.size(); ++i) {
      const auto [no, line] = lines[i];
      if (line.empty()) continue;
      if (line.front() == '\\') break;
      const auto fields = split_fields(line);
      const auto want = static_cast<std::size_t>(k) + 1;
      if (fields.size() != want && fields.size() != want + 1) {
        throw ParseError(no, "expected " + std::to_string(k) + " words in " + header + " entry");
      }
      const auto prob = parse_number(fields[0]);
      if (!prob || *prob > 0.0) throw ParseError(no, "invalid log10 probability");
      NGramModel::Entry entry{*prob, 0.0};
      if (fields.size() == want + 1) {
        const auto bo = parse_number(fields.back());
        if (!bo) throw ParseError(no, "invalid log10 backoff");
        if (k == order) throw ParseError(no, "backoff weight at the highest order");
        entry.log10_backoff = *bo;
      }
      for (int w = 0; w < k; ++w) {
        const auto word = fields[static_cast<std::size_t>(w) + 1];
        if (k == 1) {
          ids[0] = vocab.insert(word);
        } else if (!vocab.contains(word)) {
          throw ParseError(no, "word '" + std::string(word) + "' missing from unigrams");
        } else {
          ids[static_cast<std::size_t>(w)] = vocab.find(word);
        }
      }
      if (k > 1 && model.find(std::span<const WordId>(ids.data(), ids.size() - 1)) == nullptr) {
        throw ParseError(no, "context of n-gram is not stored at order " + std::to_string(k - 1));
      }
      if (!table.emplace(NGramKey(ids), entry).second) {
        throw ParseError(no, "duplicate n-gram");
      }
    }
    if (table.size() != declared[static_cast<std::size_t>(k - 1)]) {
      throw ParseError(i < lines.size() ? lines[i].first : lines.back().first,
                       "header declares " + std::to_string(declared[static_cast<std::size_t>(k - 1)]) +
                           " " + std::to_string(k) + "-grams but " + std::to_string(table.size()) +
                           " are listed");
    }
  }
  skip_blank();
  if (i == lines.size() || lines[i].second != "\\end\\") {
    throw ParseError(i < lines.size() ? lines[i].first : 0, "missing \\end\\");
  }
  for (auto w : {kUnkWord, kBosWord, kEosWord}) {
    const WordId id = vocab.find(w);
    if (model.find(std::span<const WordId>(&id, 1)) == nullptr) {
      throw ParseError(0, "unigram " + std::string(w) + " missing");
    }
  }
  return model;
}

}  // namespace asrkit

// Copyright (C) 2026 asrkit contributors
// SPDX-License-Identifier: Apache-2.0

#include "asrkit/emissions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "asrkit/error.hpp"
#include "asrkit/rng.hpp"

namespace asrkit {
namespace {

double log_sum_exp(std::span<const double> xs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : xs) m = std::max(m, x);
  if (std::isinf(m)) return m;
  double s = 0.0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

void check_symbols(const std::vector<std::string>& symbols) {
  // Throws on duplicates, unknown spellings or a missing blank.
  (void)Alphabet::from_symbols(symbols, false);
}

}  // namespace

EmissionMatrix::EmissionMatrix(std::size_t frames, std::vector<std::string> symbols,
                               std::vector<double> log_probs)
    : frames_(frames), symbols_(std::move(symbols)), values_(std::move(log_probs)) {
  if (frames_ < 1) throw Error(ErrorCode::kInvalidArgument, "emission matrix needs at least one frame");
  if (symbols_.size() < 2) throw Error(ErrorCode::kInvalidArgument, "emission matrix needs V >= 2");
  if (values_.size() != frames_ * symbols_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "emission values do not match T x V");
  }
  check_symbols(symbols_);
  for (std::size_t t = 0; t < frames_; ++t) {
    for (double v : row(t)) {
      if (std::isnan(v) || v == std::numeric_limits<double>::infinity()) {
        throw Error(ErrorCode::kInvalidArgument, "row " + std::to_string(t + 1) + " has an invalid value");
      }
    }
    if (std::abs(log_sum_exp(row(t))) > kRowNormTolerance) {
      throw Error(ErrorCode::kInvalidArgument, "row " + std::to_string(t + 1) + " not normalized");
    }
  }
}

EmissionMatrix EmissionMatrix::from_probabilities(std::size_t frames, std::vector<std::string> symbols,
                                                  std::span<const double> probs) {
  std::vector<double> logs(probs.size());
  std::transform(probs.begin(), probs.end(), logs.begin(), [](double p) { return std::log(p); });
  return EmissionMatrix(frames, std::move(symbols), std::move(logs));
}

void EmissionMatrix::check_alphabet(const Alphabet& alphabet) const {
  if (symbols_ != alphabet.symbols()) {
    throw Error(ErrorCode::kInvalidArgument,
                "emission symbols do not match the alphabet (V=" + std::to_string(symbols_.size()) +
                    " vs " + std::to_string(alphabet.size()) + ")");
  }
}

EmissionMatrix read_emissions(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view l = text.substr(start, end - start);
    if (!l.empty() && l.back() == '\r') l.remove_suffix(1);
    lines.push_back(l);
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();

  if (lines.empty() || lines[0] != "CTCEMIT 1") throw ParseError(1, "expected 'CTCEMIT 1' header");
  if (lines.size() < 3) throw ParseError(lines.size() + 1, "truncated emission header");

  const auto dims = split_spaces(lines[1]);
  std::size_t frames = 0;
  std::size_t vocab = 0;
  auto parse_size = [](std::string_view s, std::size_t& out) {
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc() && res.ptr == s.data() + s.size();
  };
  if (dims.size() != 2 || !parse_size(dims[0], frames) || !parse_size(dims[1], vocab)) {
    throw ParseError(2, "expected '<T> <V>'");
  }
  if (frames < 1 || vocab < 2) throw ParseError(2, "need T >= 1 and V >= 2");

  std::vector<std::string> symbols;
  for (auto s : split_spaces(lines[2])) symbols.emplace_back(s);
  if (symbols.size() != vocab) {
    throw ParseError(3, "symbol line has " + std::to_string(symbols.size()) + " entries, header says V=" +
                            std::to_string(vocab));
  }
  try {
    check_symbols(symbols);
  } catch (const Error& e) {
    throw ParseError(3, e.what());
  }

  if (lines.size() - 3 != frames) {
    const std::size_t where = lines.size() - 3 < frames ? lines.size() + 1 : frames + 4;
    throw ParseError(where, "header says T=" + std::to_string(frames) + " but " +
                         std::to_string(lines.size() - 3) + " rows follow");
  }

  std::vector<double> values;
  values.reserve(frames * vocab);
  for (std::size_t t = 0; t < frames; ++t) {
    const std::size_t line_no = t + 4;
    const auto fields = split_spaces(lines[t + 3]);
    if (fields.size() != vocab) {
      throw ParseError(line_no, "row " + std::to_string(t + 1) + " has " + std::to_string(fields.size()) +
                                    " values, expected " + std::to_string(vocab));
    }
    for (auto f : fields) {
      double v = 0.0;
      auto res = std::from_chars(f.data(), f.data() + f.size(), v);
      if (res.ec != std::errc() || res.ptr != f.data() + f.size() || std::isnan(v) ||
          v == std::numeric_limits<double>::infinity()) {
        throw ParseError(line_no, "invalid value '" + std::string(f) + "'");
      }
      values.push_back(v);
    }
    if (std::abs(log_sum_exp(std::span<const double>(values).last(vocab))) > kRowNormTolerance) {
      throw ParseError(line_no, "row " + std::to_string(t + 1) + " not normalized");
    }
  }
  return EmissionMatrix(frames, std::move(symbols), std::move(values));
}

std::string write_emissions(const EmissionMatrix& m) {
  std::string out = "CTCEMIT 1\n";
  out += std::to_string(m.frames()) + " " + std::to_string(m.vocab_size()) + "\n";
  for (std::size_t v = 0; v < m.vocab_size(); ++v) {
    if (v) out += ' ';
    out += m.symbols()[v];
  }
  out += '\n';
  char buf[64];
  for (std::size_t t = 0; t < m.frames(); ++t) {
    const auto row = m.row(t);
    for (std::size_t v = 0; v < row.size(); ++v) {
      if (v) out += ' ';
      auto res = std::to_chars(buf, buf + sizeof(buf), row[v]);
      out.append(buf, res.ptr);
    }
    out += '\n';
  }
  return out;
}

EmissionMatrix synthesize_emissions(std::string_view text, const Alphabet& alphabet,
                                    const SynthParams& params) {
  if (params.frames_per_symbol < 1) {
    throw Error(ErrorCode::kInvalidArgument, "frames_per_symbol must be >= 1");
  }
  if (!(params.noise_epsilon >= 0.0 && params.noise_epsilon < 0.5)) {
    throw Error(ErrorCode::kInvalidArgument, "noise_epsilon must be in [0, 0.5)");
  }
  if (!(params.blank_prob >= 0.0 && params.blank_prob < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "blank_prob must be in [0, 1)");
  }
  const auto ids = alphabet.encode(text);
  for (SymbolId id : ids) {
    if (id == alphabet.unk_id() || id == alphabet.blank_id()) {
      throw Error(ErrorCode::kInvalidArgument, "text is not encodable over the alphabet");
    }
  }

  SeededRng rng(params.seed);
  const SymbolId blank = alphabet.blank_id();
  std::vector<SymbolId> targets;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0 && ids[i] == ids[i - 1]) {
      targets.push_back(blank);
    } else if (params.blank_prob > 0.0 && rng.uniform() < params.blank_prob) {
      targets.push_back(blank);
    }
    targets.insert(targets.end(), static_cast<std::size_t>(params.frames_per_symbol), ids[i]);
  }
  if (params.blank_prob > 0.0 && rng.uniform() < params.blank_prob) targets.push_back(blank);
  if (targets.empty()) targets.push_back(blank);

  const std::size_t V = alphabet.size();
  const double eps = params.noise_epsilon;
  std::vector<SymbolId> competitors;
  std::vector<double> probs(targets.size() * V);
  for (std::size_t t = 0; t < targets.size(); ++t) {
    const SymbolId target = targets[t];
    double* row = probs.data() + t * V;
    if (eps > 0.0 && rng.uniform() < eps) {
      competitors.clear();
      for (std::size_t v = 0; v < V; ++v) {
        const auto id = static_cast<SymbolId>(v);
        if (id != target && id != alphabet.unk_id()) competitors.push_back(id);
      }
      const SymbolId rival = competitors[rng.below(competitors.size())];
      const double rest = V > 2 ? 0.2 * eps / static_cast<double>(V - 2) : 0.0;
      std::fill(row, row + V, rest);
      row[rival] = 1.0 - eps;
      row[target] = V > 2 ? 0.8 * eps : eps;
    } else {
      std::fill(row, row + V, eps / static_cast<double>(V - 1));
      row[target] = 1.0 - eps;
    }
  }
  return EmissionMatrix::from_probabilities(targets.size(), alphabet.symbols(), probs);
}

}  // namespace asrkit

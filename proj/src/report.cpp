// Copyright (C) 2026 asrkit contributors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <charconv>
#include <cstdio>

#include "asrkit/error.hpp"
#include "asrkit/metrics.hpp"

namespace asrkit {
namespace {

std::string fixed2(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::size_t index_of(std::vector<std::string>& names, std::string_view name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it != names.end()) return static_cast<std::size_t>(it - names.begin());
  names.emplace_back(name);
  return names.size() - 1;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  return s;
}

}  // namespace

std::string lm_variant_label(LmVariant lm) {
  return lm == 0 ? "-" : std::to_string(lm) + "-gram";
}

std::optional<LmVariant> parse_lm_variant(std::string_view text) {
  text = trim(text);
  if (text == "-" || text == "none" || text == "no-lm" || text == "0") return 0;
  if (text.ends_with("-gram")) text.remove_suffix(5);
  int order = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), order);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || order < 1) return std::nullopt;
  return order;
}

void EvalReport::add(std::string_view model, LmVariant lm, std::string_view dataset, double wer_percent) {
  if (model.empty() || dataset.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "report cells need a model and a dataset");
  }
  if (lm < 0) throw Error(ErrorCode::kInvalidArgument, "invalid LM variant");
  const std::size_t m = index_of(models_, model);
  const std::size_t d = index_of(datasets_, dataset);
  cells_[{m, lm}][d] = wer_percent;
}

std::vector<EvalReport::Row> EvalReport::rows() const {
  // cells_ is keyed by (model index, lm), which is already the row order.
  std::vector<Row> out;
  for (const auto& [key, cells] : cells_) {
    Row row;
    row.model = models_[key.first];
    row.lm = key.second;
    row.cells.resize(datasets_.size());
    std::vector<double> present;
    for (const auto& [d, v] : cells) {
      row.cells[d] = v;
    }
    for (const auto& c : row.cells) {
      if (c) present.push_back(*c);
    }
    double sum = 0.0;
    for (double v : present) sum += v;
    row.raw_avg = sum / static_cast<double>(present.size());
    row.avg = aggregate(present);
    row.avg_flagged = third_decimal_is_five(row.raw_avg);
    out.push_back(std::move(row));
  }
  return out;
}

std::string EvalReport::render_text() const {
  const auto all = rows();
  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> header{"Model", "KenLM"};
  for (const auto& d : datasets_) header.push_back(d);
  header.emplace_back("AVG");
  grid.push_back(header);

  bool any_flag = false;
  std::string previous_model;
  for (const auto& r : all) {
    std::vector<std::string> line;
    line.push_back(r.model == previous_model ? "" : r.model);
    previous_model = r.model;
    line.push_back(lm_variant_label(r.lm));
    for (const auto& c : r.cells) line.push_back(c ? fixed2(*c) : "-");
    line.push_back(fixed2(r.avg) + (r.avg_flagged ? "*" : ""));
    any_flag = any_flag || r.avg_flagged;
    grid.push_back(std::move(line));
  }

  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : grid) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  std::string out;
  for (const auto& line : grid) {
    std::string text;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) text += "  ";
      // Names left-aligned, numbers right-aligned.
      const std::size_t pad = width[i] - line[i].size();
      if (i < 2) {
        text += line[i] + std::string(pad, ' ');
      } else {
        text += std::string(pad, ' ') + line[i];
      }
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out += text + "\n";
  }
  if (any_flag) {
    out += "* unrounded mean has 5 in the third decimal; shown rounded half-up\n";
    for (const auto& r : all) {
      if (r.avg_flagged) {
        out += "  " + r.model + " " + lm_variant_label(r.lm) + ": mean " + shortest(r.raw_avg) + " -> " +
               fixed2(r.avg) + "\n";
      }
    }
  }
  return out;
}

std::string EvalReport::render_csv() const {
  const auto all = rows();
  std::string out = "model,lm,dataset,wer\n";
  auto lm_name = [](LmVariant lm) { return lm == 0 ? std::string("none") : lm_variant_label(lm); };
  for (const auto& r : all) {
    for (std::size_t d = 0; d < r.cells.size(); ++d) {
      if (r.cells[d]) out += r.model + "," + lm_name(r.lm) + "," + datasets_[d] + "," + shortest(*r.cells[d]) + "\n";
    }
  }
  for (const auto& r : all) {
    out += r.model + "," + lm_name(r.lm) + ",AVG," + fixed2(r.avg) + "\n";
  }
  return out;
}

EvalReport parse_report_csv(std::string_view csv) {
  EvalReport report;
  std::size_t start = 0;
  std::size_t line = 0;
  while (start < csv.size()) {
    std::size_t end = csv.find('\n', start);
    if (end == std::string_view::npos) end = csv.size();
    ++line;
    const std::string_view row = trim(csv.substr(start, end - start));
    start = end + 1;
    if (row.empty() || row.front() == '#') continue;
    if (line == 1 && row.rfind("model,", 0) == 0) continue;

    std::vector<std::string_view> f;
    std::size_t s = 0;
    for (;;) {
      const std::size_t c = row.find(',', s);
      f.push_back(trim(row.substr(s, c == std::string_view::npos ? std::string_view::npos : c - s)));
      if (c == std::string_view::npos) break;
      s = c + 1;
    }
    if (f.size() != 4) throw ParseError(line, "expected model,lm,dataset,wer");
    if (f[2] == "AVG") continue;
    const auto lm = parse_lm_variant(f[1]);
    if (!lm) throw ParseError(line, "invalid LM variant '" + std::string(f[1]) + "'");
    double wer = 0.0;
    auto res = std::from_chars(f[3].data(), f[3].data() + f[3].size(), wer);
    if (res.ec != std::errc() || res.ptr != f[3].data() + f[3].size() || !(wer >= 0.0)) {
      throw ParseError(line, "invalid WER value '" + std::string(f[3]) + "'");
    }
    report.add(f[0], *lm, f[2], wer);
  }
  return report;
}

void merge_report(EvalReport& dst, const EvalReport& src) {
  for (const auto& r : src.rows()) {
    for (std::size_t d = 0; d < r.cells.size(); ++d) {
      if (r.cells[d]) dst.add(r.model, r.lm, src.datasets()[d], *r.cells[d]);
    }
  }
}

}  // namespace asrkit

// Copyright (C) 2026 asrkit contributors
// SPDX-License-Identifier: Apache-2.0

#include "asrkit/textnorm.hpp"

#include <algorithm>
#include <set>

#include "asrkit/error.hpp"

namespace asrkit {
namespace {

constexpr char32_t kInvalid = 0xFFFFFFFF;

// Decodes one UTF-8 sequence starting at text[pos] and advances pos.
// Malformed sequences consume a single byte and yield kInvalid.
char32_t next_code_point(std::string_view text, std::size_t& pos) {
  const auto lead = static_cast<unsigned char>(text[pos]);
  if (lead < 0x80) {
    ++pos;
    return lead;
  }
  int extra = 0;
  char32_t cp = 0;
  if ((lead & 0xE0) == 0xC0) {
    extra = 1;
    cp = lead & 0x1F;
  } else if ((lead & 0xF0) == 0xE0) {
    extra = 2;
    cp = lead & 0x0F;
  } else if ((lead & 0xF8) == 0xF0) {
    extra = 3;
    cp = lead & 0x07;
  } else {
    ++pos;
    return kInvalid;
  }
  if (pos + extra >= text.size()) {
    ++pos;
    return kInvalid;
  }
  for (int i = 1; i <= extra; ++i) {
    const auto cont = static_cast<unsigned char>(text[pos + i]);
    if ((cont & 0xC0) != 0x80) {
      ++pos;
      return kInvalid;
    }
    cp = (cp << 6) | (cont & 0x3F);
  }
  pos += extra + 1;
  return cp;
}

bool is_space(char32_t cp) {
  switch (cp) {
    case U' ': case U'\t': case U'\n': case U'\v': case U'\f': case U'\r':
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

}  // namespace

std::string normalize_text(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  std::size_t pos = 0;
  while (pos < raw.size()) {
    const char32_t cp = next_code_point(raw, pos);
    if (is_space(cp)) {
      pending_space = !out.empty();
      continue;
    }
    char c;
    if (cp >= U'a' && cp <= U'z') {
      c = static_cast<char>(cp);
    } else if (cp >= U'A' && cp <= U'Z') {
      c = static_cast<char>(cp - U'A' + U'a');
    } else {
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

std::vector<std::string> split_words(std::string_view normalized) {
  std::vector<std::string> words;
  std::size_t start = 0;
  while (start < normalized.size()) {
    std::size_t end = normalized.find(' ', start);
    if (end == std::string_view::npos) end = normalized.size();
    if (end > start) words.emplace_back(normalized.substr(start, end - start));
    start = end + 1;
  }
  return words;
}

Alphabet Alphabet::build(std::span<const std::string> transcripts) {
  std::set<char> letters;
  for (const auto& t : transcripts) {
    for (char c : t) {
      if (c >= 'a' && c <= 'z') letters.insert(c);
    }
  }
  if (letters.empty()) throw Error(ErrorCode::kInvalidArgument, "empty alphabet");

  Alphabet a;
  for (char c : letters) a.symbols_.emplace_back(1, c);
  a.symbols_.emplace_back(kDelimiterSymbol);
  a.symbols_.emplace_back(kUnkSymbol);
  a.symbols_.emplace_back(kBlankSymbol);
  a.index_symbols(true);
  return a;
}

Alphabet Alphabet::from_symbols(std::vector<std::string> symbols, bool require_all_specials) {
  Alphabet a;
  a.symbols_ = std::move(symbols);
  a.index_symbols(require_all_specials);
  return a;
}

void Alphabet::index_symbols(bool require_all_specials) {
  by_char_.fill(-1);
  blank_id_ = unk_id_ = delimiter_id_ = -1;
  auto claim = [](SymbolId& slot, SymbolId id, std::string_view name) {
    if (slot != -1) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate symbol " + std::string(name));
    }
    slot = id;
  };
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    const auto id = static_cast<SymbolId>(i);
    const std::string& s = symbols_[i];
    if (s == kBlankSymbol) {
      claim(blank_id_, id, s);
    } else if (s == kUnkSymbol) {
      claim(unk_id_, id, s);
    } else if (s == kDelimiterSymbol) {
      claim(delimiter_id_, id, s);
    } else if (s.size() == 1 && s[0] >= 'a' && s[0] <= 'z') {
      claim(by_char_[static_cast<unsigned char>(s[0])], id, s);
    } else {
      throw Error(ErrorCode::kInvalidArgument, "invalid alphabet symbol '" + s + "'");
    }
  }
  if (blank_id_ < 0) throw Error(ErrorCode::kInvalidArgument, "alphabet must contain <blank>");
  if (require_all_specials) {
    if (unk_id_ < 0 || delimiter_id_ < 0) {
      throw Error(ErrorCode::kInvalidArgument, "alphabet must contain <blank>, <unk> and |");
    }
    if (symbols_.size() < 4) throw Error(ErrorCode::kInvalidArgument, "empty alphabet");
  }
  by_char_[' '] = delimiter_id_;
}

Alphabet Alphabet::parse_vocab(std::string_view text) {
  std::vector<std::string> symbols;
  std::size_t start = 0;
  std::size_t line = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line;
    std::string_view sym = text.substr(start, end - start);
    if (!sym.empty() && sym.back() == '\r') sym.remove_suffix(1);
    if (sym.empty()) throw ParseError(line, "empty vocabulary line");
    symbols.emplace_back(sym);
    start = end + 1;
  }
  try {
    return from_symbols(std::move(symbols));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(0, std::string("vocabulary: ") + e.what());
  }
}

std::string Alphabet::vocab_text() const {
  std::string out;
  for (const auto& s : symbols_) {
    out += s;
    out += '\n';
  }
  return out;
}

const std::string& Alphabet::symbol(SymbolId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= symbols_.size()) {
    throw Error(ErrorCode::kOutOfRange, "symbol index " + std::to_string(id) + " out of range");
  }
  return symbols_[static_cast<std::size_t>(id)];
}

char Alphabet::to_char(SymbolId id) const {
  const std::string& s = symbol(id);
  if (id == delimiter_id_) return ' ';
  if (id == blank_id_ || id == unk_id_) return '\0';
  return s[0];
}

std::vector<SymbolId> Alphabet::encode(std::string_view text) const {
  std::vector<SymbolId> ids;
  ids.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    const char32_t cp = next_code_point(text, pos);
    if (cp < 128 && by_char_[cp] >= 0) {
      ids.push_back(by_char_[cp]);
    } else if (unk_id_ >= 0) {
      ids.push_back(unk_id_);
    } else {
      throw Error(ErrorCode::kInvalidArgument, "text is not encodable over this alphabet");
    }
  }
  return ids;
}

std::string Alphabet::decode(std::span<const SymbolId> ids) const {
  std::string out;
  out.reserve(ids.size());
  for (SymbolId id : ids) {
    const char c = to_char(id);
    if (c != '\0') out.push_back(c);
  }
  return out;
}

}  // namespace asrkit

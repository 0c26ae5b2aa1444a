/*
 * Copyright 2026 The textml Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "textml/textprep.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <unordered_map>

namespace textml {

namespace {

constexpr std::size_t kMinTokenLength = 2;

struct FoldRange {
  char32_t lo;
  char32_t hi;
  const char* ascii;
};

// Standard ASCII foldings for Latin-1 Supplement and Latin Extended-A.
// 0x00D7 (multiplication sign) and 0x00F7 (division sign) sit inside the
// letter blocks and are excluded below.
constexpr std::array<FoldRange, 49> kFoldTable = {{
    {0x00C0, 0x00C5, "a"}, {0x00C6, 0x00C6, "ae"}, {0x00C7, 0x00C7, "c"},
    {0x00C8, 0x00CB, "e"}, {0x00CC, 0x00CF, "i"},  {0x00D0, 0x00D0, "d"},
    {0x00D1, 0x00D1, "n"}, {0x00D2, 0x00D6, "o"},  {0x00D8, 0x00D8, "o"},
    {0x00D9, 0x00DC, "u"}, {0x00DD, 0x00DD, "y"},  {0x00DE, 0x00DE, "th"},
    {0x00DF, 0x00DF, "ss"}, {0x00E0, 0x00E5, "a"}, {0x00E6, 0x00E6, "ae"},
    {0x00E7, 0x00E7, "c"}, {0x00E8, 0x00EB, "e"},  {0x00EC, 0x00EF, "i"},
    {0x00F0, 0x00F0, "d"}, {0x00F1, 0x00F1, "n"},  {0x00F2, 0x00F6, "o"},
    {0x00F8, 0x00F8, "o"}, {0x00F9, 0x00FC, "u"},  {0x00FD, 0x00FD, "y"},
    {0x00FE, 0x00FE, "th"}, {0x00FF, 0x00FF, "y"},
    {0x0100, 0x0105, "a"}, {0x0106, 0x010D, "c"},  {0x010E, 0x0111, "d"},
    {0x0112, 0x011B, "e"}, {0x011C, 0x0123, "g"},  {0x0124, 0x0127, "h"},
    {0x0128, 0x0131, "i"}, {0x0132, 0x0133, "ij"}, {0x0134, 0x0135, "j"},
    {0x0136, 0x0138, "k"}, {0x0139, 0x0142, "l"},  {0x0143, 0x014B, "n"},
    {0x014C, 0x0151, "o"}, {0x0152, 0x0153, "oe"}, {0x0154, 0x0159, "r"},
    {0x015A, 0x0161, "s"}, {0x0162, 0x0167, "t"},  {0x0168, 0x0173, "u"},
    {0x0174, 0x0175, "w"}, {0x0176, 0x0178, "y"},  {0x0179, 0x017E, "z"},
    {0x017F, 0x017F, "s"}, {0x1E9E, 0x1E9E, "ss"},
}};

const char* fold_codepoint(char32_t cp) {
  if (cp == 0x00D7 || cp == 0x00F7) return nullptr;
  for (const auto& r : kFoldTable) {
    if (cp >= r.lo && cp <= r.hi) return r.ascii;
  }
  return nullptr;
}

bool is_separator_codepoint(char32_t cp) {
  // Latin-1 punctuation/symbols and the general punctuation block (curly
  // quotes, dashes, ellipsis). Unknown letters elsewhere are dropped in
  // place rather than splitting the run.
  if (cp >= 0x00A0 && cp <= 0x00BF) return true;
  if (cp == 0x00D7 || cp == 0x00F7) return true;
  if (cp >= 0x2000 && cp <= 0x206F) return true;
  return false;
}

// Decodes one UTF-8 codepoint starting at i; advances i past it. Malformed
// bytes decode as U+FFFD and consume a single byte.
char32_t decode_utf8(std::string_view s, std::size_t& i) {
  const auto byte = static_cast<unsigned char>(s[i]);
  std::size_t len = 0;
  char32_t cp = 0;
  if (byte < 0x80) {
    ++i;
    return byte;
  } else if ((byte >> 5) == 0x6) {
    len = 2;
    cp = byte & 0x1F;
  } else if ((byte >> 4) == 0xE) {
    len = 3;
    cp = byte & 0x0F;
  } else if ((byte >> 3) == 0x1E) {
    len = 4;
    cp = byte & 0x07;
  } else {
    ++i;
    return 0xFFFD;
  }
  if (i + len > s.size()) {
    ++i;
    return 0xFFFD;
  }
  for (std::size_t k = 1; k < len; ++k) {
    const auto cont = static_cast<unsigned char>(s[i + k]);
    if ((cont >> 6) != 0x2) {
      ++i;
      return 0xFFFD;
    }
    cp = (cp << 6) | (cont & 0x3F);
  }
  i += len;
  return cp;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Irregular plurals the suffix rules cannot reach.
const std::unordered_map<std::string, std::string>& lemma_exceptions() {
  static const std::unordered_map<std::string, std::string> table = {
      {"children", "child"}, {"women", "woman"}, {"men", "man"},
      {"feet", "foot"},      {"teeth", "tooth"}, {"mice", "mouse"},
      {"geese", "goose"},
  };
  return table;
}

// Drops one of a doubled trailing consonant, except l/s/z ("fall", "miss").
void undouble(std::string& s) {
  if (s.size() < 2) return;
  const char c = s.back();
  if (s[s.size() - 2] != c) return;
  if (is_vowel(c) || c == 'l' || c == 's' || c == 'z') return;
  s.pop_back();
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&]() {
    if (current.size() >= kMinTokenLength) tokens.push_back(current);
    current.clear();
  };

  std::size_t i = 0;
  while (i < text.size()) {
    const char32_t cp = decode_utf8(text, i);
    if (cp < 0x80) {
      const char c = static_cast<char>(cp);
      if (c >= 'a' && c <= 'z') {
        current.push_back(c);
      } else if (c >= 'A' && c <= 'Z') {
        current.push_back(static_cast<char>(c - 'A' + 'a'));
      } else {
        flush();
      }
      continue;
    }
    if (const char* folded = fold_codepoint(cp)) {
      current.append(folded);
    } else if (is_separator_codepoint(cp)) {
      flush();
    }
    // else: letter with no standard folding; dropped, run continues
  }
  flush();
  return tokens;
}

std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const StopwordSet& stops) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (!stops.contains(t)) out.push_back(t);
  }
  return out;
}

std::string lemmatize_token(const std::string& token) {
  const auto& exceptions = lemma_exceptions();
  if (auto it = exceptions.find(token); it != exceptions.end()) return it->second;

  // Ordered suffix rules, first match wins; a rule is skipped when the
  // result would fall below the minimum token length.
  auto accept = [](std::string candidate, const std::string& original) {
    return candidate.size() >= kMinTokenLength ? candidate : original;
  };

  if (ends_with(token, "ies")) {
    return accept(token.substr(0, token.size() - 3) + "y", token);
  }
  if (ends_with(token, "sses")) {
    return accept(token.substr(0, token.size() - 4) + "ss", token);
  }
  if (ends_with(token, "es") && token.size() - 2 >= 3) {
    return accept(token.substr(0, token.size() - 2) + "e", token);
  }
  if (ends_with(token, "s") && !ends_with(token, "ss") && token.size() >= 2) {
    const char before = token[token.size() - 2];
    if (!is_vowel(before) && before != 's') {
      return accept(token.substr(0, token.size() - 1), token);
    }
  }
  if (ends_with(token, "ing") && token.size() - 3 >= 3) {
    std::string stem = token.substr(0, token.size() - 3);
    undouble(stem);
    return accept(std::move(stem), token);
  }
  if (ends_with(token, "ed") && token.size() - 2 >= 3) {
    std::string stem = token.substr(0, token.size() - 2);
    undouble(stem);
    return accept(std::move(stem), token);
  }
  return token;
}

std::vector<std::string> lemmatize(const std::vector<std::string>& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(lemmatize_token(t));
  return out;
}

TokenizedDoc preprocess(const Document& doc, const StopwordSet& stops) {
  auto tokens = tokenize(doc.text);
  tokens = remove_stopwords(tokens, stops);
  tokens = lemmatize(tokens);
  tokens = remove_stopwords(tokens, stops);
  return TokenizedDoc{doc.id, std::move(tokens)};
}

std::vector<TokenizedDoc> preprocess_all(const std::vector<Document>& docs,
                                         const StopwordSet& stops) {
  std::vector<TokenizedDoc> out;
  out.reserve(docs.size());
  for (const auto& d : docs) out.push_back(preprocess(d, stops));
  return out;
}

bool StopwordSet::contains(std::string_view token) const {
  const std::string key(token);
  return standard.count(key) > 0 || domain.count(key) > 0;
}

const std::vector<std::string>& StopwordSet::default_domain() {
  // Frequent corpus-wide terms that add no class signal; lemma forms are
  // included so the post-lemmatization pass removes them too.
  static const std::vector<std::string> terms = {"digital", "development", "develop",
                                                 "project"};
  return terms;
}

StopwordSet StopwordSet::standard_only() {
  extern const std::vector<std::string>& english_stopwords();
  StopwordSet s;
  const auto& list = english_stopwords();
  s.standard.insert(list.begin(), list.end());
  return s;
}

StopwordSet StopwordSet::bundled_english() {
  StopwordSet s = standard_only();
  const auto& dom = default_domain();
  s.domain.insert(dom.begin(), dom.end());
  return s;
}

void StopwordSet::load_domain_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open stopword file: " + path);
  std::unordered_set<std::string> terms;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    // trim
    const auto begin = line.find_first_not_of(" \t");
    if (begin == std::string::npos) continue;
    const auto end = line.find_last_not_of(" \t");
    std::string term = line.substr(begin, end - begin + 1);
    if (term.empty() || term[0] == '#') continue;
    for (char c : term) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        throw ParseError("stopword file line " + std::to_string(line_no) +
                         ": entries must not contain whitespace");
      }
    }
    std::transform(term.begin(), term.end(), term.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    terms.insert(std::move(term));
  }
  domain = std::move(terms);
}

}  // namespace textml

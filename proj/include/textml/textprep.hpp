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

#ifndef TEXTML_TEXTPREP_HPP
#define TEXTML_TEXTPREP_HPP

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "textml/corpus.hpp"

namespace textml {

// Standard English list (fixed, bundled) plus a domain list loaded from file.
// All entries lowercase with no inner whitespace.
struct StopwordSet {
  std::unordered_set<std::string> standard;
  std::unordered_set<std::string> domain;

  bool contains(std::string_view token) const;

  // Bundled English stopwords plus the default domain terms.
  static StopwordSet bundled_english();
  // Same standard list, empty domain list.
  static StopwordSet standard_only();
  // Default domain terms shipped with the toolkit.
  static const std::vector<std::string>& default_domain();

  // One lowercase term per line, '#' comment lines and blank lines ignored.
  // Replaces the current domain list.
  void load_domain_file(const std::string& path);
};

struct TokenizedDoc {
  std::string doc_id;
  std::vector<std::string> tokens;  // lowercase ASCII letters, length >= 2
};

// Lowercases and splits on anything that is not a letter. Latin letters with
// a standard ASCII folding are folded; other non-ASCII letters are dropped
// without breaking the surrounding run. Tokens shorter than 2 are discarded.
std::vector<std::string> tokenize(std::string_view text);

// Order-preserving filter removing members of standard + domain.
std::vector<std::string> remove_stopwords(const std::vector<std::string>& tokens,
                                          const StopwordSet& stops);

// Exception table followed by ordered suffix rules; a rule applies only when
// the result keeps length >= 2. Idempotent on its own output.
std::string lemmatize_token(const std::string& token);
std::vector<std::string> lemmatize(const std::vector<std::string>& tokens);

// tokenize -> remove_stopwords -> lemmatize -> remove_stopwords. The second
// pass catches stopwords surfaced by lemmatization.
TokenizedDoc preprocess(const Document& doc, const StopwordSet& stops);

std::vector<TokenizedDoc> preprocess_all(const std::vector<Document>& docs,
                                         const StopwordSet& stops);

}  // namespace textml

#endif  // TEXTML_TEXTPREP_HPP

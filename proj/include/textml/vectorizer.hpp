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

#ifndef TEXTML_VECTORIZER_HPP
#define TEXTML_VECTORIZER_HPP

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "textml/textprep.hpp"
#include "textml/types.hpp"

namespace textml {

struct VocabOptions {
  int min_df = 2;
  std::optional<int> max_features;
};

// Term -> contiguous feature index over a fitted training corpus, with the
// document frequencies needed for idf. Indices follow lexicographic term
// order. Immutable after fit.
class Vocabulary {
 public:
  // weight(t, d) = tf(t, d) * (ln((1 + n_docs) / (1 + df(t))) + 1), rows L2-normalized.
  static constexpr const char* kFormulaVersion = "tfidf-smooth-l2-v1";

  Vocabulary() = default;
  Vocabulary(std::vector<std::string> terms, std::vector<int> df, int n_docs,
             VocabOptions opts);

  int size() const { return static_cast<int>(terms_.size()); }
  int n_docs() const { return n_docs_; }
  const VocabOptions& options() const { return opts_; }
  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<int>& df() const { return df_; }

  std::optional<int> index_of(std::string_view term) const;
  double idf(int index) const;

 private:
  std::vector<std::string> terms_;
  std::vector<int> df_;
  std::unordered_map<std::string, int> index_;
  int n_docs_ = 0;
  VocabOptions opts_;
};

// Retains terms with df >= min_df; with max_features set, keeps the top terms
// by df (lexicographic tie-break). Throws DataError when nothing survives.
Vocabulary fit_vocabulary(const std::vector<TokenizedDoc>& corpus,
                          const VocabOptions& opts = {});

// Out-of-vocabulary tokens are ignored; a document with none in vocabulary
// maps to the zero vector (norm left at 0).
SparseVector transform(const TokenizedDoc& doc, const Vocabulary& vocab);

FeatureMatrix transform_all(const std::vector<TokenizedDoc>& docs, const Vocabulary& vocab);

std::pair<Vocabulary, FeatureMatrix> fit_transform(const std::vector<TokenizedDoc>& corpus,
                                                   const VocabOptions& opts = {});

}  // namespace textml

#endif  // TEXTML_VECTORIZER_HPP

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

#include "textml/vectorizer.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace textml {

Vocabulary::Vocabulary(std::vector<std::string> terms, std::vector<int> df, int n_docs,
                       VocabOptions opts)
    : terms_(std::move(terms)), df_(std::move(df)), n_docs_(n_docs), opts_(opts) {
  if (terms_.size() != df_.size()) {
    throw std::invalid_argument("Vocabulary: terms/df size mismatch");
  }
  if (!std::is_sorted(terms_.begin(), terms_.end())) {
    throw std::invalid_argument("Vocabulary: terms must be lexicographically sorted");
  }
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    index_.emplace(terms_[i], static_cast<int>(i));
  }
}

std::optional<int> Vocabulary::index_of(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

double Vocabulary::idf(int index) const {
  const double df = df_[static_cast<std::size_t>(index)];
  return std::log((1.0 + n_docs_) / (1.0 + df)) + 1.0;
}

Vocabulary fit_vocabulary(const std::vector<TokenizedDoc>& corpus, const VocabOptions& opts) {
  if (corpus.empty()) throw std::invalid_argument("fit_vocabulary: corpus is empty");
  if (opts.min_df < 1) throw std::invalid_argument("fit_vocabulary: min_df must be >= 1");
  if (opts.max_features && *opts.max_features < 1) {
    throw std::invalid_argument("fit_vocabulary: max_features must be >= 1");
  }

  // std::map keeps terms sorted, which both the index assignment and the
  // max_features tie-break need.
  std::map<std::string, int> df;
  std::vector<const std::string*> doc_terms;
  for (const auto& doc : corpus) {
    doc_terms.clear();
    for (const auto& t : doc.tokens) doc_terms.push_back(&t);
    std::sort(doc_terms.begin(), doc_terms.end(),
              [](const std::string* a, const std::string* b) { return *a < *b; });
    const std::string* prev = nullptr;
    for (const std::string* t : doc_terms) {
      if (prev != nullptr && *prev == *t) continue;
      ++df[*t];
      prev = t;
    }
  }

  std::vector<std::pair<std::string, int>> retained;
  for (const auto& [term, count] : df) {
    if (count >= opts.min_df) retained.emplace_back(term, count);
  }
  if (opts.max_features && retained.size() > static_cast<std::size_t>(*opts.max_features)) {
    std::sort(retained.begin(), retained.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    retained.resize(static_cast<std::size_t>(*opts.max_features));
    std::sort(retained.begin(), retained.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }
  if (retained.empty()) {
    throw DataError("fit_vocabulary: no term meets min_df=" + std::to_string(opts.min_df));
  }

  std::vector<std::string> terms;
  std::vector<int> counts;
  terms.reserve(retained.size());
  counts.reserve(retained.size());
  for (auto& [term, count] : retained) {
    terms.push_back(std::move(term));
    counts.push_back(count);
  }
  return Vocabulary(std::move(terms), std::move(counts),
                    static_cast<int>(corpus.size()), opts);
}

SparseVector transform(const TokenizedDoc& doc, const Vocabulary& vocab) {
  std::map<int, double> tf;
  for (const auto& token : doc.tokens) {
    if (auto idx = vocab.index_of(token)) tf[*idx] += 1.0;
  }

  SparseVector v(vocab.size());
  v.reserve(static_cast<Eigen::Index>(tf.size()));
  double sq = 0.0;
  for (const auto& [idx, count] : tf) {
    const double w = count * vocab.idf(idx);
    v.insertBack(idx) = w;
    sq += w * w;
  }
  if (sq > 0.0) v /= std::sqrt(sq);
  return v;
}

FeatureMatrix transform_all(const std::vector<TokenizedDoc>& docs, const Vocabulary& vocab) {
  FeatureMatrix m(static_cast<Eigen::Index>(docs.size()), vocab.size());
  std::vector<Eigen::Triplet<Scalar>> triplets;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const SparseVector v = transform(docs[i], vocab);
    for (SparseVector::InnerIterator it(v); it; ++it) {
      triplets.emplace_back(static_cast<int>(i), static_cast<int>(it.index()), it.value());
    }
  }
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

std::pair<Vocabulary, FeatureMatrix> fit_transform(const std::vector<TokenizedDoc>& corpus,
                                                   const VocabOptions& opts) {
  Vocabulary vocab = fit_vocabulary(corpus, opts);
  FeatureMatrix matrix = transform_all(corpus, vocab);
  return {std::move(vocab), std::move(matrix)};
}

}  // namespace textml

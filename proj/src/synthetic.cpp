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

#include "textml/synthetic.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

namespace textml {

namespace {

// Letter-only tokens: they survive tokenization unchanged and are too short
// in the stem for any lemmatizer rule to fire.
std::string pool_word(const char* prefix, int a, int b) {
  std::string w = prefix;
  w.push_back(static_cast<char>('a' + a));
  w.push_back(static_cast<char>('a' + b));
  return w;
}

}  // namespace

SyntheticSpec SyntheticSpec::reference(std::uint64_t seed) {
  SyntheticSpec spec;
  spec.class_sizes = {26, 40, 13, 84, 149, 89, 59, 31, 50, 40, 20, 14};
  spec.overlap_classes = {8, 9};
  spec.seed = seed;
  return spec;
}

LabeledCorpus make_synthetic_corpus(const SyntheticSpec& spec) {
  const auto k = static_cast<int>(spec.class_sizes.size());
  if (k < 2) throw std::invalid_argument("make_synthetic_corpus: need at least 2 classes");
  if (k > 26) throw std::invalid_argument("make_synthetic_corpus: at most 26 classes");
  if (!spec.overlap_classes.empty() && spec.overlap_classes.size() != 2) {
    throw std::invalid_argument("make_synthetic_corpus: overlap_classes must hold 0 or 2 entries");
  }
  for (int c : spec.overlap_classes) {
    if (c < 0 || c >= k) {
      throw std::invalid_argument("make_synthetic_corpus: overlap class out of range");
    }
  }
  if (spec.doc_len_min < 1 || spec.doc_len_max < spec.doc_len_min) {
    throw std::invalid_argument("make_synthetic_corpus: bad document length range");
  }

  std::vector<std::vector<std::string>> keywords(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) {
    for (int j = 0; j < spec.keywords_per_class; ++j) {
      keywords[static_cast<std::size_t>(c)].push_back(pool_word("kw", c, j));
    }
  }
  std::vector<std::string> noise;
  for (int j = 0; j < spec.noise_vocab; ++j) noise.push_back(pool_word("nz", j / 26, j % 26));
  std::vector<std::string> pair_pool;
  for (int j = 0; j < spec.pair_vocab; ++j) pair_pool.push_back(pool_word("ov", j / 26, j % 26));

  auto is_overlap = [&](int c) {
    return std::find(spec.overlap_classes.begin(), spec.overlap_classes.end(), c) !=
           spec.overlap_classes.end();
  };

  LabeledCorpus corpus;
  int doc_index = 0;
  for (int c = 0; c < k; ++c) {
    std::string class_name = "area-";
    class_name.push_back(static_cast<char>('a' + c));
    corpus.class_names.push_back(class_name);

    const auto& own = keywords[static_cast<std::size_t>(c)];
    const auto& bleed = keywords[static_cast<std::size_t>((c + 1) % k)];
    for (int d = 0; d < spec.class_sizes[static_cast<std::size_t>(c)]; ++d, ++doc_index) {
      Rng rng(mix_seed(spec.seed, static_cast<std::uint64_t>(doc_index)));
      const int len = spec.doc_len_min +
                      static_cast<int>(rng.below(static_cast<std::uint64_t>(
                          spec.doc_len_max - spec.doc_len_min + 1)));
      // Overlap documents draw their shared-pool rate per document around the
      // configured mean, so a tail of documents is nearly pure pair
      // vocabulary and carries no class-exclusive evidence at all.
      double shared_rate = 0.0;
      if (is_overlap(c)) {
        shared_rate = spec.overlap_shared_fraction - 0.4 + 0.8 * rng.uniform01();
        shared_rate = std::min(1.0, std::max(0.0, shared_rate));
      }
      std::string text;
      for (int t = 0; t < len; ++t) {
        const double u = rng.uniform01();
        const std::vector<std::string>* pool = nullptr;
        if (is_overlap(c)) {
          pool = (u < shared_rate) ? &pair_pool : &own;
        } else if (u < spec.keyword_fraction) {
          pool = &own;
        } else if (u < spec.keyword_fraction + spec.bleed_fraction) {
          pool = &bleed;
        } else {
          pool = &noise;
        }
        if (!text.empty()) text.push_back(' ');
        text += (*pool)[rng.below(pool->size())];
      }

      char id[32];
      std::snprintf(id, sizeof(id), "synth-%05d", doc_index);
      corpus.documents.push_back(Document{id, std::move(text)});
      corpus.labels.push_back(class_name);
    }
  }
  return corpus;
}

void write_jsonl(const std::string& path, const LabeledCorpus& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write corpus: " + path);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    nlohmann::ordered_json j;
    j["id"] = corpus.documents[i].id;
    j["text"] = corpus.documents[i].text;
    j["label"] = corpus.labels[i];
    out << j.dump() << '\n';
  }
  if (!out) throw DataError("failed writing corpus: " + path);
}

}  // namespace textml

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

#ifndef TEXTML_SYNTHETIC_HPP
#define TEXTML_SYNTHETIC_HPP

#include <cstdint>
#include <vector>

#include "textml/corpus.hpp"

namespace textml {

// Synthetic labeled corpus used by tests and demos: every class owns an
// exclusive keyword pool, all classes share a noise pool, and a designated
// pair of "overlap" classes draws most of its tokens from a pool shared only
// by the pair, which makes the pair mutually confusable.
struct SyntheticSpec {
  std::vector<int> class_sizes;       // documents per class; class c is named area-<letter c>
  int keywords_per_class = 12;
  int noise_vocab = 150;
  int pair_vocab = 24;                // pool shared by the overlap pair
  int doc_len_min = 40;
  int doc_len_max = 80;
  double keyword_fraction = 0.52;     // normal classes: P(token from own pool)
  double bleed_fraction = 0.08;       // normal classes: P(token from next class's pool)
  std::vector<int> overlap_classes;   // exactly 0 or 2 entries
  // Mean share of overlap-class tokens drawn from the pair pool. A fixed
  // fraction of overlap documents is drawn entirely from the pair pool and
  // carries no exclusive evidence at all; the rest draw a per-document rate
  // that keeps the overall mean at overlap_shared_fraction.
  double overlap_shared_fraction = 0.60;
  double overlap_hard_fraction = 0.25;
  std::uint64_t seed = 0;

  // 12 classes with the size spread used throughout the docs and tests
  // (13 to 149 documents, total 615; a 0.70 stratified split yields
  // 430/185). The classes at indices 8 and 9 form the overlap pair.
  static SyntheticSpec reference(std::uint64_t seed);
};

LabeledCorpus make_synthetic_corpus(const SyntheticSpec& spec);

// Writes the corpus as JSONL (one {"id","text","label"} object per line).
void write_jsonl(const std::string& path, const LabeledCorpus& corpus);

}  // namespace textml

#endif  // TEXTML_SYNTHETIC_HPP

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

#ifndef TEXTML_CORPUS_HPP
#define TEXTML_CORPUS_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "textml/types.hpp"

namespace textml {

struct Document {
  std::string id;    // nonempty, unique within a corpus
  std::string text;  // may be empty; flagged at ingestion, never rejected
};

// Parallel (document, label) records plus the distinct label list in
// first-seen order. Immutable after construction; duplicate ids may exist
// until deduplicate() runs.
struct LabeledCorpus {
  std::vector<Document> documents;
  std::vector<std::string> labels;
  std::vector<std::string> class_names;

  std::size_t size() const { return documents.size(); }
};

// Reads one JSON object per line with string fields "id", "text" and either
// "label" (string) or "labels" (array of strings, expanded to one record per
// label before deduplication). An id repeated across distinct lines is an
// ingestion error; multi-label documents must use the "labels" form.
LabeledCorpus load_jsonl(const std::string& path,
                         std::vector<std::string>* warnings = nullptr);

// Drops every id that occurs under more than one label; collapses same-label
// repeats to the first copy. Idempotent.
LabeledCorpus deduplicate(const LabeledCorpus& corpus);

// class name <-> index bijection; indices follow lexicographic name order so
// encodings are stable regardless of file order.
class LabelMap {
 public:
  LabelMap() = default;
  explicit LabelMap(std::vector<std::string> names);

  int encode(const std::string& name) const;      // DataError on unknown name
  const std::string& decode(int index) const;     // invalid_argument if out of range
  int num_classes() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }

  bool operator==(const LabelMap& other) const { return names_ == other.names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
};

struct EncodedDataset {
  std::vector<std::string> doc_ids;
  std::vector<int> y;
  LabelMap label_map;

  std::size_t size() const { return doc_ids.size(); }
};

EncodedDataset encode(const LabeledCorpus& corpus);

struct SplitSpec {
  double train_fraction = 0.70;
  std::uint64_t seed = 0;
  bool stratified = true;
};

struct SplitResult {
  EncodedDataset train;
  EncodedDataset test;
  std::vector<std::string> warnings;
};

// Disjoint, exhaustive partition, deterministic per seed. Stratified mode
// gives each class round(n_c * fraction) training members, clamped so any
// class with >= 2 members keeps at least one test member; single-member
// classes go entirely to train with a warning.
SplitResult split(const EncodedDataset& dataset, const SplitSpec& spec);

// output[i] = 1 iff y[i] == target. target must be in [0, num_classes).
std::vector<int> binarize(const std::vector<int>& y, int target, int num_classes);

}  // namespace textml

#endif  // TEXTML_CORPUS_HPP

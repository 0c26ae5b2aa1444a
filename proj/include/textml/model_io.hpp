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

#ifndef TEXTML_MODEL_IO_HPP
#define TEXTML_MODEL_IO_HPP

#include <string>
#include <variant>
#include <vector>

#include "textml/corpus.hpp"
#include "textml/learners.hpp"
#include "textml/ovr.hpp"
#include "textml/vectorizer.hpp"

namespace textml {

inline constexpr const char* kModelFormatVersion = "textml-model-v1";
inline constexpr const char* kCombinedFormatVersion = "textml-ovr-v1";
inline constexpr const char* kDatasetMagic = "TMLDS1\n";

// A single multiclass model with everything prediction needs.
struct ModelContainer {
  TrainedModel model;
  Vocabulary vocabulary;
  std::vector<std::string> class_names;  // index order
  SplitSpec split;                       // split used at training time
};

// The combined One-vs-Rest predictor.
struct CombinedContainer {
  OvRCombinedModel model;
  Vocabulary vocabulary;
  std::vector<std::string> class_names;
  SplitSpec split;
};

using AnyContainer = std::variant<ModelContainer, CombinedContainer>;

// Versioned JSON documents. load(save(m)) reproduces predictions exactly on
// any input; an unknown format_version raises DataError naming both the found
// and the supported versions.
void save_model(const std::string& path, const ModelContainer& container);
void save_combined(const std::string& path, const CombinedContainer& container);
AnyContainer load_container(const std::string& path);

// Labeled-corpus container behind the `ingest` command (binary, versioned).
void save_dataset(const std::string& path, const LabeledCorpus& corpus, bool deduped);
LabeledCorpus load_dataset(const std::string& path);

// Reads either a dataset container or a JSONL corpus, sniffing the magic.
LabeledCorpus load_corpus_any(const std::string& path,
                              std::vector<std::string>* warnings = nullptr);

}  // namespace textml

#endif  // TEXTML_MODEL_IO_HPP

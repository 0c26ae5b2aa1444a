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

#include "textml/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace textml {

namespace {

using nlohmann::json;

void append_record(LabeledCorpus& corpus, std::unordered_set<std::string>& seen_classes,
                   std::string id, std::string text, std::string label) {
  if (seen_classes.insert(label).second) {
    corpus.class_names.push_back(label);
  }
  corpus.documents.push_back(Document{std::move(id), std::move(text)});
  corpus.labels.push_back(std::move(label));
}

}  // namespace

LabeledCorpus load_jsonl(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open corpus file: " + path);

  LabeledCorpus corpus;
  std::unordered_set<std::string> seen_classes;
  std::unordered_set<std::string> seen_ids;  // per input line, not per expanded record
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError("line " + std::to_string(line_no) + ": invalid JSON: " + e.what());
    }
    if (!obj.is_object()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected a JSON object");
    }
    if (!obj.contains("id") || !obj["id"].is_string()) {
      throw ParseError("line " + std::to_string(line_no) + ": missing string field \"id\"");
    }
    if (!obj.contains("text") || !obj["text"].is_string()) {
      throw ParseError("line " + std::to_string(line_no) + ": missing string field \"text\"");
    }
    const bool has_label = obj.contains("label");
    const bool has_labels = obj.contains("labels");
    if (has_label == has_labels) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected exactly one of \"label\" or \"labels\"");
    }

    std::string id = obj["id"].get<std::string>();
    if (id.empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": empty document id");
    }
    if (!seen_ids.insert(id).second) {
      throw DataError("duplicate document id across lines: \"" + id + "\" (line " +
                      std::to_string(line_no) + ")");
    }
    std::string text = obj["text"].get<std::string>();
    if (text.empty() && warnings != nullptr) {
      warnings->push_back("document \"" + id + "\" has empty text (line " +
                          std::to_string(line_no) + ")");
    }

    if (has_label) {
      if (!obj["label"].is_string()) {
        throw ParseError("line " + std::to_string(line_no) + ": field \"label\" must be a string");
      }
      append_record(corpus, seen_classes, std::move(id), std::move(text),
                    obj["label"].get<std::string>());
    } else {
      if (!obj["labels"].is_array()) {
        throw ParseError("line " + std::to_string(line_no) + ": field \"labels\" must be an array");
      }
      for (const auto& entry : obj["labels"]) {
        if (!entry.is_string()) {
          throw ParseError("line " + std::to_string(line_no) +
                           ": field \"labels\" must contain strings");
        }
        append_record(corpus, seen_classes, id, text, entry.get<std::string>());
      }
    }
  }
  return corpus;
}

LabeledCorpus deduplicate(const LabeledCorpus& corpus) {
  // Ids seen under more than one distinct label are removed entirely; the
  // remaining same-label repeats collapse to their first occurrence.
  std::unordered_map<std::string, std::set<std::string>> labels_by_id;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    labels_by_id[corpus.documents[i].id].insert(corpus.labels[i]);
  }

  LabeledCorpus out;
  std::unordered_set<std::string> seen_classes;
  std::unordered_set<std::string> kept_ids;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const std::string& id = corpus.documents[i].id;
    if (labels_by_id.at(id).size() > 1) continue;
    if (!kept_ids.insert(id).second) continue;
    append_record(out, seen_classes, id, corpus.documents[i].text, corpus.labels[i]);
  }
  return out;
}

LabelMap::LabelMap(std::vector<std::string> names) : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
  for (std::size_t i = 0; i < names_.size(); ++i) {
    index_.emplace(names_[i], static_cast<int>(i));
  }
}

int LabelMap::encode(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw DataError("unknown class name: \"" + name + "\"");
  return it->second;
}

const std::string& LabelMap::decode(int index) const {
  if (index < 0 || index >= num_classes()) {
    throw std::invalid_argument("class index out of range: " + std::to_string(index));
  }
  return names_[static_cast<std::size_t>(index)];
}

EncodedDataset encode(const LabeledCorpus& corpus) {
  EncodedDataset out;
  out.label_map = LabelMap(corpus.class_names);
  out.doc_ids.reserve(corpus.size());
  out.y.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    out.doc_ids.push_back(corpus.documents[i].id);
    out.y.push_back(out.label_map.encode(corpus.labels[i]));
  }
  return out;
}

namespace {

EncodedDataset take(const EncodedDataset& d, const std::vector<std::size_t>& idx) {
  EncodedDataset out;
  out.label_map = d.label_map;
  out.doc_ids.reserve(idx.size());
  out.y.reserve(idx.size());
  for (std::size_t i : idx) {
    out.doc_ids.push_back(d.doc_ids[i]);
    out.y.push_back(d.y[i]);
  }
  return out;
}

}  // namespace

SplitResult split(const EncodedDataset& dataset, const SplitSpec& spec) {
  if (dataset.size() == 0) throw std::invalid_argument("split: dataset is empty");
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw std::invalid_argument("split: train_fraction must lie in (0, 1)");
  }

  SplitResult result;
  std::vector<std::size_t> train_idx;
  std::vector<std::size_t> test_idx;

  auto split_group = [&](std::vector<std::size_t>& members, std::uint64_t seed,
                         bool warn_single) {
    const std::size_t n = members.size();
    if (n == 1) {
      if (warn_single) {
        result.warnings.push_back("class \"" +
                                  dataset.label_map.decode(dataset.y[members[0]]) +
                                  "\" has a single member; assigned to train");
      }
      train_idx.push_back(members[0]);
      return;
    }
    auto n_train = static_cast<std::size_t>(
        std::llround(static_cast<double>(n) * spec.train_fraction));
    if (n_train > n - 1) n_train = n - 1;  // every group with >= 2 members keeps a test member
    Rng rng(seed);
    rng.shuffle(members);
    std::sort(members.begin(), members.begin() + static_cast<std::ptrdiff_t>(n_train));
    std::sort(members.begin() + static_cast<std::ptrdiff_t>(n_train), members.end());
    train_idx.insert(train_idx.end(), members.begin(),
                     members.begin() + static_cast<std::ptrdiff_t>(n_train));
    test_idx.insert(test_idx.end(), members.begin() + static_cast<std::ptrdiff_t>(n_train),
                    members.end());
  };

  if (spec.stratified) {
    const int k = dataset.label_map.num_classes();
    std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      by_class[static_cast<std::size_t>(dataset.y[i])].push_back(i);
    }
    for (int c = 0; c < k; ++c) {
      auto& members = by_class[static_cast<std::size_t>(c)];
      if (members.empty()) continue;
      split_group(members, mix_seed(spec.seed, static_cast<std::uint64_t>(c)), true);
    }
  } else {
    std::vector<std::size_t> all(dataset.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    split_group(all, mix_seed(spec.seed, 0xFFFFull), false);
  }

  std::sort(train_idx.begin(), train_idx.end());
  std::sort(test_idx.begin(), test_idx.end());
  result.train = take(dataset, train_idx);
  result.test = take(dataset, test_idx);
  return result;
}

std::vector<int> binarize(const std::vector<int>& y, int target, int num_classes) {
  if (target < 0 || target >= num_classes) {
    throw std::invalid_argument("binarize: target class " + std::to_string(target) +
                                " out of range [0, " + std::to_string(num_classes) + ")");
  }
  std::vector<int> out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = (y[i] == target) ? 1 : 0;
  return out;
}

}  // namespace textml

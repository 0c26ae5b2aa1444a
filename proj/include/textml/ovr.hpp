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

#ifndef TEXTML_OVR_HPP
#define TEXTML_OVR_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "textml/learners.hpp"
#include "textml/metrics.hpp"
#include "textml/resampler.hpp"
#include "textml/types.hpp"

namespace textml {

// How per-class candidate algorithms are scored. CrossVal (default) keeps
// all selection inside the training split; Heldout scores on the supplied
// evaluation data instead, which reproduces selection on the test split when
// the caller passes it (leaky by construction; reported as such).
struct SelectionSpec {
  enum class Mode { CrossVal, Heldout };
  Mode mode = Mode::CrossVal;
  int folds = 5;
  const FeatureMatrix* heldout_X = nullptr;   // required in Heldout mode
  const std::vector<int>* heldout_y = nullptr;  // multiclass labels, binarized internally
};

struct AlgoResult {
  AlgorithmSpec spec;
  std::shared_ptr<const TrainedModel> model;  // refit on the full binarized train set
  double selection_f1 = 0.0;                  // mean positive-class F1 over folds (or heldout)
  ClassMetrics selection_metrics;             // mean P/R/F1 at selection time
};

struct PerClassResult {
  int class_index = 0;
  std::vector<AlgoResult> per_algorithm;  // roster order
  int winner = 0;                         // argmax selection F1, ties to roster order
};

// Binarizes y_train for the class, scores every roster algorithm (with
// oversampling applied inside each fold, never before folding), and refits
// each candidate on the full binarized, oversampled training set. Seeds for
// (class, algorithm, fold) tasks derive from master_seed so results do not
// depend on scheduling.
PerClassResult train_class_roster(int class_index, const std::vector<AlgorithmSpec>& roster,
                                  const FeatureMatrix& X_train, const std::vector<int>& y_train,
                                  int n_classes, const SelectionSpec& selection,
                                  const ResampleSpec& resample, std::uint64_t master_seed);

struct OvRClassEntry {
  int class_index = 0;
  std::string class_name;
  AlgorithmSpec algorithm;
  std::shared_ptr<const TrainedModel> model;  // binary: class 1 = "this class"
  double selection_f1 = 0.0;
};

// Per-class winners composed into one multi-label predictor.
struct OvRCombinedModel {
  double theta = 0.5;
  int n_features = 0;
  std::vector<OvRClassEntry> classes;  // exactly one entry per class, index order
};

// Assembles the winner of each PerClassResult. Requires one result per class
// index in [0, results.size()) and 0 < theta < 1.
OvRCombinedModel build_combined(const std::vector<PerClassResult>& results, double theta,
                                const std::vector<std::string>& class_names);

// Positive-class probability for every class; classes scoring >= theta,
// sorted by descending score (ties toward the lower class index).
std::vector<std::pair<int, double>> predict_multilabel(const OvRCombinedModel& model,
                                                       const SparseVector& x);

// Highest-scoring class regardless of theta; ties to the lowest class index.
std::pair<int, double> predict_single(const OvRCombinedModel& model, const SparseVector& x);

// All per-class positive scores (index c = class c).
DenseVector class_scores(const OvRCombinedModel& model, const SparseVector& x);

// Stratified k-fold assignment (fold id per row), dealt round-robin within
// each class after a seeded shuffle. Shared by selection and tests.
std::vector<int> stratified_folds(const std::vector<int>& y, int folds, std::uint64_t seed);

}  // namespace textml

#endif  // TEXTML_OVR_HPP

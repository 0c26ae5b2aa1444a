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

#ifndef TEXTML_HARNESS_HPP
#define TEXTML_HARNESS_HPP

#include <optional>
#include <string>
#include <vector>

#include "textml/corpus.hpp"
#include "textml/learners.hpp"
#include "textml/metrics.hpp"
#include "textml/model_io.hpp"
#include "textml/ovr.hpp"
#include "textml/resampler.hpp"
#include "textml/textprep.hpp"
#include "textml/vectorizer.hpp"

namespace textml {

struct ExperimentConfig {
  std::string corpus_path;                 // JSONL corpus or dataset container
  std::string stopword_file;               // empty: shipped default domain list
  SplitSpec split;                         // split.seed is derived from master_seed
  ResampleSpec resample;                   // resample.seed likewise
  VocabOptions vocab;
  Hyperparams hyperparams;                 // applied to every roster family
  std::vector<Family> roster;              // empty: all seven base families
  enum class Phase { One, Two, Both } phase = Phase::Both;
  SelectionSpec::Mode selection = SelectionSpec::Mode::CrossVal;
  int cv_folds = 5;
  std::uint64_t master_seed = 0;
  std::string output_dir;                  // used by run_compare
  double theta = 0.5;
  int profile_top = 25;
};

// Shared pipeline state: load -> deduplicate -> encode -> split ->
// preprocess -> fit vocabulary (train only) -> transform. Oversampling and
// model fitting happen per phase. The audit block records exactly which
// documents reached the leakage-sensitive stages.
struct Pipeline {
  LabeledCorpus corpus;           // after deduplication
  EncodedDataset train;
  EncodedDataset test;
  std::vector<TokenizedDoc> train_docs;
  std::vector<TokenizedDoc> test_docs;
  Vocabulary vocabulary;
  FeatureMatrix X_train;
  FeatureMatrix X_test;
  std::vector<std::string> warnings;

  struct Audit {
    std::vector<std::string> vocab_fit_doc_ids;      // documents seen by fit_vocabulary
    std::vector<std::string> oversample_doc_ids;     // documents eligible for oversampling
    std::vector<std::string> selection_doc_ids;      // documents eligible for model selection
  } audit;

  int num_classes() const { return train.label_map.num_classes(); }
};

Pipeline prepare_pipeline(const ExperimentConfig& config);
Pipeline prepare_pipeline(const ExperimentConfig& config, const LabeledCorpus& raw_corpus);

// The seven base algorithm specs in roster order with the given defaults.
std::vector<AlgorithmSpec> default_roster(const Hyperparams& hp);

struct PhaseOneRow {
  Family family = Family::logistic_regression;
  std::string name;
  double accuracy = 0.0;
  double precision = 0.0;  // weighted
  double recall = 0.0;     // weighted
  double f1 = 0.0;         // weighted
};

struct PhaseOneReport {
  std::vector<PhaseOneRow> rows;              // roster order; ensemble appended last
  ClassificationReport best_per_class;        // per-class report of the best base row
  std::string best_name;                      // base algorithm with the highest weighted F1
  double best_f1 = 0.0;
};

// Fits one multiclass model per roster algorithm on the oversampled training
// split and scores the untouched test split. When the roster has at least
// two entries, an ensemble of the two rows with the highest weighted F1 is
// appended (the higher row outranks the lower for its tie-break). The
// pipeline is mutable only for its audit trail.
PhaseOneReport run_phase_one(Pipeline& pipeline, const ExperimentConfig& config);

struct PhaseTwoCell {
  double accuracy = 0.0;   // binary accuracy on the test split
  double precision = 0.0;  // positive class
  double recall = 0.0;
  double f1 = 0.0;
  double selection_f1 = 0.0;
  bool winner = false;
};

struct PhaseTwoReport {
  std::vector<std::string> class_names;
  std::vector<std::string> algorithm_names;          // roster order, ensemble last
  std::vector<std::vector<PhaseTwoCell>> grid;       // [algorithm][class]
  std::vector<int> winner_per_class;                 // algorithm index
  ClassificationReport combined_report;              // combined model, single-label, test split
  double combined_weighted_f1 = 0.0;
};

struct PhaseTwoOutcome {
  PhaseTwoReport report;
  OvRCombinedModel combined;
};

// One-vs-Rest per class: candidates scored per config.selection (stratified
// k-fold CV on the training split by default, or on the test split for the
// paper-style leaky selection), every candidate refit on the full binarized
// oversampled training split, test metrics tabulated, winners composed into
// the combined model.
PhaseTwoOutcome run_phase_two(Pipeline& pipeline, const ExperimentConfig& config);

// Top-n vocabulary terms by summed TF-IDF weight over the class's rows,
// descending with lexicographic tie-break.
std::vector<std::pair<std::string, double>> term_profile(const FeatureMatrix& X,
                                                         const std::vector<int>& y,
                                                         const Vocabulary& vocab,
                                                         int class_index, int top_n);

struct CompareSummary {
  std::optional<PhaseOneReport> phase_one;
  std::optional<PhaseTwoReport> phase_two;
  std::vector<std::string> files_written;
};

// Runs the configured phases end to end and writes CSV (full precision) and
// Markdown (2-decimal) reports plus per-class term profiles into
// config.output_dir. Outputs are byte-identical for identical inputs.
CompareSummary run_compare(const ExperimentConfig& config);

// ---- report rendering (deterministic byte-for-byte) ----

std::string phase_one_to_csv(const PhaseOneReport& report);
std::string phase_one_to_markdown(const PhaseOneReport& report);
std::string phase_two_to_csv(const PhaseTwoReport& report);
std::string phase_two_to_markdown(const PhaseTwoReport& report);

}  // namespace textml

#endif  // TEXTML_HARNESS_HPP

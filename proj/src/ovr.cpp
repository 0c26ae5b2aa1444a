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

#include "textml/ovr.hpp"

#include <algorithm>
#include <map>

#include "textml/corpus.hpp"

namespace textml {

namespace {

// Seed stream tags keeping (class, algorithm, fold) fits independent.
constexpr std::uint64_t kFoldAssignStream = 0x0F01;
constexpr std::uint64_t kFitStream = 0x0F02;
constexpr std::uint64_t kRefitStream = 0x0F03;

FeatureMatrix take_rows(const FeatureMatrix& X, const std::vector<int>& rows) {
  FeatureMatrix out(static_cast<Eigen::Index>(rows.size()), X.cols());
  std::vector<Eigen::Triplet<Scalar>> triplets;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (FeatureMatrix::InnerIterator it(X, rows[i]); it; ++it) {
      triplets.emplace_back(static_cast<int>(i), static_cast<int>(it.col()), it.value());
    }
  }
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

// Positive-class metrics of a binary problem.
ClassMetrics positive_metrics(const std::vector<int>& y_true, const std::vector<int>& y_pred) {
  const ConfusionMatrix cm = confusion(y_true, y_pred, 2);
  return prf1(class_counts(cm, 1));
}

}  // namespace

std::vector<int> stratified_folds(const std::vector<int>& y, int folds, std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("stratified_folds: need at least 2 folds");
  std::map<int, std::vector<int>> by_class;
  for (std::size_t i = 0; i < y.size(); ++i) by_class[y[i]].push_back(static_cast<int>(i));
  std::vector<int> fold_of(y.size(), 0);
  for (auto& [c, rows] : by_class) {
    Rng rng(mix_seed(seed, static_cast<std::uint64_t>(c)));
    rng.shuffle(rows);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      fold_of[static_cast<std::size_t>(rows[i])] = static_cast<int>(i % static_cast<std::size_t>(folds));
    }
  }
  return fold_of;
}

PerClassResult train_class_roster(int class_index, const std::vector<AlgorithmSpec>& roster,
                                  const FeatureMatrix& X_train, const std::vector<int>& y_train,
                                  int n_classes, const SelectionSpec& selection,
                                  const ResampleSpec& resample, std::uint64_t master_seed) {
  if (roster.empty()) throw std::invalid_argument("train_class_roster: empty roster");
  if (class_index < 0 || class_index >= n_classes) {
    throw std::invalid_argument("train_class_roster: class index out of range");
  }
  const std::vector<int> y_bin = binarize(y_train, class_index, n_classes);
  if (std::find(y_bin.begin(), y_bin.end(), 1) == y_bin.end()) {
    throw std::invalid_argument("train_class_roster: class " + std::to_string(class_index) +
                                " absent from training labels");
  }
  if (selection.mode == SelectionSpec::Mode::Heldout &&
      (selection.heldout_X == nullptr || selection.heldout_y == nullptr)) {
    throw std::invalid_argument("train_class_roster: heldout selection without heldout data");
  }

  const auto cls = static_cast<std::uint64_t>(class_index);

  // Fold assignment is shared by all candidates so their scores compare on
  // identical partitions.
  std::vector<int> fold_of;
  if (selection.mode == SelectionSpec::Mode::CrossVal) {
    fold_of = stratified_folds(y_bin, selection.folds,
                               mix_seed(master_seed, kFoldAssignStream, cls));
  }

  PerClassResult result;
  result.class_index = class_index;

  for (std::size_t a = 0; a < roster.size(); ++a) {
    AlgoResult ar;
    ar.spec = roster[a];

    if (selection.mode == SelectionSpec::Mode::CrossVal) {
      double f1_sum = 0.0, p_sum = 0.0, r_sum = 0.0;
      for (int fold = 0; fold < selection.folds; ++fold) {
        std::vector<int> fit_rows;
        std::vector<int> val_rows;
        for (std::size_t i = 0; i < y_bin.size(); ++i) {
          (fold_of[i] == fold ? val_rows : fit_rows).push_back(static_cast<int>(i));
        }
        if (fit_rows.empty() || val_rows.empty()) continue;

        std::vector<int> y_fit;
        y_fit.reserve(fit_rows.size());
        for (int r : fit_rows) y_fit.push_back(y_bin[static_cast<std::size_t>(r)]);

        // Oversampling happens inside the fold: duplicates never straddle
        // the fit/validation boundary.
        ResampleSpec fold_resample = resample;
        fold_resample.seed = mix_seed(master_seed, kFitStream, cls,
                                      static_cast<std::uint64_t>(a * 1000 + fold));
        ResampleResult balanced = oversample(take_rows(X_train, fit_rows), y_fit, fold_resample);

        AlgorithmSpec fit_spec = roster[a];
        fit_spec.seed = mix_seed(master_seed, kFitStream + 1, cls,
                                 static_cast<std::uint64_t>(a * 1000 + fold));
        const TrainedModel m = train(balanced.X, balanced.y, fit_spec, 2);

        std::vector<int> y_val;
        std::vector<int> y_hat;
        y_val.reserve(val_rows.size());
        for (int r : val_rows) {
          y_val.push_back(y_bin[static_cast<std::size_t>(r)]);
          y_hat.push_back(predict(m, row_of(X_train, r)));
        }
        const ClassMetrics fm = positive_metrics(y_val, y_hat);
        f1_sum += fm.f1;
        p_sum += fm.precision;
        r_sum += fm.recall;
      }
      const double denom = static_cast<double>(selection.folds);
      ar.selection_f1 = f1_sum / denom;
      ar.selection_metrics.precision = p_sum / denom;
      ar.selection_metrics.recall = r_sum / denom;
      ar.selection_metrics.f1 = ar.selection_f1;
      ar.selection_metrics.support =
          static_cast<std::int64_t>(std::count(y_bin.begin(), y_bin.end(), 1));
    }

    // Every candidate is refit on the full binarized, oversampled training
    // set; the grid and the combined model both use these fits.
    ResampleSpec full_resample = resample;
    full_resample.seed = mix_seed(master_seed, kRefitStream, cls, static_cast<std::uint64_t>(a));
    ResampleResult balanced = oversample(X_train, y_bin, full_resample);
    AlgorithmSpec fit_spec = roster[a];
    fit_spec.seed = mix_seed(master_seed, kRefitStream + 1, cls, static_cast<std::uint64_t>(a));
    ar.model = std::make_shared<const TrainedModel>(train(balanced.X, balanced.y, fit_spec, 2));

    if (selection.mode == SelectionSpec::Mode::Heldout) {
      const std::vector<int> y_held = binarize(*selection.heldout_y, class_index, n_classes);
      std::vector<int> y_hat;
      y_hat.reserve(y_held.size());
      for (Eigen::Index i = 0; i < selection.heldout_X->rows(); ++i) {
        y_hat.push_back(predict(*ar.model, row_of(*selection.heldout_X, i)));
      }
      ar.selection_metrics = positive_metrics(y_held, y_hat);
      ar.selection_f1 = ar.selection_metrics.f1;
    }

    result.per_algorithm.push_back(std::move(ar));
  }

  result.winner = 0;
  for (std::size_t a = 1; a < result.per_algorithm.size(); ++a) {
    if (result.per_algorithm[a].selection_f1 >
        result.per_algorithm[static_cast<std::size_t>(result.winner)].selection_f1) {
      result.winner = static_cast<int>(a);
    }
  }
  return result;
}

OvRCombinedModel build_combined(const std::vector<PerClassResult>& results, double theta,
                                const std::vector<std::string>& class_names) {
  if (!(theta > 0.0 && theta < 1.0)) {
    throw std::invalid_argument("build_combined: theta must lie in (0, 1)");
  }
  if (results.empty()) throw std::invalid_argument("build_combined: no per-class results");
  const auto k = results.size();
  if (class_names.size() != k) {
    throw std::invalid_argument("build_combined: class name count mismatch");
  }

  std::vector<const PerClassResult*> by_class(k, nullptr);
  for (const auto& r : results) {
    if (r.class_index < 0 || static_cast<std::size_t>(r.class_index) >= k) {
      throw std::invalid_argument("build_combined: class index out of range");
    }
    if (by_class[static_cast<std::size_t>(r.class_index)] != nullptr) {
      throw std::invalid_argument("build_combined: duplicate result for class " +
                                  std::to_string(r.class_index));
    }
    by_class[static_cast<std::size_t>(r.class_index)] = &r;
  }

  OvRCombinedModel model;
  model.theta = theta;
  for (std::size_t c = 0; c < k; ++c) {
    const PerClassResult* r = by_class[c];
    if (r == nullptr) {
      throw std::invalid_argument("build_combined: missing result for class " +
                                  std::to_string(c));
    }
    const AlgoResult& win = r->per_algorithm[static_cast<std::size_t>(r->winner)];
    OvRClassEntry entry;
    entry.class_index = static_cast<int>(c);
    entry.class_name = class_names[c];
    entry.algorithm = win.spec;
    entry.model = win.model;
    entry.selection_f1 = win.selection_f1;
    if (model.classes.empty()) {
      model.n_features = entry.model->n_features;
    } else if (entry.model->n_features != model.n_features) {
      throw std::invalid_argument("build_combined: per-class models disagree on n_features");
    }
    model.classes.push_back(std::move(entry));
  }
  return model;
}

DenseVector class_scores(const OvRCombinedModel& model, const SparseVector& x) {
  if (x.size() != model.n_features) {
    throw std::invalid_argument("class_scores: input has " + std::to_string(x.size()) +
                                " features, model expects " + std::to_string(model.n_features));
  }
  DenseVector scores(static_cast<Eigen::Index>(model.classes.size()));
  for (std::size_t c = 0; c < model.classes.size(); ++c) {
    scores[static_cast<Eigen::Index>(c)] = predict_proba(*model.classes[c].model, x)[1];
  }
  return scores;
}

std::vector<std::pair<int, double>> predict_multilabel(const OvRCombinedModel& model,
                                                       const SparseVector& x) {
  const DenseVector scores = class_scores(model, x);
  std::vector<std::pair<int, double>> out;
  for (int c = 0; c < scores.size(); ++c) {
    if (scores[c] >= model.theta) out.emplace_back(c, scores[c]);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

std::pair<int, double> predict_single(const OvRCombinedModel& model, const SparseVector& x) {
  const DenseVector scores = class_scores(model, x);
  int best = 0;
  for (int c = 1; c < scores.size(); ++c) {
    if (scores[c] > scores[best]) best = c;
  }
  return {best, scores[best]};
}

}  // namespace textml

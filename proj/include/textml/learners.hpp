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

#ifndef TEXTML_LEARNERS_HPP
#define TEXTML_LEARNERS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "textml/types.hpp"

namespace textml {

enum class Family {
  decision_tree,
  naive_bayes,
  knn,
  logistic_regression,
  adaboost,
  sgd,
  svm,
  ensemble,
};

// Fixed roster order; also the tie-break order for model selection.
const std::vector<Family>& base_families();
std::string family_name(Family f);
std::optional<Family> family_from_name(std::string_view name);  // long or CLI short name
std::string family_cli_name(Family f);

struct TreeParams {
  int max_depth = 32;
  int min_samples_split = 2;
};

struct NaiveBayesParams {
  double alpha = 1.0;  // Laplace smoothing
};

struct KnnParams {
  int k = 13;
};

struct LogisticParams {
  double eta = 0.5;
  double lambda = 1e-4;
  int max_iters = 500;
  double tol = 1e-4;  // gradient infinity-norm
};

struct AdaBoostParams {
  int rounds = 50;
};

struct SgdParams {
  double eta0 = 0.1;
  double lambda = 1e-4;
  int epochs = 20;
};

struct SvmParams {
  double lambda = 1e-3;
  int iters = 1000;
};

struct EnsembleParams {
  Family base_a = Family::logistic_regression;
  Family base_b = Family::sgd;
  int rank = 0;  // 0: base_a outranks base_b, 1: the reverse
};

struct Hyperparams {
  TreeParams tree;
  NaiveBayesParams nb;
  KnnParams knn;
  LogisticParams logistic;
  AdaBoostParams ada;
  SgdParams sgd;
  SvmParams svm;
  EnsembleParams ensemble;
};

struct AlgorithmSpec {
  Family family = Family::logistic_regression;
  Hyperparams params;
  std::uint64_t seed = 0;

  void validate() const;  // invalid_argument on a bad value for the active family
};

// ---- fitted parameter families ----

struct TreeNode {
  int feature = -1;  // -1: leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  DenseVector counts;  // leaf class counts
};

struct TreeModel {
  std::vector<TreeNode> nodes;  // node 0 is the root
};

struct NaiveBayesModel {
  DenseVector log_prior;      // K (absent classes carry -inf)
  DenseMatrix log_likelihood; // K x V
};

struct KnnModel {
  int k = 1;
  FeatureMatrix rows;
  std::vector<int> labels;
};

// Shared by logistic regression, SGD and SVM; the family tag selects the
// probability rule.
struct LinearModel {
  DenseMatrix weights;  // K x V (binary logistic: 1 x V)
  DenseVector bias;
  bool binary_sigmoid = false;
};

struct Stump {
  int feature = 0;
  double threshold = 0.0;
  int left_class = 0;   // predicted when x[feature] < threshold
  int right_class = 0;
  double alpha = 0.0;
};

struct AdaBoostModel {
  std::vector<Stump> stumps;
  double alpha_sum = 0.0;
};

// Degenerate fit: training labels held a single distinct class.
struct ConstantModel {
  int class_index = 0;
};

struct TrainedModel;

struct EnsembleModel {
  std::shared_ptr<const TrainedModel> base_a;
  std::shared_ptr<const TrainedModel> base_b;
  int rank = 0;  // index of the higher-ranked base (0 = a, 1 = b)
};

struct TrainedModel {
  Family family = Family::logistic_regression;
  int n_features = 0;
  int n_classes = 0;
  AlgorithmSpec spec;
  std::vector<std::string> warnings;
  std::variant<TreeModel, NaiveBayesModel, KnnModel, LinearModel, AdaBoostModel,
               EnsembleModel, ConstantModel>
      params;
};

// ---- training ----
//
// Every trainer accepts the class count explicitly; pass 0 to infer
// max(y) + 1. A training set whose labels hold a single distinct class yields
// a constant model predicting that class with probability 1.

TrainedModel train_decision_tree(const FeatureMatrix& X, const std::vector<int>& y,
                                 const AlgorithmSpec& spec, int n_classes = 0);
TrainedModel train_naive_bayes(const FeatureMatrix& X, const std::vector<int>& y,
                               const AlgorithmSpec& spec, int n_classes = 0);
TrainedModel train_knn(const FeatureMatrix& X, const std::vector<int>& y,
                       const AlgorithmSpec& spec, int n_classes = 0);
TrainedModel train_logistic(const FeatureMatrix& X, const std::vector<int>& y,
                            const AlgorithmSpec& spec, int n_classes = 0);
TrainedModel train_adaboost(const FeatureMatrix& X, const std::vector<int>& y,
                            const AlgorithmSpec& spec, int n_classes = 0);
TrainedModel train_sgd(const FeatureMatrix& X, const std::vector<int>& y,
                       const AlgorithmSpec& spec, int n_classes = 0);
TrainedModel train_svm(const FeatureMatrix& X, const std::vector<int>& y,
                       const AlgorithmSpec& spec, int n_classes = 0);

// Fits both bases on (X, y). rank picks whose prediction stands when the two
// voters disagree.
TrainedModel train_ensemble(const FeatureMatrix& X, const std::vector<int>& y,
                            const AlgorithmSpec& spec, const AlgorithmSpec& base_a,
                            const AlgorithmSpec& base_b, int rank, int n_classes = 0);

// Composes two already-fitted bases without refitting.
TrainedModel make_ensemble(TrainedModel base_a, TrainedModel base_b, int rank,
                           const AlgorithmSpec& spec);

// Dispatch on spec.family (ensemble uses spec.params.ensemble for its bases).
TrainedModel train(const FeatureMatrix& X, const std::vector<int>& y,
                   const AlgorithmSpec& spec, int n_classes = 0);

// ---- prediction ----

// Entries in [0, 1], summing to 1 (1e-9). Throws on dimension mismatch.
DenseVector predict_proba(const TrainedModel& model, const SparseVector& x);

// argmax of predict_proba with lowest-index tie-break; the ensemble family
// instead applies its majority vote with the higher-ranked base breaking ties.
int predict(const TrainedModel& model, const SparseVector& x);

std::vector<int> predict_all(const TrainedModel& model, const FeatureMatrix& X);

// ---- exposed for the finite-difference oracle in tests ----

double logistic_loss(const FeatureMatrix& X, const std::vector<int>& y, const DenseMatrix& W,
                     const DenseVector& b, double lambda, bool binary);
void logistic_gradient(const FeatureMatrix& X, const std::vector<int>& y, const DenseMatrix& W,
                       const DenseVector& b, double lambda, bool binary, DenseMatrix& grad_W,
                       DenseVector& grad_b);

}  // namespace textml

#endif  // TEXTML_LEARNERS_HPP

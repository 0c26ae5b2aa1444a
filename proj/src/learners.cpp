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

#include "textml/learners.hpp"

#include <cmath>

#include "learners_internal.hpp"

namespace textml {

const std::vector<Family>& base_families() {
  static const std::vector<Family> families = {
      Family::decision_tree, Family::naive_bayes,  Family::knn, Family::logistic_regression,
      Family::adaboost,      Family::sgd,          Family::svm,
  };
  return families;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::decision_tree: return "decision_tree";
    case Family::naive_bayes: return "naive_bayes";
    case Family::knn: return "knn";
    case Family::logistic_regression: return "logistic_regression";
    case Family::adaboost: return "adaboost";
    case Family::sgd: return "sgd";
    case Family::svm: return "svm";
    case Family::ensemble: return "ensemble";
  }
  throw std::invalid_argument("family_name: unknown family");
}

std::string family_cli_name(Family f) {
  switch (f) {
    case Family::decision_tree: return "tree";
    case Family::naive_bayes: return "nb";
    case Family::knn: return "knn";
    case Family::logistic_regression: return "logreg";
    case Family::adaboost: return "ada";
    case Family::sgd: return "sgd";
    case Family::svm: return "svm";
    case Family::ensemble: return "ensemble";
  }
  throw std::invalid_argument("family_cli_name: unknown family");
}

std::optional<Family> family_from_name(std::string_view name) {
  for (Family f : base_families()) {
    if (name == family_name(f) || name == family_cli_name(f)) return f;
  }
  if (name == "ensemble") return Family::ensemble;
  return std::nullopt;
}

void AlgorithmSpec::validate() const {
  switch (family) {
    case Family::decision_tree:
      if (params.tree.max_depth < 1) throw std::invalid_argument("tree: max_depth must be >= 1");
      if (params.tree.min_samples_split < 2) {
        throw std::invalid_argument("tree: min_samples_split must be >= 2");
      }
      break;
    case Family::naive_bayes:
      if (!(params.nb.alpha > 0.0)) throw std::invalid_argument("nb: alpha must be > 0");
      break;
    case Family::knn:
      if (params.knn.k < 1) throw std::invalid_argument("knn: k must be >= 1");
      break;
    case Family::logistic_regression:
      if (!(params.logistic.eta > 0.0)) throw std::invalid_argument("logreg: eta must be > 0");
      if (params.logistic.lambda < 0.0) {
        throw std::invalid_argument("logreg: lambda must be >= 0");
      }
      if (params.logistic.max_iters < 0) {
        throw std::invalid_argument("logreg: max_iters must be >= 0");
      }
      if (!(params.logistic.tol > 0.0)) throw std::invalid_argument("logreg: tol must be > 0");
      break;
    case Family::adaboost:
      if (params.ada.rounds < 1) throw std::invalid_argument("ada: rounds must be >= 1");
      break;
    case Family::sgd:
      if (!(params.sgd.eta0 > 0.0)) throw std::invalid_argument("sgd: eta0 must be > 0");
      if (params.sgd.lambda < 0.0) throw std::invalid_argument("sgd: lambda must be >= 0");
      if (params.sgd.epochs < 1) throw std::invalid_argument("sgd: epochs must be >= 1");
      break;
    case Family::svm:
      if (!(params.svm.lambda > 0.0)) throw std::invalid_argument("svm: lambda must be > 0");
      if (params.svm.iters < 1) throw std::invalid_argument("svm: iters must be >= 1");
      break;
    case Family::ensemble:
      if (params.ensemble.base_a == Family::ensemble ||
          params.ensemble.base_b == Family::ensemble) {
        throw std::invalid_argument("ensemble: bases must be non-ensemble families");
      }
      if (params.ensemble.rank != 0 && params.ensemble.rank != 1) {
        throw std::invalid_argument("ensemble: rank must be 0 or 1");
      }
      break;
  }
}

namespace detail {

int check_training_input(const FeatureMatrix& X, const std::vector<int>& y, int n_classes) {
  if (y.empty()) throw std::invalid_argument("train: empty training set");
  if (static_cast<std::size_t>(X.rows()) != y.size()) {
    throw std::invalid_argument("train: X rows and y length differ");
  }
  int max_label = 0;
  for (int label : y) {
    if (label < 0) throw std::invalid_argument("train: negative class label");
    max_label = std::max(max_label, label);
  }
  const int k = n_classes == 0 ? max_label + 1 : n_classes;
  if (max_label >= k) {
    throw std::invalid_argument("train: label " + std::to_string(max_label) +
                                " out of range for n_classes=" + std::to_string(k));
  }
  return k;
}

std::optional<int> single_class(const std::vector<int>& y) {
  for (int label : y) {
    if (label != y.front()) return std::nullopt;
  }
  return y.front();
}

TrainedModel constant_model(Family family, const AlgorithmSpec& spec, int n_features,
                            int n_classes, int class_index) {
  TrainedModel m;
  m.family = family;
  m.n_features = n_features;
  m.n_classes = n_classes;
  m.spec = spec;
  m.params = ConstantModel{class_index};
  return m;
}

int majority_class(const std::vector<int>& y, int n_classes) {
  std::vector<std::size_t> counts(static_cast<std::size_t>(n_classes), 0);
  for (int label : y) ++counts[static_cast<std::size_t>(label)];
  int best = 0;
  for (int c = 1; c < n_classes; ++c) {
    if (counts[static_cast<std::size_t>(c)] > counts[static_cast<std::size_t>(best)]) best = c;
  }
  return best;
}

void check_predict_input(const TrainedModel& model, const SparseVector& x) {
  if (x.size() != model.n_features) {
    throw std::invalid_argument("predict: input has " + std::to_string(x.size()) +
                                " features, model expects " +
                                std::to_string(model.n_features));
  }
}

}  // namespace detail

// Single-family probability rules live next to their trainers; these two
// files only hold dispatch plus the ensemble.

namespace detail {
DenseVector tree_proba(const TrainedModel&, const SparseVector&);
DenseVector naive_bayes_proba(const TrainedModel&, const SparseVector&);
DenseVector knn_proba(const TrainedModel&, const SparseVector&);
DenseVector linear_proba(const TrainedModel&, const SparseVector&);
DenseVector adaboost_proba(const TrainedModel&, const SparseVector&);
}  // namespace detail

TrainedModel make_ensemble(TrainedModel base_a, TrainedModel base_b, int rank,
                           const AlgorithmSpec& spec) {
  if (base_a.family == Family::ensemble || base_b.family == Family::ensemble) {
    throw std::invalid_argument("make_ensemble: bases must be non-ensemble families");
  }
  if (rank != 0 && rank != 1) throw std::invalid_argument("make_ensemble: rank must be 0 or 1");
  if (base_a.n_features != base_b.n_features || base_a.n_classes != base_b.n_classes) {
    throw std::invalid_argument("make_ensemble: base model shapes differ");
  }
  TrainedModel m;
  m.family = Family::ensemble;
  m.n_features = base_a.n_features;
  m.n_classes = base_a.n_classes;
  m.spec = spec;
  m.spec.family = Family::ensemble;
  m.warnings.insert(m.warnings.end(), base_a.warnings.begin(), base_a.warnings.end());
  m.warnings.insert(m.warnings.end(), base_b.warnings.begin(), base_b.warnings.end());
  EnsembleModel e;
  e.base_a = std::make_shared<const TrainedModel>(std::move(base_a));
  e.base_b = std::make_shared<const TrainedModel>(std::move(base_b));
  e.rank = rank;
  m.params = std::move(e);
  return m;
}

TrainedModel train_ensemble(const FeatureMatrix& X, const std::vector<int>& y,
                            const AlgorithmSpec& spec, const AlgorithmSpec& base_a,
                            const AlgorithmSpec& base_b, int rank, int n_classes) {
  if (base_a.family == Family::ensemble || base_b.family == Family::ensemble) {
    throw std::invalid_argument("train_ensemble: bases must be non-ensemble families");
  }
  const int k = detail::check_training_input(X, y, n_classes);
  TrainedModel a = train(X, y, base_a, k);
  TrainedModel b = train(X, y, base_b, k);
  AlgorithmSpec s = spec;
  s.params.ensemble.base_a = base_a.family;
  s.params.ensemble.base_b = base_b.family;
  s.params.ensemble.rank = rank;
  return make_ensemble(std::move(a), std::move(b), rank, s);
}

TrainedModel train(const FeatureMatrix& X, const std::vector<int>& y, const AlgorithmSpec& spec,
                   int n_classes) {
  spec.validate();
  switch (spec.family) {
    case Family::decision_tree: return train_decision_tree(X, y, spec, n_classes);
    case Family::naive_bayes: return train_naive_bayes(X, y, spec, n_classes);
    case Family::knn: return train_knn(X, y, spec, n_classes);
    case Family::logistic_regression: return train_logistic(X, y, spec, n_classes);
    case Family::adaboost: return train_adaboost(X, y, spec, n_classes);
    case Family::sgd: return train_sgd(X, y, spec, n_classes);
    case Family::svm: return train_svm(X, y, spec, n_classes);
    case Family::ensemble: {
      AlgorithmSpec a = spec;
      a.family = spec.params.ensemble.base_a;
      AlgorithmSpec b = spec;
      b.family = spec.params.ensemble.base_b;
      return train_ensemble(X, y, spec, a, b, spec.params.ensemble.rank, n_classes);
    }
  }
  throw std::invalid_argument("train: unknown family");
}

DenseVector predict_proba(const TrainedModel& model, const SparseVector& x) {
  detail::check_predict_input(model, x);
  if (const auto* c = std::get_if<ConstantModel>(&model.params)) {
    DenseVector p = DenseVector::Zero(model.n_classes);
    p[c->class_index] = 1.0;
    return p;
  }
  if (const auto* e = std::get_if<EnsembleModel>(&model.params)) {
    return 0.5 * (predict_proba(*e->base_a, x) + predict_proba(*e->base_b, x));
  }
  switch (model.family) {
    case Family::decision_tree: return detail::tree_proba(model, x);
    case Family::naive_bayes: return detail::naive_bayes_proba(model, x);
    case Family::knn: return detail::knn_proba(model, x);
    case Family::logistic_regression:
    case Family::sgd:
    case Family::svm: return detail::linear_proba(model, x);
    case Family::adaboost: return detail::adaboost_proba(model, x);
    case Family::ensemble: break;  // handled above
  }
  throw std::invalid_argument("predict_proba: unknown family");
}

int predict(const TrainedModel& model, const SparseVector& x) {
  if (const auto* e = std::get_if<EnsembleModel>(&model.params)) {
    // Two voters: unanimity wins, otherwise the higher-ranked base decides.
    const int a = predict(*e->base_a, x);
    const int b = predict(*e->base_b, x);
    if (a == b) return a;
    return e->rank == 0 ? a : b;
  }
  return detail::argmax_lowest(predict_proba(model, x));
}

std::vector<int> predict_all(const TrainedModel& model, const FeatureMatrix& X) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(X.rows()));
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    out.push_back(predict(model, row_of(X, i)));
  }
  return out;
}

}  // namespace textml
